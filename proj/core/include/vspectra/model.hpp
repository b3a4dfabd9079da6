#ifndef VSPECTRA_MODEL_HPP
#define VSPECTRA_MODEL_HPP

#include <string>
#include <vector>

namespace vspectra {

enum class PressureKind { PowerLaw, Affine, UserTable };

/// Barotropic pressure closure P(rho). The model only needs P(rho) > 0
/// smooth with P'(rho) > 0 on the evaluated density range; the concrete
/// law is a modelling choice and is recorded in all output metadata.
class PressureLaw {
public:
  // P(rho) = c * rho^g, g >= 1
  static PressureLaw power(double c, double g);
  // P(rho) = p0 + c * rho
  static PressureLaw affine(double c, double p0);
  // tabulated (rho, P) samples, strictly increasing rho; evaluated by
  // monotone cubic (Fritsch-Carlson) interpolation, derivative from the
  // interpolant
  static PressureLaw table(std::vector<double> rho, std::vector<double> p);

  double value(double rho) const;
  double derivative(double rho) const;

  // samples P' on [lo, hi]; false if any sample is <= 0
  bool monotone_on(double lo, double hi, int samples = 257) const;

  PressureKind kind() const { return kind_; }
  double coefficient() const { return c_; }
  double exponent() const { return g_; }

  // short human/machine-readable description, e.g. "power:1,1.4"
  std::string describe() const;

private:
  PressureLaw() = default;
  PressureKind kind_ = PressureKind::PowerLaw;
  double c_ = 1.0;
  double g_ = 1.0;
  // user table with precomputed pchip slopes
  std::vector<double> tab_rho_, tab_p_, tab_m_;
};

struct ModelParams {
  double alpha;    // drag coefficient, 1/time
  double beta;     // chemotactic response strength
  double mu;       // chemoattractant diffusion, length^2/time
  double nu;       // chemoattractant degradation rate, 1/time
  double gamma;    // chemoattractant release rate, 1/time
  double rho_bar;  // equilibrium cell density
  PressureLaw pressure = PressureLaw::power(1.0, 1.0);

  // throws std::invalid_argument unless all parameters are strictly positive
  void validate() const;
};

/// Coefficients of the transformed linear system: a = sqrt(P'(rho_bar)),
/// b = rho_bar*beta/sqrt(P'(rho_bar)). The sign of a*nu - b*gamma decides
/// the stability dichotomy (same sign as nu*P'(rho_bar)/(gamma*rho_bar) - beta).
struct DerivedCoeffs {
  double a;
  double b;
  double discriminant;  // a*nu - b*gamma
};

// throws std::domain_error if P'(rho_bar) <= 0
DerivedCoeffs derive_coeffs(const ModelParams& params);

enum class Stability { Stable, Unstable, Borderline };

// tol_border = tol_rel * a * nu (scale-free); default tol_rel = 1e-12
Stability classify_stability(const DerivedCoeffs& coeffs, double nu,
                             double tol_rel = 1e-12);
Stability classify_stability(const ModelParams& params, double tol_rel = 1e-12);

const char* to_string(Stability s);

}  // namespace vspectra

#endif
