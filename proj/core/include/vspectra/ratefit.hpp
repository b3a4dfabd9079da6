#ifndef VSPECTRA_RATEFIT_HPP
#define VSPECTRA_RATEFIT_HPP

#include <array>
#include <span>
#include <vector>

namespace vspectra {

/// Fitted decay envelope. Power model: value ~ amplitude*(1+t)^exponent
/// (exponent negative for decay). Exponential model: value ~
/// amplitude*e^{-rate t} with rate positive for decay.
struct RateFit {
  enum class Model { Power, Exponential };
  Model model = Model::Power;
  double exponent = 0.0;   // power: slope of log v vs log(1+t)
  double rate = 0.0;       // exponential: decay rate c in e^{-ct}
  double amplitude = 0.0;
  double r_squared = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double residual_max = 0.0;  // max |log v - log fit| on the window
};

struct FitWindow {
  double t_lo;
  double t_hi;
};

// least squares of log(value) against log(1+t); values must be > 0 on the
// window and the window must contain >= 10 points
RateFit fit_power(std::span<const double> t, std::span<const double> value,
                  FitWindow window);

// least squares of log(value) against t
RateFit fit_exponential(std::span<const double> t, std::span<const double> value,
                        FitWindow window);

/// Time-weighted diagnostic functional: running sup over tau <= t of
///   sum_{k<=3} (1+tau)^{3/4+k/2} ||nabla^k (rho,phi)||
/// + sum_{k<=2} (1+tau)^{5/4+k/2} ||nabla^k v||
/// + (1+tau)^{9/4} ||nabla^3 v||.
/// Input series share the time grid; rho_phi[k] is the joint norm of the
/// pair at derivative order k.
std::vector<double> weighted_sup_series(std::span<const double> t,
                                        const std::array<std::vector<double>, 4>& rho_phi,
                                        const std::array<std::vector<double>, 4>& v);

double weighted_sup(std::span<const double> t,
                    const std::array<std::vector<double>, 4>& rho_phi,
                    const std::array<std::vector<double>, 4>& v);

}  // namespace vspectra

#endif
