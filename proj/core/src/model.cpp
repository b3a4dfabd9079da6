#include "vspectra/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vspectra {

PressureLaw PressureLaw::power(double c, double g) {
  if (c <= 0.0) throw std::invalid_argument("pressure: coefficient must be > 0");
  if (g < 1.0) throw std::invalid_argument("pressure: exponent must be >= 1");
  PressureLaw p;
  p.kind_ = PressureKind::PowerLaw;
  p.c_ = c;
  p.g_ = g;
  return p;
}

PressureLaw PressureLaw::affine(double c, double p0) {
  if (c <= 0.0) throw std::invalid_argument("pressure: slope must be > 0");
  PressureLaw p;
  p.kind_ = PressureKind::Affine;
  p.c_ = c;
  p.g_ = p0;
  return p;
}

PressureLaw PressureLaw::table(std::vector<double> rho, std::vector<double> pv) {
  if (rho.size() != pv.size() || rho.size() < 2)
    throw std::invalid_argument("pressure table: need >= 2 matching samples");
  for (std::size_t i = 1; i < rho.size(); ++i) {
    if (rho[i] <= rho[i - 1])
      throw std::invalid_argument("pressure table: rho must be strictly increasing");
  }
  PressureLaw p;
  p.kind_ = PressureKind::UserTable;
  const std::size_t n = rho.size();

  // Fritsch-Carlson monotone cubic slopes
  std::vector<double> h(n - 1), d(n - 1), m(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = rho[i + 1] - rho[i];
    d[i] = (pv[i + 1] - pv[i]) / h[i];
  }
  m[0] = d[0];
  m[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i)
    m[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0.0) {
      m[i] = m[i + 1] = 0.0;
      continue;
    }
    const double a = m[i] / d[i], b = m[i + 1] / d[i];
    const double s = a * a + b * b;
    if (s > 9.0) {
      const double t = 3.0 / std::sqrt(s);
      m[i] = t * a * d[i];
      m[i + 1] = t * b * d[i];
    }
  }
  p.tab_rho_ = std::move(rho);
  p.tab_p_ = std::move(pv);
  p.tab_m_ = std::move(m);
  return p;
}

namespace {

std::size_t bracket(const std::vector<double>& xs, double x) {
  if (x <= xs.front()) return 0;
  if (x >= xs[xs.size() - 2]) return xs.size() - 2;
  std::size_t lo = 0, hi = xs.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (xs[mid] <= x ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

double PressureLaw::value(double rho) const {
  switch (kind_) {
    case PressureKind::PowerLaw:
      return c_ * std::pow(rho, g_);
    case PressureKind::Affine:
      return g_ + c_ * rho;
    case PressureKind::UserTable: {
      const std::size_t i = bracket(tab_rho_, rho);
      const double h = tab_rho_[i + 1] - tab_rho_[i];
      const double t = (rho - tab_rho_[i]) / h;
      const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
      const double h10 = t * (1 - t) * (1 - t);
      const double h01 = t * t * (3 - 2 * t);
      const double h11 = t * t * (t - 1);
      return h00 * tab_p_[i] + h * h10 * tab_m_[i] + h01 * tab_p_[i + 1] +
             h * h11 * tab_m_[i + 1];
    }
  }
  return 0.0;
}

double PressureLaw::derivative(double rho) const {
  switch (kind_) {
    case PressureKind::PowerLaw:
      return c_ * g_ * std::pow(rho, g_ - 1.0);
    case PressureKind::Affine:
      return c_;
    case PressureKind::UserTable: {
      const std::size_t i = bracket(tab_rho_, rho);
      const double h = tab_rho_[i + 1] - tab_rho_[i];
      const double t = (rho - tab_rho_[i]) / h;
      const double dh00 = 6 * t * (t - 1);
      const double dh10 = (1 - t) * (1 - 3 * t);
      const double dh01 = -dh00;
      const double dh11 = t * (3 * t - 2);
      return (dh00 * tab_p_[i] + dh01 * tab_p_[i + 1]) / h + dh10 * tab_m_[i] +
             dh11 * tab_m_[i + 1];
    }
  }
  return 0.0;
}

bool PressureLaw::monotone_on(double lo, double hi, int samples) const {
  if (!(lo > 0.0) || !(hi > lo) || samples < 2) return false;
  for (int i = 0; i < samples; ++i) {
    const double rho = lo + (hi - lo) * i / (samples - 1);
    if (!(derivative(rho) > 0.0)) return false;
  }
  return true;
}

std::string PressureLaw::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case PressureKind::PowerLaw:
      os << "power:" << c_ << "," << g_;
      break;
    case PressureKind::Affine:
      os << "affine:" << c_ << "," << g_;
      break;
    case PressureKind::UserTable:
      os << "table:" << tab_rho_.size() << "pts["
         << tab_rho_.front() << "," << tab_rho_.back() << "]";
      break;
  }
  return os.str();
}

void ModelParams::validate() const {
  auto need = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string("model: ") + name +
                                  " must be strictly positive");
  };
  need(alpha, "alpha");
  need(beta, "beta");
  need(mu, "mu");
  need(nu, "nu");
  need(gamma, "gamma");
  need(rho_bar, "rho_bar");
}

DerivedCoeffs derive_coeffs(const ModelParams& params) {
  params.validate();
  const double pprime = params.pressure.derivative(params.rho_bar);
  if (!(pprime > 0.0))
    throw std::domain_error("invalid pressure: P'(rho_bar) <= 0");
  DerivedCoeffs c;
  c.a = std::sqrt(pprime);
  c.b = params.rho_bar * params.beta / c.a;
  c.discriminant = c.a * params.nu - c.b * params.gamma;
  return c;
}

Stability classify_stability(const DerivedCoeffs& coeffs, double nu,
                             double tol_rel) {
  const double tol = tol_rel * coeffs.a * nu;
  if (coeffs.discriminant > tol) return Stability::Stable;
  if (coeffs.discriminant < -tol) return Stability::Unstable;
  return Stability::Borderline;
}

Stability classify_stability(const ModelParams& params, double tol_rel) {
  return classify_stability(derive_coeffs(params), params.nu, tol_rel);
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "Stable";
    case Stability::Unstable: return "Unstable";
    case Stability::Borderline: return "Borderline";
  }
  return "?";
}

}  // namespace vspectra
