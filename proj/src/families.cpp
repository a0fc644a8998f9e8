#include "benford/families.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "benford/errors.hpp"

namespace benford {

namespace {

using std::numbers::pi;

double frequency(long l, int base) {
  return 2.0 * pi * static_cast<double>(l) / std::log(static_cast<double>(base));
}

void require_base(int base) {
  if (base < 2) throw DomainError("base must be an integer >= 2");
}

}  // namespace

std::string_view family_name(FamilyId id) {
  switch (id) {
    case FamilyId::exponential:
      return "exponential";
    case FamilyId::uniform:
      return "uniform";
    case FamilyId::half_gaussian:
      return "half_gaussian";
    case FamilyId::benford:
      return "benford";
  }
  return "unknown";
}

std::optional<FamilyId> parse_family_name(std::string_view name) {
  for (FamilyId id : {FamilyId::exponential, FamilyId::uniform,
                      FamilyId::half_gaussian, FamilyId::benford}) {
    if (family_name(id) == name) return id;
  }
  return std::nullopt;
}

double MajorantProfile::at(double l) const {
  if (scale == 0.0) return 0.0;
  return std::exp(std::log(scale) - poly_exponent * std::log(l) + log_ratio * l);
}

MajorantProfile MajorantProfile::dilated(long r) const {
  const double m = std::abs(static_cast<double>(r));
  return {scale * std::pow(m, -poly_exponent), poly_exponent, log_ratio * m};
}

MajorantProfile MajorantProfile::operator*(const MajorantProfile& other) const {
  return {scale * other.scale, poly_exponent + other.poly_exponent,
          log_ratio + other.log_ratio};
}

ScaleFamily ScaleFamily::exponential() { return {FamilyId::exponential, 0}; }
ScaleFamily ScaleFamily::uniform() { return {FamilyId::uniform, 0}; }
ScaleFamily ScaleFamily::half_gaussian() { return {FamilyId::half_gaussian, 0}; }

ScaleFamily ScaleFamily::benford(int base) {
  require_base(base);
  return {FamilyId::benford, base};
}

ScaleFamily ScaleFamily::from_id(FamilyId id, int base) {
  switch (id) {
    case FamilyId::exponential:
      return exponential();
    case FamilyId::uniform:
      return uniform();
    case FamilyId::half_gaussian:
      return half_gaussian();
    case FamilyId::benford:
      if (base < 2) throw InputError("benford family needs a base >= 2");
      return benford(base);
  }
  throw InputError("unknown family");
}

double ScaleFamily::density_at_unit(double x) const {
  if (x < 0.0) return 0.0;
  switch (id_) {
    case FamilyId::exponential:
      return std::exp(-x);
    case FamilyId::uniform:
      return x <= 1.0 ? 1.0 : 0.0;
    case FamilyId::half_gaussian:
      return 2.0 / std::sqrt(pi) * std::exp(-x * x);
    case FamilyId::benford:
      return (x >= 1.0 && x < base_) ? 1.0 / (x * std::log(static_cast<double>(base_)))
                                     : 0.0;
  }
  return 0.0;
}

double ScaleFamily::cdf_at_unit(double x) const {
  if (x <= 0.0) return 0.0;
  switch (id_) {
    case FamilyId::exponential:
      return -std::expm1(-x);
    case FamilyId::uniform:
      return std::min(x, 1.0);
    case FamilyId::half_gaussian:
      return std::erf(x);
    case FamilyId::benford:
      if (x < 1.0) return 0.0;
      if (x >= base_) return 1.0;
      return std::log(x) / std::log(static_cast<double>(base_));
  }
  return 0.0;
}

ComplexValue ScaleFamily::mellin_exact(long l, int base) const {
  require_base(base);
  if (l == 0) return {1.0, 0.0};
  if (l < 0) return std::conj(mellin_exact(-l, base));

  const ComplexValue s{1.0, -frequency(l, base)};
  switch (id_) {
    case FamilyId::exponential:
      return complex_gamma(s);
    case FamilyId::uniform:
      return 1.0 / s;
    case FamilyId::half_gaussian:
      return complex_gamma(0.5 * s) / std::sqrt(pi);
    case FamilyId::benford: {
      if (base_ == base) return {0.0, 0.0};
      const double log_own = std::log(static_cast<double>(base_));
      const ComplexValue shift = s - 1.0;
      return (std::exp(shift * log_own) - 1.0) / (shift * log_own);
    }
  }
  return {0.0, 0.0};
}

MajorantProfile ScaleFamily::majorant_profile(int base) const {
  require_base(base);
  const double log_base = std::log(static_cast<double>(base));
  switch (id_) {
    case FamilyId::exponential: {
      // |Gamma(1+ix)| = sqrt(2 pi x) e^{-pi x / 2} (1 - e^{-2 pi x})^{-1/2},
      // x = 2 pi l / ln B; the last factor is largest at l = 1.
      const double edge = std::pow(-std::expm1(-4.0 * pi * pi / log_base), -0.5);
      const double safety = std::max(1.0002, edge * (1.0 + 1e-9));
      return {safety * 2.0 * pi / std::sqrt(log_base), -0.5, -pi * pi / log_base};
    }
    case FamilyId::uniform:
      // |1/s| <= 1/|Im s|
      return {log_base / (2.0 * pi), 1.0, 0.0};
    case FamilyId::half_gaussian:
      // |Gamma(s/2)| / sqrt(pi) = cosh(pi^2 l / ln B)^{-1/2}
      return {1.01 * std::sqrt(2.0), 0.0, -0.5 * pi * pi / log_base};
    case FamilyId::benford:
      if (base_ == base) return {0.0, 0.0, 0.0};
      return {log_base / (pi * std::log(static_cast<double>(base_))), 1.0, 0.0};
  }
  return {};
}

double ScaleFamily::majorant(long l, int base) const {
  if (l == 0) return 1.0;
  return majorant_profile(base).at(std::abs(static_cast<double>(l)));
}

std::vector<double> ScaleFamily::breakpoints() const {
  switch (id_) {
    case FamilyId::uniform:
      return {0.0, 1.0};
    case FamilyId::benford:
      return {1.0, static_cast<double>(base_)};
    default:
      return {0.0};
  }
}

ComplexValue mellin_at(const ScaleFamily& family, long l, int base) {
  return family.mellin_exact(l, base);
}

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;

// Bisection on the Kronrod error estimate against an absolute tolerance;
// tolerances relative to the integral stall on oscillatory panels.
template <class F>
ComplexValue adaptive_panel(const F& f, double a, double b, double abs_tol, double omega,
                            int depth, double& error, double& mass) {
  double err = 0.0, l1 = 0.0;
  const ComplexValue value = Kronrod::integrate(f, a, b, 0, 0.0, &err, &l1);
  if (!std::isfinite(err)) throw NonConvergence("mellin_numeric: integrand is not finite");
  // Phase roundoff grows like eps * omega * |u|.
  const double reach = 1.0 + std::abs(omega) * std::max(std::abs(a), std::abs(b));
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * reach * l1;
  if (err <= std::max(abs_tol, floor) || depth == 0) {
    error += err;
    mass += l1;
    return value;
  }
  const double mid = 0.5 * (a + b);
  return adaptive_panel(f, a, mid, 0.5 * abs_tol, omega, depth - 1, error, mass) +
         adaptive_panel(f, mid, b, 0.5 * abs_tol, omega, depth - 1, error, mass);
}

}  // namespace

ComplexValue mellin_numeric(const Density& density, long l, int base, double tol,
                            std::span<const double> breakpoints) {
  require_base(base);
  if (!(tol > 0.0)) throw DomainError("mellin_numeric: tol must be positive");

  constexpr int kMaxDepth = 14;
  constexpr double kMaxReach = 2000.0;
  constexpr int kQuietPanels = 4;

  const double omega = frequency(l, base);
  const double width = omega == 0.0 ? 1.0 : std::min(1.0, 2.0 * pi / std::abs(omega));
  // Per unit length; summed over at most 2 * kMaxReach this stays below tol.
  const double density_tol = 1e-4 * tol;

  std::vector<double> cuts;
  for (double t : breakpoints) {
    if (t > 0.0) cuts.push_back(std::log(t));
  }
  std::sort(cuts.begin(), cuts.end());

  // f(e^u) e^u e^{-i omega u}
  auto integrand = [&](double u) -> ComplexValue {
    const double t = std::exp(u);
    const double f = density(t);
    if (f == 0.0) return {0.0, 0.0};
    return f * t * ComplexValue{std::cos(omega * u), -std::sin(omega * u)};
  };

  ComplexValue total{0.0, 0.0};
  double error = 0.0;
  const double quiet = 1e-4 * tol;
  for (int direction : {+1, -1}) {
    double u = 0.0;
    int quiet_run = 0;
    while (quiet_run < kQuietPanels) {
      if (std::abs(u) > kMaxReach) {
        throw NonConvergence("mellin_numeric: density mass does not decay in log scale");
      }
      double next = u + direction * width;
      for (double c : cuts) {
        if (direction > 0 && c > u && c < next) next = c;
        if (direction < 0 && c < u && c > next) next = c;
      }
      const double lo = std::min(u, next), hi = std::max(u, next);
      double mass = 0.0;
      total += adaptive_panel(integrand, lo, hi, density_tol * (hi - lo), omega, kMaxDepth,
                              error, mass);
      quiet_run = mass < quiet ? quiet_run + 1 : 0;
      u = next;
    }
  }

  if (!(error <= tol) || !std::isfinite(total.real()) || !std::isfinite(total.imag())) {
    throw NonConvergence("mellin_numeric: error estimate exceeds tolerance");
  }
  return total;
}

double power_density(const ScaleFamily& family, long r, double u) {
  if (r == 0) throw DomainError("power_density: power must be nonzero");
  if (!(u > 0.0)) throw DomainError("power_density: requires u > 0");
  const double rr = static_cast<double>(r);
  return family.density_at_unit(std::pow(u, 1.0 / rr)) * std::pow(u, (1.0 - rr) / rr) /
         std::abs(rr);
}

ComplexValue power_shift(const ScaleFamily& family, long r, long l, int base) {
  if (r == 0) throw DomainError("power_shift: power must be nonzero");
  return mellin_at(family, r * l, base);
}

}  // namespace benford
