#include "benford/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "benford/errors.hpp"

namespace benford {

namespace {

constexpr std::array<double, 14> kLanczosCoef = {
    57.1562356658629235,     -59.5979603554754912,
    14.1360979747417471,     -0.491913816097620199,
    .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,
    -.210264441724104883e-3, .217439618115212643e-3,
    -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

constexpr double kLanczosShift = 5.24218750000000000;  // g + 1/2, g = 607/128
constexpr double kSqrtTwoPi = 2.5066282746310005;

// Bernoulli numbers B_2..B_10 divided by (2k)!.
constexpr std::array<double, 5> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,           -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,        -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
};

}  // namespace

ComplexValue complex_log_gamma(ComplexValue z) {
  if (!(z.real() > 0.0)) {
    throw DomainError("complex_gamma: requires Re(z) > 0");
  }
  ComplexValue tmp = z + kLanczosShift;
  tmp = (z + 0.5) * std::log(tmp) - tmp;
  ComplexValue series = 0.999999999999997092;
  ComplexValue y = z;
  for (double c : kLanczosCoef) {
    y += 1.0;
    series += c / y;
  }
  return tmp + std::log(kSqrtTwoPi * series / z);
}

ComplexValue complex_gamma(ComplexValue z) {
  return std::exp(complex_log_gamma(z));
}

double gamma_abs_on_line(double x) {
  const double t = std::numbers::pi * std::abs(x);
  if (t == 0.0) return 1.0;
  if (t > 30.0) {
    // sinh(t) overflows long before the ratio underflows.
    return std::sqrt(2.0 * t) * std::exp(-0.5 * t) /
           std::sqrt(-std::expm1(-2.0 * t));
  }
  return std::sqrt(t / std::sinh(t));
}

double zeta_minus_one(int n) {
  if (n < 2) throw DomainError("zeta_minus_one: requires n >= 2");
  const double s = n;
  // Direct sum up to N-1, Euler-Maclaurin tail from N on.
  constexpr int kCut = 32;
  const double cut = kCut;
  double tail = std::pow(cut, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(cut, -s);
  double rising = s;  // s (s+1) ... (s + 2k - 2)
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    const double order = 2.0 * static_cast<double>(k);
    tail += kBernoulliOverFactorial[k] * rising * std::pow(cut, -s - order - 1.0);
    rising *= (s + order + 1.0) * (s + order + 2.0);
  }
  double sum = tail;
  for (int l = kCut - 1; l >= 2; --l) {
    sum += std::pow(static_cast<double>(l), -s);
  }
  return sum;
}

double gamma_real(int n) {
  if (n < 1) throw DomainError("gamma_real: requires n >= 1");
  if (n > 171) throw DomainError("gamma_real: overflows double for n > 171");
  if (n <= 21) {
    double f = 1.0;
    for (int k = 2; k < n; ++k) f *= k;
    return f;
  }
  return std::tgamma(static_cast<double>(n));
}

}  // namespace benford
