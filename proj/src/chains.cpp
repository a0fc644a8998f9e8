#include "benford/chains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

#include "benford/errors.hpp"

namespace benford {

namespace {

using std::numbers::pi;

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Relative headroom applied to closed-form tail bounds against rounding.
constexpr double kTailHeadroom = 1.0 + 1e-10;

// e^{2 pi i t}, with t reduced mod 1 first so integer t gives exactly 1.
ComplexValue unit_phase(double t) {
  const double frac = t - std::round(t);
  return {std::cos(2.0 * pi * frac), std::sin(2.0 * pi * frac)};
}

// g(l) (e^{2 pi i b l} - e^{2 pi i a l}) / (2 pi i l)
ComplexValue fold_term(ComplexValue g, long l, const FoldInterval& interval) {
  const double dl = static_cast<double>(l);
  const ComplexValue rise = unit_phase(interval.b * dl) - unit_phase(interval.a * dl);
  const ComplexValue product = g * rise;
  // Dividing by i is a quarter turn; keeps +l and -l terms exact conjugates.
  return ComplexValue{product.imag(), -product.real()} / (2.0 * pi * dl);
}

void require_truncation(long L) {
  if (L < 1) throw InputError("truncation L must be >= 1");
}

// [log_B d, log_B(d+1)] for d = 1..B-1; shared endpoints are identical doubles.
std::vector<FoldInterval> digit_intervals(int base) {
  if (base < 2) throw InputError("base must be an integer >= 2");
  const double log_base = std::log(static_cast<double>(base));
  std::vector<FoldInterval> intervals;
  intervals.reserve(static_cast<std::size_t>(base - 1));
  double lower = 0.0;
  for (int d = 1; d < base; ++d) {
    const double upper = d + 1 == base ? 1.0 : std::log(static_cast<double>(d + 1)) / log_base;
    intervals.push_back({lower, upper});
    lower = upper;
  }
  return intervals;
}

}  // namespace

ChainSpec ChainSpec::make(int base, std::vector<ChainLink> links) {
  if (base < 2) throw InputError("chain base must be an integer >= 2");
  if (links.empty()) throw InputError("chain must have at least one link");
  for (std::size_t i = 0; i < links.size(); ++i) {
    const std::string where = "links[" + std::to_string(i) + "]: ";
    if (links[i].power == 0) throw InputError(where + "power must be nonzero");
    if (i == 0 && links[i].power != 1) {
      throw InputError(where + "the first link must have power 1");
    }
  }
  return ChainSpec(base, std::move(links));
}

FoldInterval FoldInterval::make(double a, double b) {
  if (!(a >= 0.0 && a <= b && b <= 1.0)) {
    throw InputError("fold interval must satisfy 0 <= a <= b <= 1");
  }
  return {a, b};
}

std::vector<long> cumulative_powers(const ChainSpec& chain) {
  const auto& links = chain.links();
  std::vector<long> powers(links.size(), 1);
  for (std::size_t m = links.size() - 1; m-- > 0;) {
    if (__builtin_mul_overflow(powers[m + 1], links[m + 1].power, &powers[m])) {
      throw InputError("links[" + std::to_string(m) + "]: cumulative power overflows");
    }
  }
  return powers;
}

ComplexValue chain_spectrum(const ChainSpec& chain, long l) {
  if (l == 0) return {1.0, 0.0};
  const auto powers = cumulative_powers(chain);
  // Canonical factor order, so reordered links give bit-identical products.
  std::vector<std::tuple<FamilyId, int, long>> factors;
  factors.reserve(chain.size());
  for (std::size_t m = 0; m < chain.size(); ++m) {
    const ScaleFamily& f = chain.links()[m].family;
    factors.emplace_back(f.id(), f.base(), powers[m]);
  }
  std::sort(factors.begin(), factors.end());
  ComplexValue product{1.0, 0.0};
  for (const auto& [id, own_base, power] : factors) {
    product *= mellin_at(ScaleFamily::from_id(id, own_base), power * l, chain.base());
  }
  return product;
}

MajorantProfile chain_majorant(const ChainSpec& chain) {
  const auto powers = cumulative_powers(chain);
  MajorantProfile profile{1.0, 0.0, 0.0};
  for (std::size_t m = 0; m < chain.size(); ++m) {
    profile = profile *
              chain.links()[m].family.majorant_profile(chain.base()).dilated(powers[m]);
  }
  return profile;
}

double two_sided_tail(const MajorantProfile& profile, long L) {
  require_truncation(L);
  if (profile.scale == 0.0) return 0.0;
  const double next = static_cast<double>(L) + 1.0;
  if (profile.log_ratio < 0.0) {
    // Successive terms shrink at least by this ratio beyond L.
    const double growth = std::pow((next + 1.0) / next, std::max(0.0, -profile.poly_exponent));
    const double ratio = std::exp(profile.log_ratio) * growth;
    if (ratio >= 1.0) return kInfinity;
    return 2.0 * profile.at(next) / (1.0 - ratio) * kTailHeadroom;
  }
  // Pure power decay: compare with the integral from L.
  const double p = profile.poly_exponent;
  if (p <= 1.0) return kInfinity;
  const double dl = static_cast<double>(L);
  return 2.0 * profile.scale * std::pow(dl, 1.0 - p) / (p - 1.0) * kTailHeadroom;
}

BoundResult deviation_bound(const ChainSpec& chain, const FoldInterval& interval, long L) {
  require_truncation(L);
  BoundResult result;
  result.truncation_L = L;
  result.interval_length = interval.length();
  result.per_term.reserve(2 * static_cast<std::size_t>(L));

  double sum = 0.0;
  for (long l = 1; l <= L; ++l) {
    for (long signed_l : {l, -l}) {
      const double modulus = std::abs(chain_spectrum(chain, signed_l));
      result.per_term.push_back({signed_l, modulus});
      sum += modulus;
    }
  }
  result.tail = two_sided_tail(chain_majorant(chain), L);
  result.value = result.interval_length == 0.0
                     ? 0.0
                     : result.interval_length * (sum + result.tail);
  return result;
}

double exponential_chain_bound(int n, int base) {
  if (n < 2) throw DomainError("exponential_chain_bound: requires n >= 2");
  if (base < 2) throw DomainError("exponential_chain_bound: requires base >= 2");
  const double step = 2.0 * pi * pi / std::log(static_cast<double>(base));
  const double half_n = 0.5 * n;
  constexpr long kMaxTerms = 100'000'000;
  double sum = 0.0;
  for (long l = 1; l <= kMaxTerms; ++l) {
    const double y = step * static_cast<double>(l);
    // y / sinh(y) = 2y e^{-y} / (1 - e^{-2y})
    const double log_ratio = std::log(2.0 * y) - y - std::log(-std::expm1(-2.0 * y));
    const double term = std::exp(half_n * log_ratio);
    if (term < 1e-300) return sum;
    sum += term;
  }
  throw NonConvergence("exponential_chain_bound: series did not fall below 1e-300");
}

double uniform_chain_density(int n, double k, double x) {
  if (n < 1) throw DomainError("uniform_chain_density: requires n >= 1");
  if (!(k > 0.0)) throw DomainError("uniform_chain_density: requires k > 0");
  if (!(x > 0.0 && x <= k)) throw DomainError("uniform_chain_density: requires 0 < x <= k");
  return std::pow(std::log(k / x), n - 1) / (k * gamma_real(n));
}

UniformBoundTerms uniform_chain_cdf_terms(int n, double k, double s) {
  if (n < 2) throw DomainError("uniform_chain_cdf_bound: requires n >= 2");
  if (!(k >= 1.0 && k < 10.0)) throw DomainError("uniform_chain_cdf_bound: requires k in [1, 10)");
  if (!(s >= 1.0 && s < 10.0)) throw DomainError("uniform_chain_cdf_bound: requires s in [1, 10)");
  const double two_log_s = 2.0 * std::log10(s);
  UniformBoundTerms terms;
  terms.density_term = (k / s) * std::pow(std::log(k), n - 1) / gamma_real(n);
  terms.first_harmonic_term = two_log_s / std::pow(2.9, n);
  terms.higher_term = two_log_s * zeta_minus_one(n) / std::pow(2.7, n);
  return terms;
}

double uniform_chain_cdf_bound(int n, double k, double s) {
  return uniform_chain_cdf_terms(n, k, s).value();
}

double fold_series(const SpectrumFn& spectrum, const FoldInterval& interval, long L) {
  require_truncation(L);
  if (interval.length() == 0.0) return 0.0;
  ComplexValue total{0.0, 0.0};
  for (long l = 1; l <= L; ++l) {
    const ComplexValue g = spectrum(l);
    total += fold_term(g, l, interval);
    total += fold_term(std::conj(g), -l, interval);
  }
  if (std::abs(total.imag()) > 1e-14) {
    throw std::logic_error("fold_series: conjugate terms failed to cancel");
  }
  return interval.length() + total.real();
}

std::vector<double> digit_series(const SpectrumFn& spectrum, int base, long L) {
  std::vector<double> probabilities;
  for (const FoldInterval& interval : digit_intervals(base)) {
    probabilities.push_back(fold_series(spectrum, interval, L));
  }
  return probabilities;
}

FoldResult fold_probability(const ChainSpec& chain, const FoldInterval& interval, long L) {
  require_truncation(L);
  if (interval.length() == 0.0) return {0.0, 0.0};

  ComplexValue total{0.0, 0.0};
  for (long l = 1; l <= L; ++l) {
    total += fold_term(chain_spectrum(chain, l), l, interval);
    total += fold_term(chain_spectrum(chain, -l), -l, interval);
  }
  if (std::abs(total.imag()) > 1e-14) {
    throw std::logic_error("fold_probability: conjugate terms failed to cancel");
  }

  // |rise / (2 pi l)| is at most both (b - a) and 1 / (pi l).
  const MajorantProfile profile = chain_majorant(chain);
  const double by_length = interval.length() * two_sided_tail(profile, L);
  const double by_phase = two_sided_tail(profile * MajorantProfile{1.0 / pi, 1.0, 0.0}, L);
  return {interval.length() + total.real(), std::min(by_length, by_phase)};
}

std::vector<double> first_digit_probabilities(const ChainSpec& chain, long L) {
  std::vector<double> probabilities;
  for (const FoldInterval& interval : digit_intervals(chain.base())) {
    probabilities.push_back(fold_probability(chain, interval, L).probability);
  }
  return probabilities;
}

}  // namespace benford
