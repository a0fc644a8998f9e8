#include "benford/conformance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "benford/errors.hpp"
#include "benford/montecarlo.hpp"

namespace benford {

namespace {

void require_base(int base) {
  if (base < 2) throw DomainError("base must be an integer >= 2");
}

}  // namespace

DigitStats digit_stats(std::span<const double> values, int base, std::size_t grid_size) {
  require_base(base);
  if (values.empty()) throw InputError("digit_stats: empty input");
  if (grid_size < 2) throw InputError("digit_stats: grid_size must be >= 2");

  DigitStats stats;
  stats.base = base;
  stats.count = values.size();
  stats.digit_counts.assign(static_cast<std::size_t>(base - 1), 0);

  std::vector<double> mantissas;
  mantissas.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = values[i];
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw InputError("digit_stats: value at index " + std::to_string(i) +
                       " is not a positive finite number");
    }
    const double m = mantissa(x, base);
    mantissas.push_back(m);
    ++stats.digit_counts[static_cast<std::size_t>(m) - 1];
  }
  std::sort(mantissas.begin(), mantissas.end());

  const double n = static_cast<double>(mantissas.size());
  const double b = base;
  stats.mantissa_grid.reserve(grid_size + 1);
  stats.empirical_cdf.reserve(grid_size + 1);
  for (std::size_t j = 0; j <= grid_size; ++j) {
    const double s = j == grid_size ? b : std::pow(b, static_cast<double>(j) / grid_size);
    const auto below = std::upper_bound(mantissas.begin(), mantissas.end(), s) - mantissas.begin();
    stats.mantissa_grid.push_back(s);
    stats.empirical_cdf.push_back(static_cast<double>(below) / n);
  }
  return stats;
}

double benford_cdf(double s, int base) {
  require_base(base);
  if (!(s >= 1.0 && s <= base)) throw DomainError("benford_cdf: requires 1 <= s <= B");
  return std::log(s) / std::log(static_cast<double>(base));
}

double benford_digit_prob(int d, int base) {
  require_base(base);
  if (d < 1 || d >= base) throw DomainError("benford_digit_prob: requires 1 <= d <= B-1");
  return std::log1p(1.0 / d) / std::log(static_cast<double>(base));
}

double sup_deviation(const DigitStats& stats) {
  const std::size_t grid = stats.empirical_cdf.size() - 1;
  double sup = 0.0;
  for (std::size_t j = 0; j <= grid; ++j) {
    const double expected = static_cast<double>(j) / static_cast<double>(grid);
    sup = std::max(sup, std::abs(stats.empirical_cdf[j] - expected));
  }
  return sup;
}

double benford_ks_statistic(std::span<const double> values, int base) {
  require_base(base);
  if (values.empty()) throw InputError("benford_ks_statistic: empty input");
  std::vector<double> fractions;
  fractions.reserve(values.size());
  for (double x : values) fractions.push_back(benford_cdf(mantissa(x, base), base));
  std::sort(fractions.begin(), fractions.end());
  const double n = static_cast<double>(fractions.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    const double u = fractions[i];
    sup = std::max({sup, (static_cast<double>(i) + 1.0) / n - u, u - static_cast<double>(i) / n});
  }
  return sup;
}

double chi_square(const DigitStats& stats) {
  const double n = static_cast<double>(stats.count);
  double sum = 0.0;
  for (int d = 1; d < stats.base; ++d) {
    const double expected = n * benford_digit_prob(d, stats.base);
    const double diff = static_cast<double>(stats.digit_counts[static_cast<std::size_t>(d - 1)]) - expected;
    sum += diff * diff / expected;
  }
  return sum;
}

double ks_critical_one_sample(std::size_t n) {
  return kKsOneSample01 / std::sqrt(static_cast<double>(n));
}

double ks_critical_two_sample(std::size_t n, std::size_t m) {
  const double dn = static_cast<double>(n), dm = static_cast<double>(m);
  return kKsTwoSample01 * std::sqrt((dn + dm) / (dn * dm));
}

std::vector<double> ConformanceReport::digit_frequencies() const {
  std::vector<double> frequencies;
  frequencies.reserve(stats.digit_counts.size());
  for (std::size_t c : stats.digit_counts) {
    frequencies.push_back(static_cast<double>(c) / static_cast<double>(stats.count));
  }
  return frequencies;
}

ConformanceReport audit_dataset(std::span<const double> values, int base,
                                std::optional<double> bound_context, std::size_t grid_size) {
  std::vector<double> kept;
  kept.reserve(values.size());
  std::size_t skipped = 0;
  for (double x : values) {
    if (x > 0.0 && std::isfinite(x)) {
      kept.push_back(x);
    } else {
      ++skipped;
    }
  }
  if (kept.empty()) throw InputError("audit: no positive values left after filtering");

  ConformanceReport report;
  report.stats = digit_stats(kept, base, grid_size);
  report.skipped = skipped;
  report.sup_deviation = sup_deviation(report.stats);
  report.chi_square = chi_square(report.stats);
  report.ks_critical = ks_critical_one_sample(kept.size());
  report.conforms = report.sup_deviation <= report.ks_critical;
  report.bound_context = bound_context;
  if (bound_context) {
    const double slack = 3.0 / std::sqrt(static_cast<double>(kept.size()));
    report.bound_consistent = report.sup_deviation <= *bound_context + slack;
  }
  return report;
}

KsResult two_sample_ks(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InputError("two_sample_ks: both samples must be nonempty");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size()), m = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double sup = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    sup = std::max(sup, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  return {sup, sup > ks_critical_two_sample(x.size(), y.size())};
}

}  // namespace benford
