#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace benford {

inline constexpr double kKsOneSample01 = 1.63;
inline constexpr double kKsTwoSample01 = 1.628;
inline constexpr std::size_t kDefaultGridSize = 1000;

struct DigitStats {
  int base = 10;
  std::size_t count = 0;
  /// digit_counts[d - 1] for first digit d.
  std::vector<std::size_t> digit_counts;
  /// s_j = B^{j / grid_size}, j = 0..grid_size.
  std::vector<double> mantissa_grid;
  /// Fraction of mantissas <= s_j.
  std::vector<double> empirical_cdf;
};

/// Throws InputError on empty input or on the first nonpositive/non-finite
/// value (named by index).
DigitStats digit_stats(std::span<const double> values, int base,
                       std::size_t grid_size = kDefaultGridSize);

/// log_B s for s in [1, B].
double benford_cdf(double s, int base);
/// log_B(1 + 1/d) for d in [1, B-1].
double benford_digit_prob(int d, int base);

/// Grid supremum of |F(s) - log_B s|.
double sup_deviation(const DigitStats& stats);
/// Exact one-sample KS distance between the mantissa law of `values` and
/// Benford's law (no grid).
double benford_ks_statistic(std::span<const double> values, int base);
/// Pearson chi-square of first-digit counts against Benford probabilities.
double chi_square(const DigitStats& stats);

/// Asymptotic alpha = 0.01 critical value, 1.63 / sqrt(n).
double ks_critical_one_sample(std::size_t n);
/// Asymptotic alpha = 0.01 critical value, 1.628 sqrt((n + m) / (n m)).
double ks_critical_two_sample(std::size_t n, std::size_t m);

struct ConformanceReport {
  DigitStats stats;
  std::size_t skipped = 0;
  double sup_deviation = 0.0;
  double chi_square = 0.0;
  double ks_critical = 0.0;
  bool conforms = false;
  std::optional<double> bound_context;
  /// sup_deviation <= bound_context + 3 / sqrt(count); set iff bound_context is.
  std::optional<bool> bound_consistent;

  std::vector<double> digit_frequencies() const;
};

/// Nonpositive and non-finite entries are dropped and counted in `skipped`.
/// Throws InputError when nothing is left.
ConformanceReport audit_dataset(std::span<const double> values, int base,
                                std::optional<double> bound_context = std::nullopt,
                                std::size_t grid_size = kDefaultGridSize);

struct KsResult {
  double statistic = 0.0;
  bool reject_at_01 = false;
};

/// Throws InputError when either sample is empty.
KsResult two_sample_ks(std::span<const double> a, std::span<const double> b);

/// Column selector for CSV input: header name or zero-based index.
using ColumnSelector = std::variant<std::string, std::size_t>;

struct CsvColumn {
  std::vector<double> values;
  /// Cells that are empty, non-numeric or non-finite.
  std::size_t non_numeric = 0;
};

/// Reads one numeric column. Lines starting with '#' and blank lines are
/// ignored. Selecting by name requires has_header.
CsvColumn read_csv_column(const std::filesystem::path& path, const ColumnSelector& column,
                          bool has_header);

}  // namespace benford
