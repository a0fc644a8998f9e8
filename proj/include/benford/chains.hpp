#pragma once

#include <functional>
#include <vector>

#include "benford/families.hpp"
#include "benford/specfun.hpp"

namespace benford {

/// One link of a chain: X_m ~ family(X_{m-1}^power).
struct ChainLink {
  ScaleFamily family;
  long power = 1;
};

/// Ordered chain X_1 ~ D_1(1), X_m ~ D_m(X_{m-1}^{r_m}) together with the
/// digit base. Construct through make(), which enforces: base >= 2,
/// nonempty, nonzero powers, first power 1.
class ChainSpec {
 public:
  /// Throws InputError naming the offending link index.
  static ChainSpec make(int base, std::vector<ChainLink> links);

  int base() const { return base_; }
  const std::vector<ChainLink>& links() const { return links_; }
  std::size_t size() const { return links_.size(); }

 private:
  ChainSpec(int base, std::vector<ChainLink> links)
      : base_(base), links_(std::move(links)) {}

  int base_;
  std::vector<ChainLink> links_;
};

/// [a, b] inside [0, 1], an interval of log_B X mod 1. a == b is allowed and
/// treated as a null set.
struct FoldInterval {
  double a = 0.0;
  double b = 1.0;

  /// Throws InputError unless 0 <= a <= b <= 1.
  static FoldInterval make(double a, double b);
  double length() const { return b - a; }
};

struct SpectrumTerm {
  long l;
  double modulus;
};

struct BoundResult {
  /// (b - a) * (sum of per_term moduli + tail)
  double value = 0.0;
  long truncation_L = 0;
  double interval_length = 0.0;
  /// 0 < |l| <= L in summation order: ascending |l|, +l before -l.
  std::vector<SpectrumTerm> per_term;
  /// Bound on the discarded sum over |l| > L (not scaled by b - a).
  double tail = 0.0;
};

struct FoldResult {
  double probability = 0.0;
  double truncation_error = 0.0;
};

/// R_m = product of link powers after m; log X_n = sum_m R_m log Xi_m.
std::vector<long> cumulative_powers(const ChainSpec& chain);

/// g_n(l) = prod_m (M f_m)(1 - 2 pi i R_m l / ln B).
ComplexValue chain_spectrum(const ChainSpec& chain, long l);

/// Majorant profile of |chain_spectrum(l)| for l >= 1.
MajorantProfile chain_majorant(const ChainSpec& chain);

/// Rigorous bound on sum_{|l| > L} profile(|l|); +inf when the profile is
/// not summable.
double two_sided_tail(const MajorantProfile& profile, long L);

/// |Prob(Y_n mod 1 in [a,b]) - (b - a)| <= value, summing both signs of l.
BoundResult deviation_bound(const ChainSpec& chain, const FoldInterval& interval,
                            long L = 64);

/// sum_{l >= 1} ((2 pi^2 l / ln B) / sinh(2 pi^2 l / ln B))^{n/2}: the one-sided
/// closed-form bound for chains of n exponentials.
double exponential_chain_bound(int n, int base);

/// Density of the n-th link of a uniform chain started at Unif(0, k):
///   ln^{n-1}(k/x) / (k Gamma(n)),  0 < x <= k.
double uniform_chain_density(int n, double k, double x);

/// Terms of the base-10 bound on |P_n(s) - log10 s| for the uniform chain.
struct UniformBoundTerms {
  double density_term;         // (k/s) ln^{n-1}(k) / Gamma(n)
  double first_harmonic_term;  // 2 log10(s) / 2.9^n
  double higher_term;          // 2 log10(s) (zeta(n) - 1) / 2.7^n
  double value() const { return density_term + first_harmonic_term + higher_term; }
};

UniformBoundTerms uniform_chain_cdf_terms(int n, double k, double s);
double uniform_chain_cdf_bound(int n, double k, double s);

/// Prob(log_B X_n mod 1 in [a,b]) by the truncated Poisson-summation series.
FoldResult fold_probability(const ChainSpec& chain, const FoldInterval& interval,
                            long L = 64);

/// Entry d-1 is the probability of first digit d, 1 <= d <= B-1.
std::vector<double> first_digit_probabilities(const ChainSpec& chain, long L = 64);

/// Spectrum l -> g(l) for l >= 1; negative l are conjugates.
using SpectrumFn = std::function<ComplexValue(long)>;

/// (b - a) + sum_{0 < |l| <= L} g(l) (e^{2 pi i b l} - e^{2 pi i a l}) / (2 pi i l)
/// for any spectrum of a real density.
double fold_series(const SpectrumFn& spectrum, const FoldInterval& interval, long L);

/// fold_series over the first-digit intervals [log_B d, log_B(d+1)].
std::vector<double> digit_series(const SpectrumFn& spectrum, int base, long L);

}  // namespace benford
