#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "benford/chains.hpp"
#include "benford/errors.hpp"
#include "benford/families.hpp"

namespace benford {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3"). Counter-based: block i of stream s is computed directly.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter counter, Key key);
};

/// Identifier echoed into every output that depends on random draws.
inline constexpr std::string_view kRngAlgorithm = "philox4x32-10/v1";

struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Sequential reader over one Philox substream. Key = seed, counter =
/// (block index, stream index); identical seeds give identical sequences on
/// every platform.
class StreamRng {
 public:
  explicit StreamRng(RngSeed seed);

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1), 53 bits.
  double next_unit();

 private:
  void refill();

  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  unsigned used_ = 2;
};

template <class R>
concept UniformSource = requires(R& r) {
  { r.next_unit() } -> std::convertible_to<double>;
};

/// Scales outside [kMinScale, kMaxScale] abort a draw (counted as failure).
inline constexpr double kMinScale = 1e-300;
inline constexpr double kMaxScale = 1e300;

/// One draw from family(theta) by inverse CDF; half_gaussian uses Box-Muller
/// and consumes two variates.
template <UniformSource Rng>
double sample_family(const ScaleFamily& family, double theta, Rng& rng) {
  if (!(theta > 0.0)) throw DomainError("sample_family: requires theta > 0");
  switch (family.id()) {
    case FamilyId::uniform:
      return theta * rng.next_unit();
    case FamilyId::exponential:
      return -theta * std::log1p(-rng.next_unit());
    case FamilyId::half_gaussian: {
      const double radius = std::sqrt(-2.0 * std::log(rng.next_unit()));
      const double z = radius * std::cos(2.0 * std::numbers::pi * rng.next_unit());
      return std::abs(z) * theta / std::numbers::sqrt2;
    }
    case FamilyId::benford:
      return theta * std::pow(static_cast<double>(family.base()), rng.next_unit());
  }
  return 0.0;
}

/// X_1 ~ D_1(1), X_m ~ D_m(X_{m-1}^{r_m}); nullopt when a scale or the result
/// leaves [kMinScale, kMaxScale].
template <UniformSource Rng>
std::optional<double> sample_chain(const ChainSpec& chain, Rng& rng) {
  const auto& links = chain.links();
  double x = sample_family(links.front().family, 1.0, rng);
  for (std::size_t m = 1; m < links.size(); ++m) {
    if (!(x >= kMinScale && x <= kMaxScale)) return std::nullopt;
    const double theta = std::pow(x, static_cast<double>(links[m].power));
    if (!(theta >= kMinScale && theta <= kMaxScale)) return std::nullopt;
    x = sample_family(links[m].family, theta, rng);
  }
  if (!(x >= kMinScale && x <= kMaxScale)) return std::nullopt;
  return x;
}

/// prod_m Xi_m^{R_m} with independent unit-scale Xi_m; same law as sample_chain.
template <UniformSource Rng>
std::optional<double> sample_product(const ChainSpec& chain, const std::vector<long>& powers,
                                     Rng& rng) {
  double log_x = 0.0;
  for (std::size_t m = 0; m < chain.size(); ++m) {
    const double xi = sample_family(chain.links()[m].family, 1.0, rng);
    log_x += static_cast<double>(powers[m]) * std::log(xi);
  }
  if (!(log_x >= std::log(kMinScale) && log_x <= std::log(kMaxScale))) return std::nullopt;
  return std::exp(log_x);
}

template <UniformSource Rng>
std::optional<double> sample_product(const ChainSpec& chain, Rng& rng) {
  return sample_product(chain, cumulative_powers(chain), rng);
}

/// M_B(x) in [1, B) with x = M_B(x) B^k. Throws DomainError for x <= 0.
double mantissa(double x, int base);
int first_digit(double x, int base);

enum class SamplerKind { chain, product };

/// Draws per substream; draw i uses stream first_stream + i / kStreamQuota.
inline constexpr std::size_t kStreamQuota = 1u << 16;

struct SampleBatch {
  RngSeed seed;
  SamplerKind kind = SamplerKind::chain;
  std::size_t requested = 0;
  std::size_t failures = 0;
  /// Successful draws of X_n in draw order, with their global draw index.
  std::vector<double> values;
  std::vector<std::uint64_t> indices;

  std::size_t count() const { return values.size(); }
};

/// `requested` draws split into fixed-quota substreams starting at
/// seed.stream. The result does not depend on `workers`.
SampleBatch simulate(const ChainSpec& chain, RngSeed seed, std::size_t requested,
                     SamplerKind kind = SamplerKind::chain, unsigned workers = 1);

}  // namespace benford
