#include "benford/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace benford {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

// x * B^power without going through log/exp; exact when B^|power| is.
double scale_by_power(double x, int base, long power) {
  const double b = base;
  const long magnitude = power < 0 ? -power : power;
  // Split large exponents so the power itself stays finite.
  const long half = magnitude > 256 ? magnitude / 2 : 0;
  const double first = std::pow(b, static_cast<double>(magnitude - half));
  const double second = std::pow(b, static_cast<double>(half));
  if (power >= 0) return x * first * second;
  return x / first / second;
}

struct StreamChunk {
  std::vector<double> values;
  std::vector<std::uint64_t> indices;
  std::size_t failures = 0;
};

StreamChunk run_stream(const ChainSpec& chain, const std::vector<long>& powers,
                       RngSeed seed, std::uint64_t first_index, std::size_t count,
                       SamplerKind kind) {
  StreamChunk chunk;
  chunk.values.reserve(count);
  chunk.indices.reserve(count);
  StreamRng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const auto draw = kind == SamplerKind::chain ? sample_chain(chain, rng)
                                                 : sample_product(chain, powers, rng);
    if (draw) {
      chunk.values.push_back(*draw);
      chunk.indices.push_back(first_index + i);
    } else {
      ++chunk.failures;
    }
  }
  return chunk;
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

StreamRng::StreamRng(RngSeed seed)
    : key_{static_cast<std::uint32_t>(seed.seed), static_cast<std::uint32_t>(seed.seed >> 32)},
      stream_(seed.stream) {}

void StreamRng::refill() {
  const Philox4x32::Counter counter = {
      static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
  const auto out = Philox4x32::block(counter, key_);
  buffer_[0] = static_cast<std::uint64_t>(out[0]) | (static_cast<std::uint64_t>(out[1]) << 32);
  buffer_[1] = static_cast<std::uint64_t>(out[2]) | (static_cast<std::uint64_t>(out[3]) << 32);
  ++block_;
  used_ = 0;
}

std::uint64_t StreamRng::next_u64() {
  if (used_ == buffer_.size()) refill();
  return buffer_[used_++];
}

double StreamRng::next_unit() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
}

double mantissa(double x, int base) {
  if (base < 2) throw DomainError("mantissa: base must be >= 2");
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("mantissa: requires finite x > 0");
  const double b = base;
  const long exponent = static_cast<long>(std::floor(std::log(x) / std::log(b)));
  double m = scale_by_power(x, base, -exponent);
  if (m < 1.0) {
    m *= b;
  } else if (m >= b) {
    m /= b;
  }
  return m;
}

int first_digit(double x, int base) {
  return static_cast<int>(std::floor(mantissa(x, base)));
}

SampleBatch simulate(const ChainSpec& chain, RngSeed seed, std::size_t requested,
                     SamplerKind kind, unsigned workers) {
  const std::size_t streams = (requested + kStreamQuota - 1) / kStreamQuota;
  const auto powers = cumulative_powers(chain);
  std::vector<StreamChunk> chunks(streams);

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t s = first; s < streams; s += stride) {
      const std::uint64_t begin = s * kStreamQuota;
      const std::size_t count = std::min(kStreamQuota, requested - begin);
      chunks[s] = run_stream(chain, powers, {seed.seed, seed.stream + s}, begin, count, kind);
    }
  };

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(streams, 1))));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }

  SampleBatch batch;
  batch.seed = seed;
  batch.kind = kind;
  batch.requested = requested;
  batch.values.reserve(requested);
  batch.indices.reserve(requested);
  for (auto& chunk : chunks) {
    batch.failures += chunk.failures;
    batch.values.insert(batch.values.end(), chunk.values.begin(), chunk.values.end());
    batch.indices.insert(batch.indices.end(), chunk.indices.begin(), chunk.indices.end());
  }
  return batch;
}

}  // namespace benford
