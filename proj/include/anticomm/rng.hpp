#pragma once

#include "anticomm/error.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

namespace anticomm {

// Counter-based Philox4x32-10. Key = 64-bit seed, upper counter words = stream.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block generate(Block counter, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * counter[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * counter[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
      counter = {hi1 ^ counter[1] ^ key[0], lo1, hi0 ^ counter[3] ^ key[1], lo0};
    }
    return counter;
  }
};

struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

// Stream layout: 24 bits N-index | 32 bits trial | 8 bits slot.
inline RngSeed derive_seed(std::uint64_t base, std::uint64_t n_index, std::uint64_t trial,
                           std::uint64_t slot) {
  require(n_index < (1ull << 24) && trial < (1ull << 32) && slot < (1ull << 8),
          ErrorCode::invalid_input, "seed derivation indices out of range");
  return {base, (n_index << 40) | (trial << 8) | slot};
}

enum class EntryDistribution { standard_normal, rademacher, uniform_scaled };

inline const char* to_string(EntryDistribution d) {
  switch (d) {
    case EntryDistribution::standard_normal: return "standard-normal";
    case EntryDistribution::rademacher: return "rademacher";
    case EntryDistribution::uniform_scaled: return "uniform-scaled";
  }
  return "unknown";
}

inline EntryDistribution parse_distribution(const std::string& s) {
  if (s == "standard-normal" || s == "normal") return EntryDistribution::standard_normal;
  if (s == "rademacher") return EntryDistribution::rademacher;
  if (s == "uniform-scaled" || s == "uniform") return EntryDistribution::uniform_scaled;
  throw Error(ErrorCode::invalid_input, "unknown entry distribution '" + s + "'");
}

class RandomStream {
 public:
  explicit RandomStream(RngSeed s)
      : key_{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32)},
        stream_(s.stream) {}

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return buffer_[pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double draw(EntryDistribution d) {
    switch (d) {
      case EntryDistribution::standard_normal: return normal();
      case EntryDistribution::rademacher: return (next_u32() & 1u) ? 1.0 : -1.0;
      case EntryDistribution::uniform_scaled: return std::sqrt(3.0) * (2.0 * uniform() - 1.0);
    }
    return 0.0;
  }

 private:
  void refill() {
    buffer_ = Philox4x32::generate({static_cast<std::uint32_t>(block_),
                                    static_cast<std::uint32_t>(block_ >> 32),
                                    static_cast<std::uint32_t>(stream_),
                                    static_cast<std::uint32_t>(stream_ >> 32)},
                                   key_);
    ++block_;
    pos_ = 0;
  }

  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Philox4x32::Block buffer_{};
  int pos_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace anticomm
