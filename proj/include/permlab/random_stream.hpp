#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace permlab {

/// Philox4x32-10 block function (Salmon et al., Random123). Exposed so the
/// known-answer vectors can be checked directly.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// SplitMix64 finaliser, used to derive stream keys from (seed, path).
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Reproducible, splittable random stream.
///
/// State is (seed, path, counter). The Philox key is derived by folding each
/// path element into mix64(seed); the 64-bit block index lives in the low
/// half of the Philox counter. `counter` counts 32-bit words consumed, so a
/// stream can be reconstructed exactly from its three fields.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::vector<std::uint64_t> path = {}, std::uint64_t counter = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<std::uint64_t>& path() const noexcept { return path_; }
  std::uint64_t counter() const noexcept { return counter_; }

  /// Child stream with `index` appended to the path and counter reset.
  RandomStream split(std::uint64_t index) const;

  std::uint32_t next_u32() noexcept;
  std::uint64_t next_u64() noexcept;
  /// Uniform in [0, bound), bound >= 1; unbiased (Lemire's rejection method).
  std::uint32_t below(std::uint32_t bound) noexcept;
  /// Uniform in [0, 1) with 53 random bits.
  double next_double() noexcept;

 private:
  void refill(std::uint64_t block) noexcept;

  std::uint64_t seed_;
  std::vector<std::uint64_t> path_;
  std::uint64_t counter_;
  std::array<std::uint32_t, 2> key_{};
  std::array<std::uint32_t, 4> buffer_{};
  std::uint64_t buffered_block_ = ~std::uint64_t{0};
};

}  // namespace permlab
