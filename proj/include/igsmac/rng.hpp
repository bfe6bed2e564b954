#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace igsmac {

/// Philox4x32-10 counter-based generator.  A stream is identified by
/// (seed, stream); distinct streams are statistically independent and their
/// output never depends on draw order elsewhere, which keeps parallel
/// Monte Carlo trials bit-reproducible.
class PhiloxRng {
 public:
  explicit PhiloxRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform double in (0, 1], 53-bit resolution.
  double next_uniform();
  /// Standard normal via Box-Muller on the uniform stream.
  double next_gaussian();
  /// Proper complex Gaussian with unit variance (E|z|^2 = 1).
  std::complex<double> next_complex_gaussian();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_{};
  int cursor_ = 4;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace igsmac
