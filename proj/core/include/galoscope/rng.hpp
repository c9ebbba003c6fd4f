#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace galoscope {

// Single deterministic randomness stream for a whole run. Every random choice
// in the pipeline (gamma constants, lines, charts, base points, loop anchors,
// squaring matrices) is drawn from one stream in a documented order, so a seed
// pins the entire computation. The uniform double is derived from raw engine
// words by a fixed bit recipe rather than std::uniform_real_distribution,
// whose output is implementation-defined and would break cross-toolchain
// byte-identical reports.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform in [0, 1): top 53 bits of one engine word.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1).
  double symmetric() { return 2.0 * unit() - 1.0; }

  // Uniform on the open unit disc (rejection from the square; expected < 2 draws).
  std::complex<double> unit_disc() {
    for (;;) {
      double re = symmetric(), im = symmetric();
      if (re * re + im * im < 1.0 && (re != 0.0 || im != 0.0))
        return {re, im};
    }
  }

  // Uniform on the unit circle.
  std::complex<double> unit_circle() {
    double a = 6.283185307179586476925286766559 * unit();
    return {std::cos(a), std::sin(a)};
  }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    // Multiply-shift on the top 53 bits: deterministic, bias < 2^-40 for the
    // small n used here (loop anchor counts, retry jitter).
    return static_cast<std::uint64_t>(unit() * static_cast<double>(n)) % n;
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace galoscope
