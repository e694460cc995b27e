// splitmix64: a counter-based 64-bit generator. state advances by the golden
// gamma 0x9E3779B97F4A7C15 and each output is the Stafford "mix13" finalizer
// of the new state, so any implementation reproduces the same stream.
#ifndef RECT_ESCAPE_RNG_HPP_
#define RECT_ESCAPE_RNG_HPP_

#include <cstdint>

namespace rect_escape {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGoldenGamma;
    return splitmix64_mix(state_);
  }

  // Top 53 bits scaled into [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // lo + next() % (hi - lo + 1); the modulo bias is negligible for the
  // small spans used here and keeps the mapping trivial to port.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

 private:
  std::uint64_t state_;
};

// Independent stream for trial `index` under a base seed.
inline SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(splitmix64_mix(seed + (index + 1) * kGoldenGamma));
}

}  // namespace rect_escape

#endif  // RECT_ESCAPE_RNG_HPP_
