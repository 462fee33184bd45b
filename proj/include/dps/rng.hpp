#ifndef DPS_RNG_HPP
#define DPS_RNG_HPP

#include <cstdint>

namespace dps {

// Counter-based uniform stream. Each draw is a pure function of
// (seed, replicate, role, counter), so replicate streams are independent of
// scheduling order and a stream can be re-opened at any counter offset.
enum class StreamRole : std::uint64_t {
  ColorUniform = 0,  // drives color selection and base-measure sampling
  NoiseUniform = 1,  // drives the weight noise U_n
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t replicate, StreamRole role)
      : key_(detail::mix64(detail::mix64(seed) ^
                           detail::mix64(replicate * 2 +
                                         static_cast<std::uint64_t>(role)))) {}

  std::uint64_t next_u64() { return detail::mix64(key_ ^ detail::mix64(counter_++)); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  std::uint64_t counter() const { return counter_; }
  void seek(std::uint64_t counter) { counter_ = counter; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace dps

#endif  // DPS_RNG_HPP
