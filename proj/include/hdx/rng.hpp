#ifndef HDX_RNG_HPP
#define HDX_RNG_HPP

#include <cstdint>
#include <random>

namespace hdx {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// "hdx-rng-v1": mt19937_64 seeded with splitmix64(master) ^ splitmix64(stream + 1).
// Draws are derived from raw 64-bit outputs only, so sequences do not depend on
// the standard library's distribution implementations.
class Rng {
 public:
  static constexpr const char* name = "hdx-rng-v1";

  explicit Rng(std::uint64_t master, std::uint64_t stream = 0)
      : engine_(splitmix64(master) ^ splitmix64(stream + 1)) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform on [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hdx

#endif  // HDX_RNG_HPP
