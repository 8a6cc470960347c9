#pragma once

#include <cmath>
#include <cstdint>

namespace nstable {

// Counter-based splittable PRNG built on the splitmix64 finalizer
// (Vigna's mixer, the same construction used to seed xoshiro).
//
// Every output is a pure function of (key, counter), so a stream can be
// handed to any thread and still reproduces bit-identically.  Sub-streams
// derived with stream(id) are keyed independently; the toolkit derives
// them hierarchically as master -> experiment -> replica -> role.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : key_(mix64(seed + kGolden)) {}

  // Derived stream: statistically independent of the parent and of
  // siblings with different ids.
  SplitRng stream(std::uint64_t id) const {
    return SplitRng(key_ ^ mix64((id + 1) * kStreamSalt));
  }

  std::uint64_t next_u64() {
    counter_ += kGolden;
    return mix64(counter_ ^ key_);
  }

  // Uniform on the open interval (0,1); safe to pass to log().
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential() { return -std::log(uniform()); }

  // Box-Muller without caching: draw count per call is fixed, which keeps
  // replica streams reproducible regardless of call interleaving.
  double normal() {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double t = 6.283185307179586476925287 * uniform();
    return r * std::cos(t);
  }

  double cauchy() {
    return std::tan(3.14159265358979323846 * (uniform() - 0.5));
  }

  static std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace nstable
