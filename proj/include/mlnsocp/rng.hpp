#pragma once

#include <cstdint>
#include <random>

namespace mlnsocp {

// splitmix64 finalizer. Used to derive substream seeds so draws for one
// entity (node, edge, trial) do not depend on traversal order.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t seed_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ (b + 0x9e3779b97f4a7c15ull));
}

// derive_seed(base, tag, ids...) -> substream seed
template <typename... Ids>
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag, Ids... ids) {
  std::uint64_t s = seed_combine(base, tag);
  ((s = seed_combine(s, static_cast<std::uint64_t>(ids))), ...);
  return s;
}

// Stream tags for the documented substream rule.
namespace stream {
inline constexpr std::uint64_t kNodePosition = 0x6e6f6465;  // node coordinates
inline constexpr std::uint64_t kEdgeKind = 0x6b696e64;      // LOS/NLOS label
inline constexpr std::uint64_t kEdgeNoise = 0x6d656173;     // measurement noise
inline constexpr std::uint64_t kTrial = 0x7472696c;         // harness trial
inline constexpr std::uint64_t kCell = 0x63656c6c;          // experiment cell
}  // namespace stream

// Seedable wrapper around std::mt19937_64 with hand-rolled samplers, so the
// generated values depend only on the engine (which the standard pins down)
// and not on the library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // uniform on (0,1), both endpoints excluded
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  // standard normal via Box-Muller; the sine branch is discarded so each
  // draw consumes exactly two engine outputs
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // exponential with the given mean (mean = 1/rate)
  double exponential(double mean);

 private:
  std::mt19937_64 engine_;
};

}  // namespace mlnsocp
