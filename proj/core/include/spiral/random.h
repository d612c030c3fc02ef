#ifndef SPIRAL_RANDOM_H_
#define SPIRAL_RANDOM_H_

#include <cstdint>
#include <random>

namespace spiral {

using Rng = std::mt19937_64;

// Independent streams derived from one experiment seed, so changing how many
// draws one stage makes never shifts another stage's numbers.
enum class RngStream : std::uint32_t {
  kPlacement = 1,
  kObservations = 2,
  kProbePoints = 3,
};

inline Rng make_rng(std::uint64_t seed, RngStream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

}  // namespace spiral

#endif  // SPIRAL_RANDOM_H_
