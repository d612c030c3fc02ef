#ifndef SPIRAL_ALGORITHM_H_
#define SPIRAL_ALGORITHM_H_

#include <optional>
#include <string_view>

namespace spiral {

enum class Algorithm {
  kSpiral,       // ring exchange between cluster heads
  kInCluster,    // heads report to a fusion center, which broadcasts the mean
  kCentralized,  // all observations shipped to the fusion center
};

std::string_view to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

}  // namespace spiral

#endif  // SPIRAL_ALGORITHM_H_
