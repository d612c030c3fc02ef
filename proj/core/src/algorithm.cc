#include "spiral/algorithm.h"

namespace spiral {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kSpiral:
      return "spiral";
    case Algorithm::kInCluster:
      return "incluster";
    case Algorithm::kCentralized:
      return "centralized";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "spiral") return Algorithm::kSpiral;
  if (name == "incluster") return Algorithm::kInCluster;
  if (name == "centralized") return Algorithm::kCentralized;
  return std::nullopt;
}

}  // namespace spiral
