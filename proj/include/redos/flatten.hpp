#ifndef REDOS_FLATTEN_HPP
#define REDOS_FLATTEN_HPP

#include <string>
#include <vector>

#include "redos/pnfa.hpp"

namespace redos {

struct FlattenResult {
  Pnfa pnfa;
  // Original state id -> id in the flattened automaton, or -1 when the
  // state became unreachable and was dropped.
  std::vector<int> state_map;
  std::vector<std::string> trace;  // d-expansion log, when requested
};

// Rewrites every delta2 right-hand side to the Q1 states its epsilon
// expansion reaches, keeping at most the first two occurrences of each
// state, and marks a state final when its expansion can reach a final
// state. Unreachable states are pruned afterwards.
FlattenResult flatten(const Pnfa& a, bool trace = false);

}  // namespace redos

#endif
