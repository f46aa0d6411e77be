#ifndef REDOS_TRANSDUCER_HPP
#define REDOS_TRANSDUCER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "redos/pnfa.hpp"

namespace redos {

// Marker symbols used by decorated inputs; ordinary symbols stay below 256.
inline constexpr Symbol kFlat = 256;  // padding read on epsilon steps
inline constexpr Symbol kEnd = 257;   // marks both ends of the string

// Output trees. Interior labels are pNFA states; kLabelAcc/kLabelRej from
// pnfa.hpp label the verdict leaves. While a run is in progress, leaves may
// also hold transducer states, encoded as negative labels <= kSttLeafBase.
struct OutputTree {
  struct Node {
    int label;
    std::vector<int> children;
  };
  std::vector<Node> nodes;
  int root = -1;

  std::uint64_t size() const { return nodes.size(); }
};

inline constexpr int kSttLeafBase = -3;
inline int encode_stt_leaf(int s) { return kSttLeafBase - s; }
inline bool is_stt_leaf(int label) { return label <= kSttLeafBase; }
inline int decode_stt_leaf(int label) { return kSttLeafBase - label; }

// String-to-tree transducer for a flattened pNFA. States: 0 is the start
// state; state q of the pNFA contributes an "accepting" copy a_q = 1+2q
// (the subtree must end in Acc) and a "failing" copy f_q = 2+2q.
struct Stt {
  struct Rule {
    Symbol input;
    OutputTree rhs;  // leaves may be transducer states
  };
  int num_states = 0;
  std::vector<Symbol> alphabet;  // pNFA alphabet + kFlat + kEnd
  std::vector<std::vector<Rule>> rules;  // per transducer state
};

inline int stt_accept_state(int q) { return 1 + 2 * q; }
inline int stt_fail_state(int q) { return 2 + 2 * q; }

// Requires a flattened automaton (delta2 targets in Q1 only); throws
// std::invalid_argument otherwise.
Stt build_stt(const Pnfa& flat);

// dec(a1..an) = $ (flat a_i)* $; the correct decoration.
Word decorate(const Word& w);

struct SttRunResult {
  std::vector<OutputTree> outputs;  // trees with no transducer-state leaves
  bool budget_exceeded = false;
  std::uint64_t peak_frontier_nodes = 0;
};

// Runs the transducer on a decorated word: every transducer-state leaf of a
// configuration is rewritten on each input symbol, taking all combinations
// of applicable rules, with structural deduplication. Budget bounds the
// total node count of the frontier.
SttRunResult run_stt(const Stt& stt, const Word& decorated,
                     std::uint64_t budget_nodes = 5'000'000);

// Canonical serializations for structural comparison. Positions in the
// backtracking tree are ignored so the two forms are comparable.
std::string tree_signature(const OutputTree& t);
std::string tree_signature(const BtrTree& t);

}  // namespace redos

#endif
