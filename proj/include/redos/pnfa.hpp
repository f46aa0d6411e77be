#ifndef REDOS_PNFA_HPP
#define REDOS_PNFA_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "redos/ast.hpp"

namespace redos {

// Prioritized NFA. States are dense ids 0..num_states-1 with a partition
// tag: Q1 states carry the deterministic symbol transitions (delta1), Q2
// states carry an ordered sequence of epsilon successors (delta2).
struct Pnfa {
  int num_states = 0;
  std::vector<bool> is_q2;
  std::vector<std::string> names;            // for DOT/JSON output
  std::vector<Symbol> alphabet;              // sorted
  int q0 = 0;
  std::vector<std::map<Symbol, int>> delta1; // used only for Q1 states
  std::vector<std::vector<int>> delta2;      // used only for Q2 states
  std::vector<bool> final_states;

  bool is_final(int q) const { return final_states[static_cast<size_t>(q)]; }
  // Throws std::logic_error when the structural invariants are violated.
  void validate() const;
};

// Plain NFA with epsilon transitions.
struct Nfa {
  int num_states = 0;
  std::vector<std::string> names;
  std::vector<Symbol> alphabet;
  int q0 = 0;
  std::vector<std::map<Symbol, std::set<int>>> delta;  // symbol moves
  std::vector<std::set<int>> eps;                      // epsilon moves
  std::vector<bool> final_states;

  bool is_final(int q) const { return final_states[static_cast<size_t>(q)]; }
  void validate() const;
};

// Priorities erased; duplicate delta2 targets collapse into a set.
Nfa underlying_nfa(const Pnfa& a);

// Backtracking-run tree. Labels are state ids, or Acc/Rej at leaves.
inline constexpr int kLabelAcc = -1;
inline constexpr int kLabelRej = -2;

struct BtrTree {
  struct Node {
    int label;                  // state id, kLabelAcc or kLabelRej
    int pos;                    // input position when the node was created
    std::vector<int> children;  // ids into `nodes`, in priority order
  };
  std::vector<Node> nodes;
  int root = -1;
  bool complete = true;          // false when the node budget was exhausted
  bool has_acc = false;
  std::uint64_t state_nodes = 0; // nodes labeled by states (the cost model)

  std::uint64_t total_nodes() const { return nodes.size(); }
};

inline constexpr std::uint64_t kDefaultBtrBudget = 2'000'000;

// The backtracking run btr_A(q0, w, 0^{Q2}), built iteratively. Sibling
// construction stops at the first succeeding child; a Q2 node's children
// start at priority index C(q)+1. On budget exhaustion the partial tree is
// returned with complete=false.
BtrTree btr(const Pnfa& a, const Word& w,
            std::uint64_t budget_nodes = kDefaultBtrBudget);

bool succeeds(const BtrTree& t);

struct Run {
  std::vector<int> states;   // p_1 ... p_{m+1}
  std::vector<Symbol> labels;  // one per step; kEpsLabel for epsilon steps
};
inline constexpr Symbol kEpsLabel = -1;

// The rightmost root-to-Acc path with Acc stripped, or nullopt.
std::optional<Run> accepting_run(const BtrTree& t, const Word& w);

struct MatchRunResult {
  std::optional<Run> run;
  std::uint64_t invocations = 0;  // equals btr(...).state_nodes by convention
  bool budget_exceeded = false;
};

// The deterministic backtracking matcher: finds the accepting run if one
// exists, counting one invocation per visited state.
MatchRunResult match_run(const Pnfa& a, const Word& w,
                         std::uint64_t budget = kDefaultBtrBudget);

// Subset simulation with epsilon closure; exact membership.
bool nfa_membership(const Nfa& n, const Word& w);

// Checks that run.states/run.labels walk declared transitions of n and
// spell w; used to validate accepting runs.
bool run_is_valid(const Nfa& n, const Run& run, const Word& w,
                  bool must_accept);

struct ShortRunCount {
  std::uint64_t count = 0;
  bool budget_exceeded = false;
};

// Number of accepting runs on w in which no epsilon transition repeats
// within a maximal epsilon block. Exponential-time enumeration; oracle use
// only.
ShortRunCount count_short_accepting_runs(const Nfa& n, const Word& w,
                                         std::uint64_t budget = 50'000'000);

}  // namespace redos

#endif
