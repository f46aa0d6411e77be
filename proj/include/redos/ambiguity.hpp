#ifndef REDOS_AMBIGUITY_HPP
#define REDOS_AMBIGUITY_HPP

#include <map>
#include <optional>
#include <vector>

#include "redos/pnfa.hpp"

namespace redos {

// The automaton with all accepting states cleared; its backtracking runs
// are the pure failure runs.
Pnfa failure_pnfa(const Pnfa& a);

// Adds an accepting sink z with letter self-loops and an epsilon edge from
// every original state; original accepting flags are cleared. Short
// accepting runs of the result on w correspond to the nodes of the failure
// backtracking tree on w.
Nfa a_construction(const Nfa& n);

// Restriction to states reachable from the initial state. Returns the kept
// automaton; old-to-new ids in state_map (-1 = dropped).
struct TrimResult {
  Nfa nfa;
  std::vector<int> state_map;
};
TrimResult trim_reachable(const Nfa& n);

// Quotient by the strongly connected components of the epsilon subgraph.
struct SccQuotient {
  enum class Category { SingleNoLoop, SingleLoop, Multi };
  Nfa n2;                        // quotient, epsilon self-loops removed
  std::vector<int> state_class;  // original state -> class id
  std::vector<Category> category;
  std::vector<bool> in_z;        // category SingleLoop or Multi
};
SccQuotient epsilon_scc_quotient(const Nfa& n);

// Epsilon-eliminated view used by the ambiguity checks: edge and
// acceptance multiplicities count edge-distinct epsilon walks, capped at
// two (two is already enough for every conclusion drawn from them).
struct RunModel {
  int num_states = 0;
  int q0 = 0;
  std::vector<Symbol> alphabet;
  // edges[p][sym] -> target -> multiplicity in {1, 2}
  std::vector<std::map<Symbol, std::map<int, int>>> edges;
  std::vector<int> final_mult;  // 0, 1 or 2
  std::vector<bool> useful;     // reachable and co-reachable
};
RunModel build_run_model(const Nfa& n, std::uint64_t budget = 50'000'000);

// The model of the a-construction applied to a flattened failure
// automaton, built directly from the pNFA so that parallel delta2 entries
// keep their multiplicity (the set-based NFA view would erase them). With
// a large cap the accepting path counts equal btr state-node counts
// exactly.
RunModel failure_run_model(const Pnfa& flat, int cap = 2);

// Number of accepting runs of the model on w, multiplicities included;
// saturates instead of overflowing.
std::uint64_t model_path_count(const RunModel& m, const Word& w);

struct EdaWitness {
  int state;    // state (of the analyzed NFA) with two runs state->state
  Word word;    // the nonempty word both runs read
  Word prefix;  // a word taking the initial state to `state`
};

// Exponential-degree-of-ambiguity test: some useful state admits two
// distinct short runs back to itself on a common nonempty word.
bool has_eda(const Nfa& n, EdaWitness* witness = nullptr);

// Longest chain of infinite-degree-of-ambiguity pairs minus one: the
// failure backtracking degree k, with worst-case trees in Theta(n^{k+1}).
// Requires has_eda(n) == false; throws std::logic_error otherwise.
int ida_degree(const Nfa& n);

struct BacktrackClass {
  bool exponential = false;
  int degree = 0;  // meaningful when !exponential
  std::optional<EdaWitness> witness;
};

// The dichotomy for failure backtracking: flatten the failure automaton
// (which turns epsilon cycles into capped parallel transitions without
// changing the growth class), build the multiplicity model of its
// a-construction, and run the EDA/IDA analysis on it.
BacktrackClass classify_failure_backtracking(const Pnfa& a);

struct AttackStrings {
  Word prefix, pump, suffix;
  std::vector<std::uint64_t> sizes;  // measured btr sizes per pump count
};

// Derives and validates a pumpable input family from the witness: btr
// sizes must grow by >= 1.5x across >= 4 consecutive pump counts.
std::optional<AttackStrings> attack_strings(
    const BacktrackClass& cls, const Pnfa& a,
    std::uint64_t budget_nodes = kDefaultBtrBudget);

}  // namespace redos

#endif
