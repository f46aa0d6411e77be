#include "redos/pnfa.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <stdexcept>

namespace redos {

void Pnfa::validate() const {
  auto bad = [](const std::string& msg) { throw std::logic_error(msg); };
  size_t n = static_cast<size_t>(num_states);
  if (is_q2.size() != n || delta1.size() != n || delta2.size() != n ||
      final_states.size() != n)
    bad("pNFA: inconsistent table sizes");
  if (q0 < 0 || q0 >= num_states) bad("pNFA: initial state out of range");
  for (int q = 0; q < num_states; ++q) {
    if (is_q2[q] && !delta1[q].empty()) bad("pNFA: Q2 state with delta1");
    if (!is_q2[q] && !delta2[q].empty()) bad("pNFA: Q1 state with delta2");
    for (auto& [a, t] : delta1[q]) {
      if (t < 0 || t >= num_states) bad("pNFA: delta1 target out of range");
      if (!std::binary_search(alphabet.begin(), alphabet.end(), a))
        bad("pNFA: delta1 symbol not in alphabet");
    }
    for (int t : delta2[q])
      if (t < 0 || t >= num_states) bad("pNFA: delta2 target out of range");
  }
}

void Nfa::validate() const {
  auto bad = [](const std::string& msg) { throw std::logic_error(msg); };
  size_t n = static_cast<size_t>(num_states);
  if (delta.size() != n || eps.size() != n || final_states.size() != n)
    bad("NFA: inconsistent table sizes");
  if (q0 < 0 || q0 >= num_states) bad("NFA: initial state out of range");
  for (int q = 0; q < num_states; ++q) {
    for (auto& [a, ts] : delta[q]) {
      (void)a;
      for (int t : ts)
        if (t < 0 || t >= num_states) bad("NFA: transition out of range");
    }
    for (int t : eps[q])
      if (t < 0 || t >= num_states) bad("NFA: eps transition out of range");
  }
}

Nfa underlying_nfa(const Pnfa& a) {
  Nfa n;
  n.num_states = a.num_states;
  n.names = a.names;
  n.alphabet = a.alphabet;
  n.q0 = a.q0;
  n.delta.resize(static_cast<size_t>(a.num_states));
  n.eps.resize(static_cast<size_t>(a.num_states));
  n.final_states = a.final_states;
  for (int q = 0; q < a.num_states; ++q) {
    for (auto& [sym, t] : a.delta1[q]) n.delta[q][sym].insert(t);
    for (int t : a.delta2[q]) n.eps[q].insert(t);
  }
  return n;
}

namespace {

using Counters = std::vector<std::uint16_t>;

struct BtrFrame {
  int tree_node;
  int state;
  int pos;
  Counters counters;
  bool entered = false;
  size_t next_index = 0;  // 0-based next delta2 alternative to try
};

}  // namespace

BtrTree btr(const Pnfa& a, const Word& w, std::uint64_t budget_nodes) {
  BtrTree t;
  const int n = static_cast<int>(w.size());
  std::vector<BtrFrame> stack;

  auto new_node = [&t](int label, int pos) {
    t.nodes.push_back(BtrTree::Node{label, pos, {}});
    return static_cast<int>(t.nodes.size()) - 1;
  };

  auto push_state = [&](int state, int pos, Counters counters,
                        int parent_node) -> bool {
    if (t.state_nodes >= budget_nodes) {
      t.complete = false;
      return false;
    }
    int id = new_node(state, pos);
    ++t.state_nodes;
    if (parent_node >= 0) t.nodes[parent_node].children.push_back(id);
    stack.push_back(BtrFrame{id, state, pos, std::move(counters), false, 0});
    return true;
  };

  Counters zero(static_cast<size_t>(a.num_states), 0);
  if (!push_state(a.q0, 0, zero, -1)) return t;
  t.root = 0;

  // child_result holds the success of the subtree just popped.
  bool child_result = false;
  bool have_child_result = false;

  while (!stack.empty()) {
    BtrFrame& f = stack.back();
    const int q = f.state;

    if (!f.entered) {
      f.entered = true;
      if (a.is_final(q) && f.pos == n) {
        int leaf = new_node(kLabelAcc, f.pos);
        t.nodes[static_cast<size_t>(f.tree_node)].children.push_back(leaf);
        t.has_acc = true;
        stack.pop_back();
        child_result = true;
        have_child_result = true;
        continue;
      }
      if (!a.is_q2[q]) {
        auto it = f.pos < n ? a.delta1[q].find(w[f.pos]) : a.delta1[q].end();
        if (it == a.delta1[q].end()) {
          int leaf = new_node(kLabelRej, f.pos);
          t.nodes[static_cast<size_t>(f.tree_node)].children.push_back(leaf);
          stack.pop_back();
          child_result = false;
          have_child_result = true;
          continue;
        }
        if (!push_state(it->second, f.pos + 1, zero, f.tree_node)) break;
        continue;
      }
      // Q2 state: alternatives C(q)+1 .. k, 1-based.
      const auto& alts = a.delta2[q];
      f.next_index = f.counters[static_cast<size_t>(q)];
      if (f.next_index >= alts.size()) {
        int leaf = new_node(kLabelRej, f.pos);
        t.nodes[static_cast<size_t>(f.tree_node)].children.push_back(leaf);
        stack.pop_back();
        child_result = false;
        have_child_result = true;
        continue;
      }
      Counters c = f.counters;
      c[static_cast<size_t>(q)] = static_cast<std::uint16_t>(f.next_index + 1);
      if (!push_state(alts[f.next_index], f.pos, std::move(c), f.tree_node))
        break;
      continue;
    }

    // Resuming after a child completed.
    assert(have_child_result);
    (void)have_child_result;
    have_child_result = false;
    if (!a.is_q2[q]) {
      stack.pop_back();
      have_child_result = true;  // child_result passes through unchanged
      continue;
    }
    if (child_result) {
      stack.pop_back();
      have_child_result = true;
      continue;
    }
    const auto& alts = a.delta2[q];
    ++f.next_index;
    if (f.next_index >= alts.size()) {
      stack.pop_back();
      child_result = false;
      have_child_result = true;
      continue;
    }
    Counters c = f.counters;
    c[static_cast<size_t>(q)] = static_cast<std::uint16_t>(f.next_index + 1);
    if (!push_state(alts[f.next_index], f.pos, std::move(c), f.tree_node))
      break;
  }

  return t;
}

bool succeeds(const BtrTree& t) { return t.has_acc; }

std::optional<Run> accepting_run(const BtrTree& t, const Word& w) {
  if (!t.has_acc || t.root < 0) return std::nullopt;
  // A step that advanced the position read the symbol at the parent's
  // position.
  Run run;
  int v = t.root;
  while (true) {
    const BtrTree::Node& node = t.nodes[static_cast<size_t>(v)];
    assert(node.label >= 0 && !node.children.empty());
    run.states.push_back(node.label);
    int next = node.children.back();
    const BtrTree::Node& child = t.nodes[static_cast<size_t>(next)];
    if (child.label == kLabelAcc) break;
    run.labels.push_back(child.pos > node.pos ? w[static_cast<size_t>(node.pos)]
                                              : kEpsLabel);
    v = next;
  }
  return run;
}

namespace {

struct MatchFrame {
  int state;
  int pos;
  Counters counters;
  bool entered = false;
  size_t next_index = 0;
};

}  // namespace

MatchRunResult match_run(const Pnfa& a, const Word& w, std::uint64_t budget) {
  MatchRunResult res;
  const int n = static_cast<int>(w.size());
  std::vector<MatchFrame> stack;
  Counters zero(static_cast<size_t>(a.num_states), 0);

  auto push = [&](int state, int pos, Counters counters) -> bool {
    if (res.invocations >= budget) {
      res.budget_exceeded = true;
      return false;
    }
    ++res.invocations;
    stack.push_back(MatchFrame{state, pos, std::move(counters), false, 0});
    return true;
  };

  auto extract_run = [&]() {
    Run run;
    for (const MatchFrame& f : stack) run.states.push_back(f.state);
    for (size_t i = 0; i + 1 < stack.size(); ++i)
      run.labels.push_back(stack[i + 1].pos > stack[i].pos ? stack[i].pos
                                                           : kEpsLabel);
    // Positions recorded stand in for labels below; convert to symbols.
    for (Symbol& l : run.labels)
      if (l != kEpsLabel) l = w[static_cast<size_t>(l)];
    return run;
  };

  if (!push(a.q0, 0, zero)) return res;

  bool child_result = false;
  while (!stack.empty()) {
    MatchFrame& f = stack.back();
    const int q = f.state;
    if (!f.entered) {
      f.entered = true;
      if (a.is_final(q) && f.pos == n) {
        res.run = extract_run();
        return res;
      }
      if (!a.is_q2[q]) {
        auto it = f.pos < n ? a.delta1[q].find(w[f.pos]) : a.delta1[q].end();
        if (it == a.delta1[q].end()) {
          stack.pop_back();
          child_result = false;
          continue;
        }
        if (!push(it->second, f.pos + 1, zero)) return res;
        continue;
      }
      const auto& alts = a.delta2[q];
      f.next_index = f.counters[static_cast<size_t>(q)];
      if (f.next_index >= alts.size()) {
        stack.pop_back();
        child_result = false;
        continue;
      }
      Counters c = f.counters;
      c[static_cast<size_t>(q)] = static_cast<std::uint16_t>(f.next_index + 1);
      if (!push(alts[f.next_index], f.pos, std::move(c))) return res;
      continue;
    }
    if (!a.is_q2[q] || child_result) {
      stack.pop_back();
      continue;  // child_result passes through
    }
    const auto& alts = a.delta2[q];
    ++f.next_index;
    if (f.next_index >= alts.size()) {
      stack.pop_back();
      child_result = false;
      continue;
    }
    Counters c = f.counters;
    c[static_cast<size_t>(q)] = static_cast<std::uint16_t>(f.next_index + 1);
    if (!push(alts[f.next_index], f.pos, std::move(c))) return res;
  }
  return res;
}

namespace {

std::set<int> eps_closure(const Nfa& n, const std::set<int>& from) {
  std::set<int> out = from;
  std::deque<int> work(from.begin(), from.end());
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (int t : n.eps[static_cast<size_t>(q)])
      if (out.insert(t).second) work.push_back(t);
  }
  return out;
}

}  // namespace

bool nfa_membership(const Nfa& n, const Word& w) {
  std::set<int> cur = eps_closure(n, {n.q0});
  for (Symbol a : w) {
    std::set<int> next;
    for (int q : cur) {
      auto it = n.delta[static_cast<size_t>(q)].find(a);
      if (it != n.delta[static_cast<size_t>(q)].end())
        next.insert(it->second.begin(), it->second.end());
    }
    cur = eps_closure(n, next);
    if (cur.empty()) return false;
  }
  for (int q : cur)
    if (n.is_final(q)) return true;
  return false;
}

bool run_is_valid(const Nfa& n, const Run& run, const Word& w,
                  bool must_accept) {
  if (run.states.empty()) return false;
  if (run.labels.size() + 1 != run.states.size()) return false;
  Word spelled;
  for (size_t i = 0; i < run.labels.size(); ++i) {
    int p = run.states[i], q = run.states[i + 1];
    Symbol l = run.labels[i];
    if (l == kEpsLabel) {
      if (!n.eps[static_cast<size_t>(p)].count(q)) return false;
    } else {
      auto it = n.delta[static_cast<size_t>(p)].find(l);
      if (it == n.delta[static_cast<size_t>(p)].end() || !it->second.count(q))
        return false;
      spelled.push_back(l);
    }
  }
  if (spelled != w) return false;
  if (must_accept &&
      (run.states.front() != n.q0 || !n.is_final(run.states.back())))
    return false;
  return true;
}

namespace {

struct ShortRunSearch {
  const Nfa& n;
  const Word& w;
  std::uint64_t budget;
  std::uint64_t steps = 0;
  bool exceeded = false;
  std::uint64_t count = 0;
  std::set<std::pair<int, int>> used;  // eps edges taken in the current block

  void rec(int q, size_t pos) {
    if (exceeded) return;
    if (++steps > budget) {
      exceeded = true;
      return;
    }
    if (pos == w.size() && n.is_final(q)) ++count;
    for (int t : n.eps[static_cast<size_t>(q)]) {
      auto edge = std::make_pair(q, t);
      if (used.count(edge)) continue;
      used.insert(edge);
      rec(t, pos);
      used.erase(edge);
    }
    if (pos < w.size()) {
      auto it = n.delta[static_cast<size_t>(q)].find(w[pos]);
      if (it != n.delta[static_cast<size_t>(q)].end()) {
        std::set<std::pair<int, int>> saved;
        saved.swap(used);
        for (int t : it->second) rec(t, pos + 1);
        used.swap(saved);
      }
    }
  }
};

}  // namespace

ShortRunCount count_short_accepting_runs(const Nfa& n, const Word& w,
                                         std::uint64_t budget) {
  ShortRunSearch s{n, w, budget, 0, false, 0, {}};
  s.rec(n.q0, 0);
  return ShortRunCount{s.count, s.exceeded};
}

}  // namespace redos
