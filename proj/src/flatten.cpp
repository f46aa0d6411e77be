#include "redos/flatten.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace redos {

namespace {

struct Expander {
  const Pnfa& a;
  // eps_reach[q]: Q1 states reachable from q through Q2 states only.
  std::vector<std::vector<int>> q1_reach;
  std::vector<int> emitted;  // per Q1 state, capped at 2
  std::vector<int> out;
  std::ostringstream* log = nullptr;
  int depth = 0;

  // d(q, C) with the removal of third and later occurrences fused in.
  void expand(int q, std::vector<int>& c) {
    if (!a.is_q2[q]) {
      if (log)
        *log << std::string(static_cast<size_t>(depth) * 2, ' ') << "emit q"
             << q << "\n";
      if (emitted[static_cast<size_t>(q)] < 2) {
        ++emitted[static_cast<size_t>(q)];
        out.push_back(q);
      }
      return;
    }
    bool useful = false;
    for (int p : q1_reach[static_cast<size_t>(q)])
      if (emitted[static_cast<size_t>(p)] < 2) useful = true;
    if (!useful) return;
    const auto& alts = a.delta2[q];
    int i = c[static_cast<size_t>(q)];
    if (log)
      *log << std::string(static_cast<size_t>(depth) * 2, ' ') << "d(q" << q
           << ", C=" << i << ") -> alternatives " << i + 1 << ".."
           << alts.size() << "\n";
    int saved = c[static_cast<size_t>(q)];
    ++depth;
    // The j-th alternative is expanded with C(q)=j, mirroring how the
    // counters evolve in a backtracking run.
    for (size_t j = static_cast<size_t>(i); j < alts.size(); ++j) {
      c[static_cast<size_t>(q)] = static_cast<int>(j) + 1;
      expand(alts[j], c);
    }
    --depth;
    c[static_cast<size_t>(q)] = saved;
  }
};

}  // namespace

FlattenResult flatten(const Pnfa& a, bool trace) {
  a.validate();
  const size_t n = static_cast<size_t>(a.num_states);

  // Per-state epsilon reach (through Q2 states only), and whether the
  // reach touches a final state.
  std::vector<std::vector<int>> q1_reach(n);
  std::vector<bool> reach_final(n);
  for (int q = 0; q < a.num_states; ++q) {
    std::vector<bool> seen(n);
    std::deque<int> work{q};
    seen[static_cast<size_t>(q)] = true;
    while (!work.empty()) {
      int p = work.front();
      work.pop_front();
      if (a.is_final(p)) reach_final[static_cast<size_t>(q)] = true;
      if (!a.is_q2[p]) {
        q1_reach[static_cast<size_t>(q)].push_back(p);
        continue;  // Q1 states are leaves of the expansion
      }
      for (int t : a.delta2[p])
        if (!seen[static_cast<size_t>(t)]) {
          seen[static_cast<size_t>(t)] = true;
          work.push_back(t);
        }
    }
  }

  Pnfa flat = a;
  std::ostringstream log;
  FlattenResult res;
  for (int q = 0; q < a.num_states; ++q) {
    flat.final_states[static_cast<size_t>(q)] = reach_final[static_cast<size_t>(q)];
    if (!a.is_q2[q]) continue;
    Expander e{a, q1_reach, std::vector<int>(n, 0), {},
               trace ? &log : nullptr};
    std::vector<int> c(n, 0);
    if (trace) log << "state q" << q << ":\n";
    e.expand(q, c);
    flat.delta2[static_cast<size_t>(q)] = std::move(e.out);
    if (trace) {
      std::ostringstream line;
      line << "delta2'(q" << q << ") =";
      for (int t : flat.delta2[static_cast<size_t>(q)]) line << " q" << t;
      log << line.str() << "\n";
    }
  }

  // Drop states that became unreachable.
  std::vector<int> order;
  std::map<int, int> id;
  auto visit = [&](int q) {
    if (id.emplace(q, static_cast<int>(order.size())).second)
      order.push_back(q);
  };
  visit(flat.q0);
  for (size_t i = 0; i < order.size(); ++i) {
    int q = order[i];
    for (auto& [sym, t] : flat.delta1[static_cast<size_t>(q)]) {
      (void)sym;
      visit(t);
    }
    for (int t : flat.delta2[static_cast<size_t>(q)]) visit(t);
  }

  Pnfa out;
  out.num_states = static_cast<int>(order.size());
  out.alphabet = flat.alphabet;
  out.q0 = 0;
  out.is_q2.resize(order.size());
  out.names.resize(order.size());
  out.delta1.resize(order.size());
  out.delta2.resize(order.size());
  out.final_states.resize(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    int q = order[i];
    out.is_q2[i] = flat.is_q2[static_cast<size_t>(q)];
    out.names[i] = flat.names[static_cast<size_t>(q)];
    out.final_states[i] = flat.final_states[static_cast<size_t>(q)];
    for (auto& [sym, t] : flat.delta1[static_cast<size_t>(q)])
      out.delta1[i][sym] = id.at(t);
    for (int t : flat.delta2[static_cast<size_t>(q)])
      out.delta2[i].push_back(id.at(t));
  }
  out.validate();

  res.pnfa = std::move(out);
  res.state_map.assign(n, -1);
  for (auto& [old_id, new_id] : id) res.state_map[static_cast<size_t>(old_id)] = new_id;
  if (trace) {
    std::istringstream in(log.str());
    for (std::string line; std::getline(in, line);) res.trace.push_back(line);
  }
  return res;
}

}  // namespace redos
