#include "redos/ambiguity.hpp"

#include "redos/flatten.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace redos {

namespace {

// Iterative Tarjan. Fills comp with component ids and returns their count.
int tarjan_scc(const std::vector<std::vector<int>>& adj,
               std::vector<int>& comp) {
  int n = static_cast<int>(adj.size());
  comp.assign(static_cast<size_t>(n), -1);
  std::vector<int> low(static_cast<size_t>(n), 0);
  std::vector<int> num(static_cast<size_t>(n), -1);
  std::vector<int> stk;
  std::vector<bool> on(static_cast<size_t>(n), false);
  int idx = 0, ncomp = 0;
  struct Frame {
    int v;
    size_t ci;
  };
  for (int s = 0; s < n; ++s) {
    if (num[static_cast<size_t>(s)] != -1) continue;
    std::vector<Frame> call{{s, 0}};
    while (!call.empty()) {
      Frame& f = call.back();
      int v = f.v;
      if (f.ci == 0) {
        num[static_cast<size_t>(v)] = low[static_cast<size_t>(v)] = idx++;
        stk.push_back(v);
        on[static_cast<size_t>(v)] = true;
      }
      bool descended = false;
      const std::vector<int>& out = adj[static_cast<size_t>(v)];
      while (f.ci < out.size()) {
        int w = out[f.ci++];
        if (num[static_cast<size_t>(w)] == -1) {
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on[static_cast<size_t>(w)])
          low[static_cast<size_t>(v)] =
              std::min(low[static_cast<size_t>(v)], num[static_cast<size_t>(w)]);
      }
      if (descended) continue;
      if (low[static_cast<size_t>(v)] == num[static_cast<size_t>(v)]) {
        while (true) {
          int w = stk.back();
          stk.pop_back();
          on[static_cast<size_t>(w)] = false;
          comp[static_cast<size_t>(w)] = ncomp;
          if (w == v) break;
        }
        ++ncomp;
      }
      call.pop_back();
      if (!call.empty()) {
        int p = call.back().v;
        low[static_cast<size_t>(p)] =
            std::min(low[static_cast<size_t>(p)], low[static_cast<size_t>(v)]);
      }
    }
  }
  return ncomp;
}

// Number of edge-distinct epsilon walks from p to every state, capped at
// two. The empty walk from p to itself counts.
std::vector<int> eps_walk_counts(const Nfa& n, int p, std::uint64_t& steps,
                                 std::uint64_t budget) {
  const size_t ns = static_cast<size_t>(n.num_states);
  std::vector<char> reach(ns, 0);
  {
    std::deque<int> work{p};
    reach[static_cast<size_t>(p)] = 1;
    while (!work.empty()) {
      int q = work.front();
      work.pop_front();
      for (int t : n.eps[static_cast<size_t>(q)])
        if (!reach[static_cast<size_t>(t)]) {
          reach[static_cast<size_t>(t)] = 1;
          work.push_back(t);
        }
    }
  }
  int remaining = static_cast<int>(std::count(reach.begin(), reach.end(), 1));
  std::vector<int> count(ns, 0);
  std::set<std::pair<int, int>> used;
  bool done = false;
  std::function<void(int)> dfs = [&](int cur) {
    if (done) return;
    if (++steps > budget)
      throw std::runtime_error("ambiguity analysis: epsilon walk budget exceeded");
    if (count[static_cast<size_t>(cur)] < 2 &&
        ++count[static_cast<size_t>(cur)] == 2 && --remaining == 0)
      done = true;
    for (int t : n.eps[static_cast<size_t>(cur)]) {
      if (done) return;
      std::pair<int, int> e{cur, t};
      if (used.count(e)) continue;
      used.insert(e);
      dfs(t);
      used.erase(e);
    }
  };
  dfs(p);
  return count;
}

// BFS over model edges restricted to useful states; shortest word src->dst.
std::optional<Word> model_word(const RunModel& m, int src, int dst) {
  if (!m.useful[static_cast<size_t>(src)] ||
      !m.useful[static_cast<size_t>(dst)])
    return std::nullopt;
  if (src == dst) return Word{};
  std::vector<int> par(static_cast<size_t>(m.num_states), -2);
  std::vector<Symbol> via(static_cast<size_t>(m.num_states), 0);
  par[static_cast<size_t>(src)] = -1;
  std::deque<int> work{src};
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (const auto& [sym, tgts] : m.edges[static_cast<size_t>(q)])
      for (const auto& [t, c] : tgts) {
        (void)c;
        if (!m.useful[static_cast<size_t>(t)] ||
            par[static_cast<size_t>(t)] != -2)
          continue;
        par[static_cast<size_t>(t)] = q;
        via[static_cast<size_t>(t)] = sym;
        if (t == dst) {
          Word w;
          for (int x = dst; x != src; x = par[static_cast<size_t>(x)])
            w.push_back(via[static_cast<size_t>(x)]);
          std::reverse(w.begin(), w.end());
          return w;
        }
        work.push_back(t);
      }
  }
  return std::nullopt;
}

// Reflexive-transitive reachability over model edges among useful states.
std::vector<std::vector<char>> model_reach(const RunModel& m) {
  const size_t ns = static_cast<size_t>(m.num_states);
  std::vector<std::vector<char>> reach(ns, std::vector<char>(ns, 0));
  for (int p = 0; p < m.num_states; ++p) {
    if (!m.useful[static_cast<size_t>(p)]) continue;
    std::deque<int> work{p};
    reach[static_cast<size_t>(p)][static_cast<size_t>(p)] = 1;
    while (!work.empty()) {
      int q = work.front();
      work.pop_front();
      for (const auto& [sym, tgts] : m.edges[static_cast<size_t>(q)]) {
        (void)sym;
        for (const auto& [t, c] : tgts) {
          (void)c;
          if (!m.useful[static_cast<size_t>(t)] ||
              reach[static_cast<size_t>(p)][static_cast<size_t>(t)])
            continue;
          reach[static_cast<size_t>(p)][static_cast<size_t>(t)] = 1;
          work.push_back(t);
        }
      }
    }
  }
  return reach;
}

}  // namespace

Pnfa failure_pnfa(const Pnfa& a) {
  Pnfa f = a;
  f.final_states.assign(f.final_states.size(), false);
  return f;
}

Nfa a_construction(const Nfa& n) {
  Nfa out = n;
  int z = out.num_states++;
  out.names.push_back("z");
  out.delta.emplace_back();
  out.eps.emplace_back();
  out.final_states.assign(out.final_states.size(), false);
  out.final_states.push_back(true);
  for (int q = 0; q < z; ++q) out.eps[static_cast<size_t>(q)].insert(z);
  for (Symbol s : out.alphabet) out.delta[static_cast<size_t>(z)][s].insert(z);
  out.validate();
  return out;
}

TrimResult trim_reachable(const Nfa& n) {
  std::vector<int> map(static_cast<size_t>(n.num_states), -1);
  std::vector<int> order;
  std::deque<int> work{n.q0};
  map[static_cast<size_t>(n.q0)] = 0;
  order.push_back(n.q0);
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    auto visit = [&](int t) {
      if (map[static_cast<size_t>(t)] != -1) return;
      map[static_cast<size_t>(t)] = static_cast<int>(order.size());
      order.push_back(t);
      work.push_back(t);
    };
    for (const auto& [sym, ts] : n.delta[static_cast<size_t>(q)]) {
      (void)sym;
      for (int t : ts) visit(t);
    }
    for (int t : n.eps[static_cast<size_t>(q)]) visit(t);
  }
  TrimResult res;
  res.state_map = std::move(map);
  Nfa& out = res.nfa;
  out.num_states = static_cast<int>(order.size());
  out.alphabet = n.alphabet;
  out.q0 = 0;
  out.names.resize(order.size());
  out.delta.resize(order.size());
  out.eps.resize(order.size());
  out.final_states.resize(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    int q = order[i];
    out.names[i] = n.names[static_cast<size_t>(q)];
    out.final_states[i] = n.final_states[static_cast<size_t>(q)];
    for (const auto& [sym, ts] : n.delta[static_cast<size_t>(q)])
      for (int t : ts)
        out.delta[i][sym].insert(res.state_map[static_cast<size_t>(t)]);
    for (int t : n.eps[static_cast<size_t>(q)])
      out.eps[i].insert(res.state_map[static_cast<size_t>(t)]);
  }
  out.validate();
  return res;
}

SccQuotient epsilon_scc_quotient(const Nfa& n) {
  const size_t ns = static_cast<size_t>(n.num_states);
  std::vector<std::vector<int>> adj(ns);
  for (int q = 0; q < n.num_states; ++q)
    adj[static_cast<size_t>(q)].assign(n.eps[static_cast<size_t>(q)].begin(),
                                       n.eps[static_cast<size_t>(q)].end());
  SccQuotient out;
  int ncomp = tarjan_scc(adj, out.state_class);

  std::vector<int> size(static_cast<size_t>(ncomp), 0);
  for (size_t q = 0; q < ns; ++q) ++size[static_cast<size_t>(out.state_class[q])];

  Nfa& q2 = out.n2;
  q2.num_states = ncomp;
  q2.alphabet = n.alphabet;
  q2.q0 = out.state_class[static_cast<size_t>(n.q0)];
  q2.names.assign(static_cast<size_t>(ncomp), "");
  q2.delta.resize(static_cast<size_t>(ncomp));
  q2.eps.resize(static_cast<size_t>(ncomp));
  q2.final_states.assign(static_cast<size_t>(ncomp), false);
  out.category.assign(static_cast<size_t>(ncomp),
                      SccQuotient::Category::SingleNoLoop);
  out.in_z.assign(static_cast<size_t>(ncomp), false);

  for (int q = 0; q < n.num_states; ++q) {
    int c = out.state_class[static_cast<size_t>(q)];
    std::string& name = q2.names[static_cast<size_t>(c)];
    if (!name.empty()) name += "+";
    name += n.names[static_cast<size_t>(q)];
    if (n.is_final(q)) q2.final_states[static_cast<size_t>(c)] = true;
    for (const auto& [sym, ts] : n.delta[static_cast<size_t>(q)])
      for (int t : ts)
        q2.delta[static_cast<size_t>(c)][sym].insert(
            out.state_class[static_cast<size_t>(t)]);
    for (int t : n.eps[static_cast<size_t>(q)]) {
      int d = out.state_class[static_cast<size_t>(t)];
      if (d != c) q2.eps[static_cast<size_t>(c)].insert(d);
    }
    if (size[static_cast<size_t>(c)] > 1)
      out.category[static_cast<size_t>(c)] = SccQuotient::Category::Multi;
    else if (n.eps[static_cast<size_t>(q)].count(q))
      out.category[static_cast<size_t>(c)] = SccQuotient::Category::SingleLoop;
  }
  for (int c = 0; c < ncomp; ++c)
    out.in_z[static_cast<size_t>(c)] =
        out.category[static_cast<size_t>(c)] !=
        SccQuotient::Category::SingleNoLoop;
  q2.validate();
  return out;
}

namespace {

// Reachable-and-co-reachable marking over model edges.
void finish_run_model(RunModel& m) {
  const size_t ns = static_cast<size_t>(m.num_states);
  std::vector<char> fwd(ns, 0), bwd(ns, 0);
  {
    std::deque<int> work{m.q0};
    fwd[static_cast<size_t>(m.q0)] = 1;
    while (!work.empty()) {
      int q = work.front();
      work.pop_front();
      for (const auto& [sym, ts] : m.edges[static_cast<size_t>(q)]) {
        (void)sym;
        for (const auto& [t, c] : ts) {
          (void)c;
          if (!fwd[static_cast<size_t>(t)]) {
            fwd[static_cast<size_t>(t)] = 1;
            work.push_back(t);
          }
        }
      }
    }
  }
  {
    std::vector<std::vector<int>> rev(ns);
    std::deque<int> work;
    for (int q = 0; q < m.num_states; ++q) {
      for (const auto& [sym, ts] : m.edges[static_cast<size_t>(q)]) {
        (void)sym;
        for (const auto& [t, c] : ts) {
          (void)c;
          rev[static_cast<size_t>(t)].push_back(q);
        }
      }
      if (m.final_mult[static_cast<size_t>(q)] > 0) {
        bwd[static_cast<size_t>(q)] = 1;
        work.push_back(q);
      }
    }
    while (!work.empty()) {
      int q = work.front();
      work.pop_front();
      for (int s : rev[static_cast<size_t>(q)])
        if (!bwd[static_cast<size_t>(s)]) {
          bwd[static_cast<size_t>(s)] = 1;
          work.push_back(s);
        }
    }
  }
  m.useful.resize(ns);
  for (size_t q = 0; q < ns; ++q) m.useful[q] = fwd[q] && bwd[q];
}

}  // namespace

RunModel build_run_model(const Nfa& n, std::uint64_t budget) {
  RunModel m;
  m.num_states = n.num_states;
  m.q0 = n.q0;
  m.alphabet = n.alphabet;
  m.edges.resize(static_cast<size_t>(n.num_states));
  m.final_mult.assign(static_cast<size_t>(n.num_states), 0);
  std::uint64_t steps = 0;
  for (int p = 0; p < n.num_states; ++p) {
    std::vector<int> wc = eps_walk_counts(n, p, steps, budget);
    int fm = 0;
    for (int r = 0; r < n.num_states; ++r) {
      int c = wc[static_cast<size_t>(r)];
      if (!c) continue;
      if (n.is_final(r)) fm = std::min(2, fm + c);
      for (const auto& [sym, ts] : n.delta[static_cast<size_t>(r)])
        for (int t : ts) {
          int& e = m.edges[static_cast<size_t>(p)][sym][t];
          e = std::min(2, e + c);
        }
    }
    m.final_mult[static_cast<size_t>(p)] = fm;
  }
  finish_run_model(m);
  return m;
}

RunModel failure_run_model(const Pnfa& flat, int cap) {
  flat.validate();
  for (int q = 0; q < flat.num_states; ++q)
    for (int t : flat.delta2[static_cast<size_t>(q)])
      if (flat.is_q2[t])
        throw std::invalid_argument(
            "failure_run_model needs a flattened automaton");

  RunModel m;
  const int z = flat.num_states;
  m.num_states = z + 1;
  m.q0 = flat.q0;
  m.alphabet = flat.alphabet;
  m.edges.resize(static_cast<size_t>(m.num_states));
  m.final_mult.assign(static_cast<size_t>(m.num_states), 0);
  auto bump = [cap](int& e, int c) { e = std::min(cap, e + c); };

  for (int p = 0; p < z; ++p) {
    // Epsilon walk multiplicities: the empty walk, one step along each
    // delta2 occurrence, and from every endpoint the jump to z.
    std::map<int, int> wc;
    wc[p] = 1;
    if (flat.is_q2[p])
      for (int t : flat.delta2[static_cast<size_t>(p)]) bump(wc[t], 1);
    int zwalks = 0;
    for (const auto& [r, c] : wc) {
      bump(zwalks, c);
      if (!flat.is_q2[r])
        for (const auto& [sym, t] : flat.delta1[static_cast<size_t>(r)])
          bump(m.edges[static_cast<size_t>(p)][sym][t], c);
    }
    for (Symbol sym : flat.alphabet)
      bump(m.edges[static_cast<size_t>(p)][sym][z], zwalks);
    m.final_mult[static_cast<size_t>(p)] = zwalks;
  }
  for (Symbol sym : flat.alphabet)
    m.edges[static_cast<size_t>(z)][sym][z] = 1;
  m.final_mult[static_cast<size_t>(z)] = 1;
  finish_run_model(m);
  return m;
}

std::uint64_t model_path_count(const RunModel& m, const Word& w) {
  constexpr std::uint64_t kMax = ~std::uint64_t{0};
  auto sat_add = [](std::uint64_t a, std::uint64_t b) {
    return a > kMax - b ? kMax : a + b;
  };
  std::vector<std::uint64_t> cnt(static_cast<size_t>(m.num_states), 0);
  cnt[static_cast<size_t>(m.q0)] = 1;
  for (Symbol sym : w) {
    std::vector<std::uint64_t> next(static_cast<size_t>(m.num_states), 0);
    for (int p = 0; p < m.num_states; ++p) {
      if (!cnt[static_cast<size_t>(p)]) continue;
      auto it = m.edges[static_cast<size_t>(p)].find(sym);
      if (it == m.edges[static_cast<size_t>(p)].end()) continue;
      for (const auto& [t, c] : it->second) {
        std::uint64_t add = cnt[static_cast<size_t>(p)];
        std::uint64_t mul = static_cast<std::uint64_t>(c);
        std::uint64_t prod = add > kMax / mul ? kMax : add * mul;
        next[static_cast<size_t>(t)] = sat_add(next[static_cast<size_t>(t)], prod);
      }
    }
    cnt = std::move(next);
  }
  std::uint64_t total = 0;
  for (int p = 0; p < m.num_states; ++p) {
    std::uint64_t mul = static_cast<std::uint64_t>(m.final_mult[static_cast<size_t>(p)]);
    if (!mul || !cnt[static_cast<size_t>(p)]) continue;
    std::uint64_t prod =
        cnt[static_cast<size_t>(p)] > kMax / mul ? kMax : cnt[static_cast<size_t>(p)] * mul;
    total = sat_add(total, prod);
  }
  return total;
}

namespace {

bool eda_core(const RunModel& m, EdaWitness* witness) {
  if (!m.useful[static_cast<size_t>(m.q0)]) return false;
  std::vector<std::vector<char>> reach = model_reach(m);

  auto fill = [&](int p, Word word) {
    if (!witness) return;
    witness->state = p;
    witness->word = std::move(word);
    witness->prefix = model_word(m, m.q0, p).value_or(Word{});
  };

  // A doubled edge on a cycle: both copies pump.
  for (int p = 0; p < m.num_states; ++p) {
    if (!m.useful[static_cast<size_t>(p)]) continue;
    for (const auto& [sym, ts] : m.edges[static_cast<size_t>(p)])
      for (const auto& [t, c] : ts) {
        if (c < 2 || !m.useful[static_cast<size_t>(t)]) continue;
        if (!reach[static_cast<size_t>(t)][static_cast<size_t>(p)]) continue;
        Word w{sym};
        Word back = model_word(m, t, p).value_or(Word{});
        w.insert(w.end(), back.begin(), back.end());
        fill(p, std::move(w));
        return true;
      }
  }

  // Two state-distinct runs around a cycle: a strongly connected component
  // of the synchronized pair graph holding both a diagonal and an
  // off-diagonal node.
  std::vector<int> states;
  std::vector<int> index(static_cast<size_t>(m.num_states), -1);
  for (int q = 0; q < m.num_states; ++q)
    if (m.useful[static_cast<size_t>(q)]) {
      index[static_cast<size_t>(q)] = static_cast<int>(states.size());
      states.push_back(q);
    }
  const int k = static_cast<int>(states.size());
  auto pid = [&](int u, int v) {
    return index[static_cast<size_t>(u)] * k + index[static_cast<size_t>(v)];
  };
  std::vector<std::vector<int>> padj(static_cast<size_t>(k) * static_cast<size_t>(k));
  for (int u : states)
    for (int v : states) {
      std::vector<int>& out = padj[static_cast<size_t>(pid(u, v))];
      const auto& eu = m.edges[static_cast<size_t>(u)];
      const auto& ev = m.edges[static_cast<size_t>(v)];
      for (const auto& [sym, tu] : eu) {
        auto it = ev.find(sym);
        if (it == ev.end()) continue;
        for (const auto& [a, ca] : tu) {
          (void)ca;
          if (!m.useful[static_cast<size_t>(a)]) continue;
          for (const auto& [b, cb] : it->second) {
            (void)cb;
            if (m.useful[static_cast<size_t>(b)]) out.push_back(pid(a, b));
          }
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
  std::vector<int> comp;
  int ncomp = tarjan_scc(padj, comp);
  std::vector<int> diag(static_cast<size_t>(ncomp), -1);
  std::vector<std::pair<int, int>> off(static_cast<size_t>(ncomp), {-1, -1});
  for (int u : states)
    for (int v : states) {
      int c = comp[static_cast<size_t>(pid(u, v))];
      if (u == v)
        diag[static_cast<size_t>(c)] = u;
      else
        off[static_cast<size_t>(c)] = {u, v};
    }
  for (int c = 0; c < ncomp; ++c) {
    int p = diag[static_cast<size_t>(c)];
    auto [r, s] = off[static_cast<size_t>(c)];
    if (p < 0 || r < 0) continue;
    if (witness) {
      // Word: (p,p) -> (r,s) -> (p,p) in the pair graph; both components
      // spell the same word, read it off the BFS parents.
      auto bfs_word = [&](int src, int dst) -> Word {
        std::vector<int> par(padj.size(), -2);
        std::vector<Symbol> via(padj.size(), 0);
        std::deque<int> work{src};
        par[static_cast<size_t>(src)] = -1;
        while (!work.empty()) {
          int cur = work.front();
          work.pop_front();
          int cu = states[static_cast<size_t>(cur / k)];
          int cv = states[static_cast<size_t>(cur % k)];
          const auto& eu = m.edges[static_cast<size_t>(cu)];
          const auto& ev = m.edges[static_cast<size_t>(cv)];
          for (const auto& [sym, tu] : eu) {
            auto it = ev.find(sym);
            if (it == ev.end()) continue;
            for (const auto& [a, ca] : tu) {
              (void)ca;
              if (!m.useful[static_cast<size_t>(a)]) continue;
              for (const auto& [b, cb] : it->second) {
                (void)cb;
                if (!m.useful[static_cast<size_t>(b)]) continue;
                int node = pid(a, b);
                if (node != src && par[static_cast<size_t>(node)] != -2)
                  continue;
                if (node == src && par[static_cast<size_t>(node)] != -1)
                  continue;
                if (node == dst && node != src) {
                  Word w{sym};
                  for (int x = cur; x != src; x = par[static_cast<size_t>(x)])
                    w.push_back(via[static_cast<size_t>(x)]);
                  std::reverse(w.begin(), w.end());
                  return w;
                }
                if (node != src) {
                  par[static_cast<size_t>(node)] = cur;
                  via[static_cast<size_t>(node)] = sym;
                  work.push_back(node);
                }
              }
            }
          }
        }
        return {};
      };
      Word w1 = bfs_word(pid(p, p), pid(r, s));
      Word w2 = bfs_word(pid(r, s), pid(p, p));
      w1.insert(w1.end(), w2.begin(), w2.end());
      fill(p, std::move(w1));
    }
    return true;
  }
  return false;
}

bool triple_reach(const RunModel& m, int p, int q) {
  const long long N = m.num_states;
  auto id = [N](int x, int y, int z) {
    return (static_cast<long long>(x) * N + y) * N + z;
  };
  std::unordered_set<long long> seen;
  std::deque<std::array<int, 3>> work{{p, p, q}};
  long long target = id(p, q, q);
  while (!work.empty()) {
    auto [x, y, z] = work.front();
    work.pop_front();
    const auto& ex = m.edges[static_cast<size_t>(x)];
    const auto& ey = m.edges[static_cast<size_t>(y)];
    const auto& ez = m.edges[static_cast<size_t>(z)];
    for (const auto& [sym, tx] : ex) {
      auto iy = ey.find(sym);
      auto iz = ez.find(sym);
      if (iy == ey.end() || iz == ez.end()) continue;
      for (const auto& [a, ca] : tx) {
        (void)ca;
        if (!m.useful[static_cast<size_t>(a)]) continue;
        for (const auto& [b, cb] : iy->second) {
          (void)cb;
          if (!m.useful[static_cast<size_t>(b)]) continue;
          for (const auto& [c, cc] : iz->second) {
            (void)cc;
            if (!m.useful[static_cast<size_t>(c)]) continue;
            long long node = id(a, b, c);
            if (node == target) return true;
            if (seen.insert(node).second) work.push_back({a, b, c});
          }
        }
      }
    }
  }
  return false;
}

int ida_core(const RunModel& m) {
  std::vector<std::vector<char>> reach = model_reach(m);

  // States lying on a symbol-consuming cycle of the model.
  std::vector<std::vector<int>> adj(static_cast<size_t>(m.num_states));
  for (int q = 0; q < m.num_states; ++q) {
    if (!m.useful[static_cast<size_t>(q)]) continue;
    for (const auto& [sym, ts] : m.edges[static_cast<size_t>(q)]) {
      (void)sym;
      for (const auto& [t, c] : ts) {
        (void)c;
        if (m.useful[static_cast<size_t>(t)])
          adj[static_cast<size_t>(q)].push_back(t);
      }
    }
    std::sort(adj[static_cast<size_t>(q)].begin(), adj[static_cast<size_t>(q)].end());
    adj[static_cast<size_t>(q)].erase(
        std::unique(adj[static_cast<size_t>(q)].begin(),
                    adj[static_cast<size_t>(q)].end()),
        adj[static_cast<size_t>(q)].end());
  }
  std::vector<int> comp;
  int ncomp = tarjan_scc(adj, comp);
  std::vector<int> comp_size(static_cast<size_t>(ncomp), 0);
  for (int q = 0; q < m.num_states; ++q) ++comp_size[static_cast<size_t>(comp[static_cast<size_t>(q)])];
  std::vector<bool> on_cycle(static_cast<size_t>(m.num_states), false);
  for (int q = 0; q < m.num_states; ++q) {
    if (!m.useful[static_cast<size_t>(q)]) continue;
    if (comp_size[static_cast<size_t>(comp[static_cast<size_t>(q)])] > 1)
      on_cycle[static_cast<size_t>(q)] = true;
    else
      for (int t : adj[static_cast<size_t>(q)])
        if (t == q) on_cycle[static_cast<size_t>(q)] = true;
  }

  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < m.num_states; ++p) {
    if (!on_cycle[static_cast<size_t>(p)]) continue;
    for (int q = 0; q < m.num_states; ++q) {
      if (q == p || !on_cycle[static_cast<size_t>(q)]) continue;
      if (!reach[static_cast<size_t>(p)][static_cast<size_t>(q)]) continue;
      if (triple_reach(m, p, q)) pairs.emplace_back(p, q);
    }
  }

  // Longest chain of pairs; chaining when the second state of one pair
  // reaches the first state of the next.
  const int np = static_cast<int>(pairs.size());
  std::vector<std::vector<int>> chain(static_cast<size_t>(np));
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) {
      if (i == j) continue;
      if (reach[static_cast<size_t>(pairs[static_cast<size_t>(i)].second)]
               [static_cast<size_t>(pairs[static_cast<size_t>(j)].first)])
        chain[static_cast<size_t>(i)].push_back(j);
    }
  std::vector<int> depth(static_cast<size_t>(np), 0);  // 0 unknown
  std::vector<int> color(static_cast<size_t>(np), 0);
  std::function<int(int)> longest = [&](int i) -> int {
    if (color[static_cast<size_t>(i)] == 1)
      throw std::logic_error("cyclic pair chain without EDA");
    if (color[static_cast<size_t>(i)] == 2) return depth[static_cast<size_t>(i)];
    color[static_cast<size_t>(i)] = 1;
    int best = 1;
    for (int j : chain[static_cast<size_t>(i)])
      best = std::max(best, 1 + longest(j));
    color[static_cast<size_t>(i)] = 2;
    depth[static_cast<size_t>(i)] = best;
    return best;
  };
  int best = 0;
  for (int i = 0; i < np; ++i) best = std::max(best, longest(i));
  return best > 0 ? best - 1 : 0;
}

}  // namespace

bool has_eda(const Nfa& n, EdaWitness* witness) {
  return eda_core(build_run_model(n), witness);
}

int ida_degree(const Nfa& n) {
  RunModel m = build_run_model(n);
  if (eda_core(m, nullptr))
    throw std::logic_error("ida_degree called on an automaton with EDA");
  return ida_core(m);
}

BacktrackClass classify_failure_backtracking(const Pnfa& a) {
  // Flattening turns epsilon cycles into at most two parallel copies per
  // target, which is exactly what the counter-limited backtracking run
  // sees; the set-based NFA view would erase those copies, so the model is
  // built from the flattened automaton directly.
  Pnfa flat = flatten(failure_pnfa(a)).pnfa;
  RunModel m = failure_run_model(flat);

  BacktrackClass res;
  EdaWitness w;
  if (eda_core(m, &w)) {
    res.exponential = true;
    res.witness = std::move(w);
    return res;
  }
  res.degree = ida_core(m);
  return res;
}

std::optional<AttackStrings> attack_strings(const BacktrackClass& cls,
                                            const Pnfa& a,
                                            std::uint64_t budget_nodes) {
  if (!cls.exponential || !cls.witness || cls.witness->word.empty())
    return std::nullopt;
  const Word& u = cls.witness->prefix;
  const Word& v = cls.witness->word;

  std::vector<Word> suffixes;
  for (Symbol s : a.alphabet) suffixes.push_back(Word{s});
  Symbol fresh = 'a';
  while (std::binary_search(a.alphabet.begin(), a.alphabet.end(), fresh))
    ++fresh;
  suffixes.push_back(Word{fresh});
  suffixes.push_back(Word{});

  for (const Word& s : suffixes) {
    std::vector<std::uint64_t> sizes;
    for (int i = 0; i <= 12; ++i) {
      Word w = u;
      for (int j = 0; j < i; ++j) w.insert(w.end(), v.begin(), v.end());
      w.insert(w.end(), s.begin(), s.end());
      BtrTree t = btr(a, w, budget_nodes);
      if (!t.complete) {
        // The truncated tree already certifies growth past the budget; keep
        // the point when that alone proves the 1.5x step.
        if (!sizes.empty() && static_cast<double>(budget_nodes) >=
                                  1.5 * static_cast<double>(sizes.back()))
          sizes.push_back(t.total_nodes());
        break;
      }
      sizes.push_back(t.total_nodes());
    }
    // Longest stretch of pump counts with consecutive ratios >= 1.5.
    int run = 1, best = 1;
    for (size_t j = 1; j < sizes.size(); ++j) {
      if (static_cast<double>(sizes[j]) >=
          1.5 * static_cast<double>(sizes[j - 1]))
        best = std::max(best, ++run);
      else
        run = 1;
    }
    if (best >= 4) return AttackStrings{u, v, s, std::move(sizes)};
  }
  return std::nullopt;
}

}  // namespace redos
