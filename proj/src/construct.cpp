#include "redos/construct.hpp"

#include <cassert>
#include <deque>
#include <map>
#include <numeric>
#include <vector>

namespace redos {

namespace {

// Arena of raw states with a union-find layer so that "identify state a
// with state b" steps are cheap. Transitions always live on the class
// representative; at most one side of a merge carries any.
class Builder {
 public:
  int fresh() {
    parent_.push_back(static_cast<int>(parent_.size()));
    delta1_.emplace_back();
    delta2_.emplace_back();
    return parent_.back();
  }

  int find(int x) {
    while (parent_[static_cast<size_t>(x)] != x) {
      parent_[static_cast<size_t>(x)] =
          parent_[static_cast<size_t>(parent_[static_cast<size_t>(x)])];
      x = parent_[static_cast<size_t>(x)];
    }
    return x;
  }

  void identify(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    bool a_has = !delta1_[static_cast<size_t>(a)].empty() ||
                 !delta2_[static_cast<size_t>(a)].empty();
    bool b_has = !delta1_[static_cast<size_t>(b)].empty() ||
                 !delta2_[static_cast<size_t>(b)].empty();
    assert(!(a_has && b_has));
    (void)a_has;
    if (b_has) std::swap(a, b);
    parent_[static_cast<size_t>(b)] = a;
  }

  void add_symbol_edge(int from, Symbol a, int to) {
    auto& m = delta1_[static_cast<size_t>(find(from))];
    assert(!m.count(a));
    m[a] = to;
  }

  void set_eps(int from, std::vector<int> targets) {
    int r = find(from);
    assert(delta1_[static_cast<size_t>(r)].empty() &&
           delta2_[static_cast<size_t>(r)].empty());
    delta2_[static_cast<size_t>(r)] = std::move(targets);
  }

  // Resolves merges, drops unreachable states, and numbers the rest in
  // BFS order from the initial state (symbol edges by symbol, then
  // epsilon targets by priority).
  Pnfa compact(int initial, int final_state, std::vector<Symbol> alphabet) {
    std::map<int, int> id;
    std::vector<int> order;
    auto visit = [&](int raw) {
      raw = find(raw);
      if (id.emplace(raw, static_cast<int>(order.size())).second)
        order.push_back(raw);
    };
    visit(initial);
    for (size_t i = 0; i < order.size(); ++i) {
      int raw = order[i];
      for (auto& [sym, to] : delta1_[static_cast<size_t>(raw)]) {
        (void)sym;
        visit(to);
      }
      for (int to : delta2_[static_cast<size_t>(raw)]) visit(to);
    }

    Pnfa out;
    out.num_states = static_cast<int>(order.size());
    out.alphabet = std::move(alphabet);
    out.q0 = 0;
    out.is_q2.resize(order.size());
    out.names.resize(order.size());
    out.delta1.resize(order.size());
    out.delta2.resize(order.size());
    out.final_states.resize(order.size());
    for (size_t i = 0; i < order.size(); ++i) {
      int raw = order[i];
      out.names[i] = "q" + std::to_string(i);
      out.is_q2[i] = !delta2_[static_cast<size_t>(raw)].empty();
      for (auto& [sym, to] : delta1_[static_cast<size_t>(raw)])
        out.delta1[i][sym] = id.at(find(to));
      for (int to : delta2_[static_cast<size_t>(raw)])
        out.delta2[i].push_back(id.at(find(to)));
    }
    int f = find(final_state);
    if (id.count(f)) out.final_states[static_cast<size_t>(id.at(f))] = true;
    out.validate();
    return out;
  }

 private:
  std::vector<int> parent_;
  std::vector<std::map<Symbol, int>> delta1_;
  std::vector<std::vector<int>> delta2_;
};

struct Piece {
  int q;  // initial
  int f;  // final
};

Piece build_base(Builder& b, const AstNode& n) {
  Piece p{b.fresh(), b.fresh()};
  switch (n.kind) {
    case NodeKind::Symbol:
      b.add_symbol_edge(p.q, n.symbol, p.f);
      break;
    case NodeKind::Epsilon:
      b.set_eps(p.q, {p.f});
      break;
    case NodeKind::EmptySet:
      break;
    default:
      assert(false);
  }
  return p;
}

Piece build_thompson(Builder& b, const RegexAst& ast, int v) {
  const AstNode& n = ast.at(v);
  switch (n.kind) {
    case NodeKind::Concat: {
      Piece p1 = build_thompson(b, ast, n.child[0]);
      Piece p2 = build_thompson(b, ast, n.child[1]);
      b.identify(p1.f, p2.q);
      return Piece{p1.q, p2.f};
    }
    case NodeKind::Union: {
      Piece p1 = build_thompson(b, ast, n.child[0]);
      Piece p2 = build_thompson(b, ast, n.child[1]);
      Piece p{b.fresh(), b.fresh()};
      b.set_eps(p.q, {p1.q, p2.q});
      b.set_eps(p1.f, {p.f});
      b.set_eps(p2.f, {p.f});
      return p;
    }
    case NodeKind::Star:
    case NodeKind::LazyStar: {
      Piece p1 = build_thompson(b, ast, n.child[0]);
      Piece p{b.fresh(), b.fresh()};
      std::vector<int> prio = n.kind == NodeKind::Star
                                  ? std::vector<int>{p1.q, p.f}
                                  : std::vector<int>{p.f, p1.q};
      b.set_eps(p.q, prio);
      b.set_eps(p1.f, prio);
      return p;
    }
    default:
      return build_base(b, n);
  }
}

Piece build_java(Builder& b, const RegexAst& ast, int v) {
  const AstNode& n = ast.at(v);
  switch (n.kind) {
    case NodeKind::Concat: {
      Piece p1 = build_java(b, ast, n.child[0]);
      Piece p2 = build_java(b, ast, n.child[1]);
      b.identify(p1.f, p2.q);
      int q0 = b.fresh();
      b.set_eps(q0, {p1.q});
      return Piece{q0, p2.f};
    }
    case NodeKind::Union: {
      Piece p1 = build_java(b, ast, n.child[0]);
      Piece p2 = build_java(b, ast, n.child[1]);
      int q0 = b.fresh();
      b.set_eps(q0, {p1.q, p2.q});
      b.identify(p1.f, p2.f);
      return Piece{q0, p1.f};
    }
    case NodeKind::Star:
    case NodeKind::LazyStar: {
      Piece p1 = build_java(b, ast, n.child[0]);
      int f0 = b.fresh();
      std::vector<int> prio = n.kind == NodeKind::Star
                                  ? std::vector<int>{p1.q, f0}
                                  : std::vector<int>{f0, p1.q};
      b.set_eps(p1.f, prio);
      return Piece{p1.f, f0};
    }
    default:
      return build_base(b, n);
  }
}

}  // namespace

Pnfa thompson_pnfa(const RegexAst& ast) {
  Builder b;
  Piece p = build_thompson(b, ast, ast.root);
  return b.compact(p.q, p.f, ast.alphabet());
}

Pnfa java_pnfa(const RegexAst& ast) {
  Builder b;
  Piece p = build_java(b, ast, ast.root);
  return b.compact(p.q, p.f, ast.alphabet());
}

Pnfa construct(const RegexAst& ast, Construction c) {
  return c == Construction::Thompson ? thompson_pnfa(ast) : java_pnfa(ast);
}

}  // namespace redos
