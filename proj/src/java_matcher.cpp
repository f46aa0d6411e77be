#include "redos/java_matcher.hpp"

#include <vector>

namespace redos {

namespace {

struct Matcher {
  const RegexAst& ast;
  const NextMap& next;
  const Word& w;
  std::uint64_t budget;
  std::uint64_t invocations = 0;
  bool exceeded = false;

  using Guard = std::vector<std::uint64_t>;  // bitset over tree nodes

  static bool test(const Guard& c, int v) {
    return (c[static_cast<size_t>(v) / 64] >> (v % 64)) & 1;
  }
  static Guard with(Guard c, int v) {
    c[static_cast<size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
    return c;
  }

  bool match(int v, size_t i, const Guard& c) {
    if (exceeded) return false;
    if (++invocations > budget) {
      exceeded = true;
      return false;
    }
    if (v == kNil) return i == w.size();
    const AstNode& node = ast.at(v);
    switch (node.kind) {
      case NodeKind::Epsilon:
        return match(next[static_cast<size_t>(v)], i, c);
      case NodeKind::EmptySet:
        return false;
      case NodeKind::Symbol:
        if (i < w.size() && w[i] == node.symbol)
          return match(next[static_cast<size_t>(v)], i + 1,
                       Guard(c.size(), 0));
        return false;
      case NodeKind::Union:
        if (match(node.child[0], i, c)) return true;
        return match(node.child[1], i, c);
      case NodeKind::Concat:
        return match(node.child[0], i, c);
      case NodeKind::Star:
        if (!test(c, node.child[0]) &&
            match(node.child[0], i, with(c, node.child[0])))
          return true;
        return match(next[static_cast<size_t>(v)], i, c);
      case NodeKind::LazyStar:
        if (match(next[static_cast<size_t>(v)], i, c)) return true;
        if (!test(c, node.child[0]))
          return match(node.child[0], i, with(c, node.child[0]));
        return false;
    }
    return false;
  }
};

}  // namespace

JavaMatchResult java_match(const RegexAst& ast, const Word& w,
                           std::uint64_t budget) {
  NextMap next = next_map(ast);
  Matcher m{ast, next, w, budget};
  Matcher::Guard empty((static_cast<size_t>(ast.size()) + 63) / 64, 0);
  bool ok = m.match(ast.root, 0, empty);
  JavaMatchResult res;
  res.invocations = m.invocations;
  res.budget_exceeded = m.exceeded;
  res.matched = ok && !m.exceeded;
  return res;
}

}  // namespace redos
