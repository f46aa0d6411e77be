#include "redos/ast.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace redos {

Word to_word(std::string_view s) {
  Word w;
  w.reserve(s.size());
  for (char c : s) w.push_back(static_cast<unsigned char>(c));
  return w;
}

std::string word_to_string(const Word& w) {
  std::string s;
  for (Symbol a : w) {
    if (a >= 0 && a < 256) {
      s.push_back(static_cast<char>(a));
    } else {
      s += "<" + std::to_string(a) + ">";
    }
  }
  return s;
}

int RegexAst::vertex(const std::vector<int>& path) const {
  int v = root;
  for (int i : path) {
    if (v < 0 || i < 1 || i > at(v).arity()) return -1;
    v = at(v).child[i - 1];
  }
  return v;
}

std::vector<Symbol> RegexAst::alphabet() const {
  std::set<Symbol> s;
  for (const AstNode& n : nodes)
    if (n.kind == NodeKind::Symbol) s.insert(n.symbol);
  return {s.begin(), s.end()};
}

void RegexAst::check_well_formed() const {
  assert(root >= 0 && root < size());
  for (int v = 0; v < size(); ++v) {
    const AstNode& n = at(v);
    for (int i = 0; i < 2; ++i) {
      bool present = n.child[i] >= 0;
      assert(present == (i < n.arity()));
      if (present) {
        assert(at(n.child[i]).parent == v);
        assert(at(n.child[i]).child_index == i + 1);
      }
    }
  }
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RegexAst run() {
    if (text_.empty())
      fail("empty pattern; use @eps for the empty-string expression", 0);
    int root = parse_union();
    if (pos_ != text_.size()) fail("unexpected character", pos_);
    ast_.root = root;
    fix_links(root, -1, 0);
    ast_.check_well_formed();
    return std::move(ast_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg, size_t at) {
    throw ParseError(msg + " at byte " + std::to_string(at), at);
  }

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  int make(NodeKind k, int c0 = -1, int c1 = -1, Symbol sym = -1) {
    ast_.nodes.push_back(AstNode{k, sym, {c0, c1}, -1, 0});
    return static_cast<int>(ast_.nodes.size()) - 1;
  }

  void fix_links(int v, int parent, int idx) {
    AstNode& n = ast_.nodes[static_cast<size_t>(v)];
    n.parent = parent;
    n.child_index = idx;
    for (int i = 0; i < n.arity(); ++i) fix_links(n.child[i], v, i + 1);
  }

  int parse_union() {
    int lhs = parse_concat();
    while (!eof() && peek() == '|') {
      ++pos_;
      int rhs = parse_concat();
      lhs = make(NodeKind::Union, lhs, rhs);
    }
    return lhs;
  }

  bool starts_atom() const {
    if (eof()) return false;
    char c = peek();
    return c != '|' && c != ')' && c != '*' && c != '?';
  }

  int parse_concat() {
    if (!starts_atom()) fail("expected an atom", pos_);
    int lhs = parse_postfix();
    while (starts_atom()) {
      int rhs = parse_postfix();
      lhs = make(NodeKind::Concat, lhs, rhs);
    }
    return lhs;
  }

  int parse_postfix() {
    int e = parse_atom();
    while (!eof() && peek() == '*') {
      ++pos_;
      if (!eof() && peek() == '?') {
        ++pos_;
        e = make(NodeKind::LazyStar, e);
      } else {
        e = make(NodeKind::Star, e);
      }
    }
    return e;
  }

  int parse_atom() {
    size_t start = pos_;
    char c = peek();
    if (c == '(') {
      ++pos_;
      int e = parse_union();
      if (eof() || peek() != ')') fail("unbalanced '('", start);
      ++pos_;
      return e;
    }
    if (c == '@') {
      if (text_.compare(pos_, 4, "@eps") == 0) {
        pos_ += 4;
        return make(NodeKind::Epsilon);
      }
      if (text_.compare(pos_, 6, "@empty") == 0) {
        pos_ += 6;
        return make(NodeKind::EmptySet);
      }
      fail("unknown '@' constant (expected @eps or @empty)", start);
    }
    if (c == '\\') {
      ++pos_;
      if (eof()) fail("dangling escape", start);
      char e = text_[pos_];
      if (e == '|' || e == '*' || e == '(' || e == ')' || e == '\\' ||
          e == '$') {
        ++pos_;
        return make(NodeKind::Symbol, -1, -1, static_cast<unsigned char>(e));
      }
      fail("unsupported escape", start);
    }
    // UTF-8 spellings of the two constants.
    if (text_.compare(pos_, 2, "\xce\xb5") == 0) {  // U+03B5 epsilon
      pos_ += 2;
      return make(NodeKind::Epsilon);
    }
    if (text_.compare(pos_, 3, "\xe2\x88\x85") == 0) {  // U+2205 empty set
      pos_ += 3;
      return make(NodeKind::EmptySet);
    }
    if (c == '?' || c == '+' || c == '[' || c == ']' || c == '{' || c == '}' ||
        c == '^' || c == '.')
      fail("unsupported metacharacter (only the |, *, *? fragment is accepted)",
           start);
    ++pos_;
    return make(NodeKind::Symbol, -1, -1, static_cast<unsigned char>(c));
  }

  std::string_view text_;
  size_t pos_ = 0;
  RegexAst ast_;
};

void next_rec(const RegexAst& ast, int v, int next_v, NextMap& out) {
  out[static_cast<size_t>(v)] = next_v;
  const AstNode& n = ast.at(v);
  switch (n.kind) {
    case NodeKind::Union:
      next_rec(ast, n.child[0], next_v, out);
      next_rec(ast, n.child[1], next_v, out);
      break;
    case NodeKind::Concat:
      next_rec(ast, n.child[0], n.child[1], out);
      next_rec(ast, n.child[1], next_v, out);
      break;
    case NodeKind::Star:
    case NodeKind::LazyStar:
      next_rec(ast, n.child[0], v, out);
      break;
    default:
      break;
  }
}

// Deep-copies the subtree rooted at src_v of src into dst, returning the new
// root id. Links are fixed up by the caller.
int copy_into(const RegexAst& src, int src_v, RegexAst& dst) {
  const AstNode& n = src.at(src_v);
  int c0 = n.child[0] >= 0 ? copy_into(src, n.child[0], dst) : -1;
  int c1 = n.child[1] >= 0 ? copy_into(src, n.child[1], dst) : -1;
  dst.nodes.push_back(AstNode{n.kind, n.symbol, {c0, c1}, -1, 0});
  return static_cast<int>(dst.nodes.size()) - 1;
}

void relink(RegexAst& ast, int v, int parent, int idx) {
  AstNode& n = ast.nodes[static_cast<size_t>(v)];
  n.parent = parent;
  n.child_index = idx;
  for (int i = 0; i < n.arity(); ++i) relink(ast, n.child[i], v, i + 1);
}

}  // namespace

RegexAst parse(std::string_view text) { return Parser(text).run(); }

NextMap next_map(const RegexAst& ast) {
  NextMap out(static_cast<size_t>(ast.size()), kNil);
  next_rec(ast, ast.root, kNil, out);
  return out;
}

RegexAst hardness_gadget(const RegexAst& e, Symbol alpha) {
  const Symbol dollar = '$';
  std::vector<Symbol> sigma = e.alphabet();
  if (std::count(sigma.begin(), sigma.end(), dollar))
    throw std::invalid_argument("'$' already occurs in the expression");
  if (!std::count(sigma.begin(), sigma.end(), alpha))
    throw std::invalid_argument("pump symbol not in the expression's alphabet");

  RegexAst g;
  auto mk = [&g](NodeKind k, int c0 = -1, int c1 = -1, Symbol sym = -1) {
    g.nodes.push_back(AstNode{k, sym, {c0, c1}, -1, 0});
    return static_cast<int>(g.nodes.size()) - 1;
  };
  auto alt_of = [&](const std::vector<Symbol>& syms) {
    int acc = mk(NodeKind::Symbol, -1, -1, syms[0]);
    for (size_t i = 1; i < syms.size(); ++i)
      acc = mk(NodeKind::Union, acc, mk(NodeKind::Symbol, -1, -1, syms[i]));
    return acc;
  };

  std::vector<Symbol> gamma = sigma;
  gamma.push_back(dollar);
  std::sort(gamma.begin(), gamma.end());

  int e1 = copy_into(e, e.root, g);
  int e2 = copy_into(e, e.root, g);
  // e $ Gamma*
  int lhs2 = mk(NodeKind::Concat,
                mk(NodeKind::Concat, e2, mk(NodeKind::Symbol, -1, -1, dollar)),
                mk(NodeKind::Star, alt_of(gamma)));
  int lhs = mk(NodeKind::Union, e1, lhs2);
  // Sigma* $ (alpha*)* $
  int rhs = mk(
      NodeKind::Concat,
      mk(NodeKind::Concat,
         mk(NodeKind::Concat, mk(NodeKind::Star, alt_of(sigma)),
            mk(NodeKind::Symbol, -1, -1, dollar)),
         mk(NodeKind::Star, mk(NodeKind::Star,
                               mk(NodeKind::Symbol, -1, -1, alpha)))),
      mk(NodeKind::Symbol, -1, -1, dollar));
  g.root = mk(NodeKind::Union, lhs, rhs);
  relink(g, g.root, -1, 0);
  g.check_well_formed();
  return g;
}

std::string to_string(const RegexAst& ast) {
  // Emits a fully parenthesized form that re-parses to the same tree.
  std::string out;
  auto emit = [&](auto&& self, int v) -> void {
    const AstNode& n = ast.at(v);
    switch (n.kind) {
      case NodeKind::Union:
        out += '(';
        self(self, n.child[0]);
        out += '|';
        self(self, n.child[1]);
        out += ')';
        break;
      case NodeKind::Concat:
        out += '(';
        self(self, n.child[0]);
        self(self, n.child[1]);
        out += ')';
        break;
      case NodeKind::Star:
      case NodeKind::LazyStar:
        out += '(';
        self(self, n.child[0]);
        out += ')';
        out += '*';
        if (n.kind == NodeKind::LazyStar) out += '?';
        break;
      case NodeKind::Symbol: {
        char c = static_cast<char>(n.symbol);
        if (c == '|' || c == '*' || c == '(' || c == ')' || c == '\\' ||
            c == '$' || c == '@' || c == '?')
          out += '\\';
        out += c;
        break;
      }
      case NodeKind::Epsilon: out += "@eps"; break;
      case NodeKind::EmptySet: out += "@empty"; break;
    }
  };
  emit(emit, ast.root);
  return out;
}

}  // namespace redos
