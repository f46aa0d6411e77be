#ifndef REDOS_AST_HPP
#define REDOS_AST_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace redos {

// Input symbols are ints so that reserved marker symbols (used by the
// transducer) can live outside the character range.
using Symbol = int;
using Word = std::vector<Symbol>;

Word to_word(std::string_view s);
std::string word_to_string(const Word& w);

enum class NodeKind : std::uint8_t {
  Union,
  Concat,
  Star,
  LazyStar,
  Symbol,
  Epsilon,
  EmptySet,
};

struct AstNode {
  NodeKind kind;
  Symbol symbol = -1;         // only for NodeKind::Symbol
  int child[2] = {-1, -1};    // child[1] unused for unary nodes
  int parent = -1;            // -1 at the root
  int child_index = 0;        // 1-based index of this node under its parent

  int arity() const {
    switch (kind) {
      case NodeKind::Union:
      case NodeKind::Concat: return 2;
      case NodeKind::Star:
      case NodeKind::LazyStar: return 1;
      default: return 0;
    }
  }
};

struct RegexAst {
  std::vector<AstNode> nodes;
  int root = -1;

  const AstNode& at(int v) const { return nodes[static_cast<size_t>(v)]; }
  int size() const { return static_cast<int>(nodes.size()); }

  // Resolves a path of 1-based child indices starting at the root.
  int vertex(const std::vector<int>& path) const;

  // Symbols occurring in the expression, sorted.
  std::vector<Symbol> alphabet() const;

  void check_well_formed() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, size_t offset)
      : std::runtime_error(std::move(msg)), offset_(offset) {}
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

// Parses the surface syntax documented in docs/grammar.md:
// union over concatenation over (lazy) star, juxtaposition for
// concatenation, `@eps`/`@empty` for the constant expressions, and
// backslash escapes for the metacharacters.
RegexAst parse(std::string_view text);

// next(v): the vertex where matching continues once the subexpression at v
// has matched; kNil at (and above) the root.
inline constexpr int kNil = -1;
using NextMap = std::vector<int>;  // node id -> node id or kNil
NextMap next_map(const RegexAst& ast);

// Wraps e into ((e | e $ G*) | (S* $ (alpha*)* $)) over G = S + {'$'},
// where S is the alphabet of e. Used to generate stress-corpus entries.
RegexAst hardness_gadget(const RegexAst& e, Symbol alpha);

std::string to_string(const RegexAst& ast);

}  // namespace redos

#endif
