#ifndef REDOS_JAVA_MATCHER_HPP
#define REDOS_JAVA_MATCHER_HPP

#include <cstdint>

#include "redos/ast.hpp"

namespace redos {

struct JavaMatchResult {
  bool matched = false;
  std::uint64_t invocations = 0;
  bool budget_exceeded = false;  // matched is meaningless when set
};

inline constexpr std::uint64_t kDefaultJavaBudget = 10'000'000;

// Backtracking matcher in the style of java.util.regex, recursing over the
// parse tree with a next() continuation map. C collects star bodies entered
// since the last consumed symbol, cutting epsilon cycles. Full match only.
JavaMatchResult java_match(const RegexAst& ast, const Word& w,
                           std::uint64_t budget = kDefaultJavaBudget);

}  // namespace redos

#endif
