#ifndef REDOS_CONSTRUCT_HPP
#define REDOS_CONSTRUCT_HPP

#include "redos/ast.hpp"
#include "redos/pnfa.hpp"

namespace redos {

enum class Construction { Thompson, Java };

// Thompson construction with prioritized epsilon transitions. Star and
// union introduce fresh initial/final states; the greedy star orders the
// body before the exit, the lazy star the other way around.
Pnfa thompson_pnfa(const RegexAst& ast);

// The construction implicit in the Java matcher: concatenation adds an
// extra initial state, union shares one final state, and star reuses the
// body's final state as the loop head.
Pnfa java_pnfa(const RegexAst& ast);

Pnfa construct(const RegexAst& ast, Construction c);

}  // namespace redos

#endif
