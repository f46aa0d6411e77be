#ifndef REDOS_IO_HPP
#define REDOS_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "redos/ambiguity.hpp"
#include "redos/growth.hpp"
#include "redos/pnfa.hpp"

namespace redos {

// Bumped whenever a serialized shape changes; mirrored by the schemas in
// docs/schemas/.
inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const Pnfa& a);
nlohmann::json to_json(const Nfa& n);
nlohmann::json to_json(const BtrTree& t);

// Round-trip for automata; throws std::invalid_argument on shape errors.
Pnfa pnfa_from_json(const nlohmann::json& j);
Nfa nfa_from_json(const nlohmann::json& j);

// {schema_version, kind, verdict, degree, witness?, attack?, timings?}
nlohmann::json classify_report(const BacktrackClass& cls,
                               const std::optional<AttackStrings>& attack,
                               double seconds = -1.0);

nlohmann::json growth_report(const GrowthEstimate& est);

// Graphviz output. Q2 states are drawn as diamonds with priority-numbered
// epsilon edges; final states are double circles.
std::string to_dot(const Pnfa& a);
std::string to_dot(const Nfa& n);
std::string to_dot(const BtrTree& t, const Word& w);

}  // namespace redos

#endif
