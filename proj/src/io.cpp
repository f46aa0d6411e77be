#include "redos/io.hpp"

#include <sstream>

namespace redos {

namespace {

using nlohmann::json;

std::string symbol_label(Symbol s) {
  if (s >= 32 && s < 127) return std::string(1, static_cast<char>(s));
  return "#" + std::to_string(s);
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

json word_json(const Word& w) {
  return json(word_to_string(w));
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("bad automaton json: ") + what);
}

}  // namespace

json to_json(const Pnfa& a) {
  json states = json::array();
  for (int q = 0; q < a.num_states; ++q) {
    size_t uq = static_cast<size_t>(q);
    json st;
    st["name"] = a.names[uq];
    st["q2"] = static_cast<bool>(a.is_q2[uq]);
    st["final"] = static_cast<bool>(a.final_states[uq]);
    if (a.is_q2[uq]) {
      st["delta2"] = a.delta2[uq];
    } else {
      json d1 = json::array();
      for (auto [s, t] : a.delta1[uq]) d1.push_back(json::array({s, t}));
      st["delta1"] = d1;
    }
    states.push_back(st);
  }
  return json{{"schema_version", kSchemaVersion},
              {"kind", "pnfa"},
              {"q0", a.q0},
              {"alphabet", a.alphabet},
              {"states", states}};
}

json to_json(const Nfa& n) {
  json states = json::array();
  for (int q = 0; q < n.num_states; ++q) {
    size_t uq = static_cast<size_t>(q);
    json delta = json::array();
    for (const auto& [s, ts] : n.delta[uq])
      delta.push_back(json::array({s, json(ts)}));
    states.push_back(json{{"name", n.names[uq]},
                          {"final", static_cast<bool>(n.final_states[uq])},
                          {"delta", delta},
                          {"eps", n.eps[uq]}});
  }
  return json{{"schema_version", kSchemaVersion},
              {"kind", "nfa"},
              {"q0", n.q0},
              {"alphabet", n.alphabet},
              {"states", states}};
}

json to_json(const BtrTree& t) {
  json nodes = json::array();
  for (const BtrTree::Node& nd : t.nodes)
    nodes.push_back(json{{"label", nd.label},
                         {"pos", nd.pos},
                         {"children", nd.children}});
  return json{{"schema_version", kSchemaVersion},
              {"kind", "btr_tree"},
              {"root", t.root},
              {"complete", t.complete},
              {"has_acc", t.has_acc},
              {"state_nodes", t.state_nodes},
              {"nodes", nodes}};
}

Pnfa pnfa_from_json(const json& j) {
  require(j.value("kind", "") == "pnfa", "kind");
  Pnfa a;
  a.q0 = j.at("q0").get<int>();
  a.alphabet = j.at("alphabet").get<std::vector<Symbol>>();
  const json& states = j.at("states");
  require(states.is_array(), "states");
  a.num_states = static_cast<int>(states.size());
  for (const json& st : states) {
    bool q2 = st.at("q2").get<bool>();
    a.names.push_back(st.at("name").get<std::string>());
    a.is_q2.push_back(q2);
    a.final_states.push_back(st.at("final").get<bool>());
    a.delta1.emplace_back();
    a.delta2.emplace_back();
    if (q2) {
      a.delta2.back() = st.at("delta2").get<std::vector<int>>();
    } else if (st.contains("delta1")) {
      for (const json& e : st.at("delta1"))
        a.delta1.back()[e.at(0).get<Symbol>()] = e.at(1).get<int>();
    }
  }
  a.validate();
  return a;
}

Nfa nfa_from_json(const json& j) {
  require(j.value("kind", "") == "nfa", "kind");
  Nfa n;
  n.q0 = j.at("q0").get<int>();
  n.alphabet = j.at("alphabet").get<std::vector<Symbol>>();
  const json& states = j.at("states");
  require(states.is_array(), "states");
  n.num_states = static_cast<int>(states.size());
  for (const json& st : states) {
    n.names.push_back(st.at("name").get<std::string>());
    n.final_states.push_back(st.at("final").get<bool>());
    n.delta.emplace_back();
    n.eps.emplace_back(st.at("eps").get<std::set<int>>());
    for (const json& e : st.at("delta"))
      n.delta.back()[e.at(0).get<Symbol>()] = e.at(1).get<std::set<int>>();
  }
  n.validate();
  return n;
}

json classify_report(const BacktrackClass& cls,
                     const std::optional<AttackStrings>& attack,
                     double seconds) {
  json j{{"schema_version", kSchemaVersion},
         {"kind", "classify_report"},
         {"verdict", cls.exponential ? "Exponential" : "Polynomial"},
         {"degree", cls.exponential ? json(nullptr) : json(cls.degree)}};
  if (cls.witness) {
    j["witness"] = json{{"state", cls.witness->state},
                        {"word", word_json(cls.witness->word)},
                        {"prefix", word_json(cls.witness->prefix)}};
  }
  if (attack) {
    j["attack"] = json{{"prefix", word_json(attack->prefix)},
                       {"pump", word_json(attack->pump)},
                       {"suffix", word_json(attack->suffix)},
                       {"sizes", attack->sizes}};
  }
  if (seconds >= 0.0) j["seconds"] = seconds;
  return j;
}

json growth_report(const GrowthEstimate& est) {
  const char* verdict =
      est.verdict == GrowthEstimate::Verdict::Exponential  ? "Exponential"
      : est.verdict == GrowthEstimate::Verdict::Polynomial ? "Polynomial"
                                                           : "Inconclusive";
  return json{{"schema_version", kSchemaVersion},
              {"kind", "growth_report"},
              {"f", est.f},
              {"ratios", est.ratios},
              {"loglog_slope", est.loglog_slope},
              {"verdict", verdict},
              {"degree", est.degree},
              {"empirical", est.empirical},
              {"budget_exceeded", est.budget_exceeded},
              {"exhaustive", est.exhaustive},
              {"seed", est.seed}};
}

std::string to_dot(const Pnfa& a) {
  std::ostringstream os;
  os << "digraph pnfa {\n  rankdir=LR;\n  start [shape=point];\n";
  for (int q = 0; q < a.num_states; ++q) {
    size_t uq = static_cast<size_t>(q);
    os << "  s" << q << " [label=\"" << dot_escape(a.names[uq]) << "\", shape="
       << (a.is_q2[uq] ? "diamond" : a.is_final(q) ? "doublecircle" : "circle");
    if (a.is_q2[uq] && a.is_final(q)) os << ", peripheries=2";
    os << "];\n";
  }
  os << "  start -> s" << a.q0 << ";\n";
  for (int q = 0; q < a.num_states; ++q) {
    size_t uq = static_cast<size_t>(q);
    if (a.is_q2[uq]) {
      int i = 0;
      for (int t : a.delta2[uq])
        os << "  s" << q << " -> s" << t << " [label=\"" << ++i
           << "\", style=dashed];\n";
    } else {
      for (auto [s, t] : a.delta1[uq])
        os << "  s" << q << " -> s" << t << " [label=\""
           << dot_escape(symbol_label(s)) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const Nfa& n) {
  std::ostringstream os;
  os << "digraph nfa {\n  rankdir=LR;\n  start [shape=point];\n";
  for (int q = 0; q < n.num_states; ++q)
    os << "  s" << q << " [label=\""
       << dot_escape(n.names[static_cast<size_t>(q)]) << "\", shape="
       << (n.is_final(q) ? "doublecircle" : "circle") << "];\n";
  os << "  start -> s" << n.q0 << ";\n";
  for (int q = 0; q < n.num_states; ++q) {
    size_t uq = static_cast<size_t>(q);
    for (const auto& [s, ts] : n.delta[uq])
      for (int t : ts)
        os << "  s" << q << " -> s" << t << " [label=\""
           << dot_escape(symbol_label(s)) << "\"];\n";
    for (int t : n.eps[uq])
      os << "  s" << q << " -> s" << t << " [style=dashed];\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const BtrTree& t, const Word& w) {
  std::ostringstream os;
  os << "digraph btr {\n  node [shape=box];\n";
  for (size_t i = 0; i < t.nodes.size(); ++i) {
    const BtrTree::Node& nd = t.nodes[i];
    std::string label;
    if (nd.label == kLabelAcc)
      label = "Acc";
    else if (nd.label == kLabelRej)
      label = "Rej";
    else
      label = "q" + std::to_string(nd.label) + " @" + std::to_string(nd.pos);
    os << "  n" << i << " [label=\"" << label << "\"";
    if (nd.label == kLabelAcc) os << ", style=filled, fillcolor=palegreen";
    if (nd.label == kLabelRej) os << ", style=filled, fillcolor=mistyrose";
    os << "];\n";
    for (int c : nd.children) os << "  n" << i << " -> n" << c << ";\n";
  }
  os << "  label=\"input: " << dot_escape(word_to_string(w)) << "\";\n}\n";
  return os.str();
}

}  // namespace redos
