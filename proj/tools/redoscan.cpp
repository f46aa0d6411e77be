// Command-line frontend: compile, match, flatten, transduce, probe,
// classify, compare, corpus. Exit codes: 0 ok, 1 usage/parse error,
// 2 catastrophic classification, 3 budget exhausted.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "redos/ambiguity.hpp"
#include "redos/construct.hpp"
#include "redos/flatten.hpp"
#include "redos/growth.hpp"
#include "redos/io.hpp"
#include "redos/transducer.hpp"

using namespace redos;
using nlohmann::json;

namespace {

constexpr int kExitParse = 1;
constexpr int kExitCatastrophic = 2;
constexpr int kExitBudget = 3;

struct Options {
  std::string construction = "java";
  std::string alphabet;  // extra symbols for analyses, e.g. "ab"
  std::uint64_t budget = kDefaultBtrBudget;
  int max_n = 12;
  bool emit_json = false;
  bool emit_dot = false;
  std::uint64_t seed = 1;
  bool trace_d = false;
};

Construction parse_construction(const std::string& s) {
  if (s == "thompson") return Construction::Thompson;
  if (s == "java") return Construction::Java;
  throw CLI::ValidationError("--construction must be java or thompson");
}

Pnfa compile_pattern(const std::string& pattern, const Options& opt) {
  Pnfa a = construct(parse(pattern), parse_construction(opt.construction));
  for (char c : opt.alphabet) {
    Symbol s = static_cast<unsigned char>(c);
    auto it = std::lower_bound(a.alphabet.begin(), a.alphabet.end(), s);
    if (it == a.alphabet.end() || *it != s) a.alphabet.insert(it, s);
  }
  return a;
}

int cmd_compile(const std::string& pattern, const Options& opt) {
  Pnfa a = compile_pattern(pattern, opt);
  if (opt.emit_dot)
    std::cout << to_dot(a);
  else
    std::cout << to_json(a).dump(2) << "\n";
  return 0;
}

int cmd_match(const std::string& pattern, const std::string& input,
              const Options& opt) {
  Pnfa a = compile_pattern(pattern, opt);
  Word w = to_word(input);
  BtrTree t = btr(a, w, opt.budget);
  json report{{"schema_version", kSchemaVersion},
              {"kind", "match_report"},
              {"pattern", pattern},
              {"construction", opt.construction},
              {"input", input},
              {"accepted", succeeds(t)},
              {"state_nodes", t.state_nodes},
              {"total_nodes", t.total_nodes()},
              {"complete", t.complete}};
  if (auto run = accepting_run(t, w))
    report["run"] = json{{"states", run->states}, {"labels", run->labels}};
  if (opt.emit_dot) {
    std::cout << to_dot(t, w);
  } else if (opt.emit_json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::printf("%s  (%llu state nodes, %llu total%s)\n",
                succeeds(t) ? "accept" : "reject",
                (unsigned long long)t.state_nodes,
                (unsigned long long)t.total_nodes(),
                t.complete ? "" : ", budget hit");
  }
  return t.complete ? 0 : kExitBudget;
}

int cmd_flatten(const std::string& pattern, const Options& opt) {
  Pnfa a = compile_pattern(pattern, opt);
  FlattenResult r = flatten(a, opt.trace_d);
  if (opt.trace_d)
    for (const std::string& line : r.trace) std::cerr << line << "\n";
  if (opt.emit_dot)
    std::cout << to_dot(r.pnfa);
  else
    std::cout << to_json(r.pnfa).dump(2) << "\n";
  return 0;
}

void print_rule_tree(const OutputTree& t, int node, std::string& out) {
  int label = t.nodes[static_cast<size_t>(node)].label;
  if (is_stt_leaf(label)) {
    int s = decode_stt_leaf(label);
    if (s == 0)
      out += "s0";
    else if (s % 2 == 1)
      out += "a_q" + std::to_string((s - 1) / 2);
    else
      out += "f_q" + std::to_string((s - 2) / 2);
  } else if (label == kLabelAcc) {
    out += "Acc";
  } else if (label == kLabelRej) {
    out += "Rej";
  } else {
    out += "q" + std::to_string(label);
  }
  const auto& kids = t.nodes[static_cast<size_t>(node)].children;
  if (!kids.empty()) {
    out += "[";
    for (size_t i = 0; i < kids.size(); ++i) {
      if (i) out += ",";
      print_rule_tree(t, kids[i], out);
    }
    out += "]";
  }
}

int cmd_transduce(const std::string& pattern, const std::string& input,
                  bool dump_rules, const Options& opt) {
  Pnfa flat = flatten(compile_pattern(pattern, opt)).pnfa;
  Stt stt = build_stt(flat);
  if (dump_rules) {
    for (int s = 0; s < stt.num_states; ++s)
      for (const Stt::Rule& r : stt.rules[static_cast<size_t>(s)]) {
        std::string rhs;
        print_rule_tree(r.rhs, r.rhs.root, rhs);
        std::string lhs;
        if (s == 0)
          lhs = "s0";
        else if (s % 2 == 1)
          lhs = "a_q" + std::to_string((s - 1) / 2);
        else
          lhs = "f_q" + std::to_string((s - 2) / 2);
        std::string in = r.input == kFlat  ? "flat"
                         : r.input == kEnd ? "$"
                                           : word_to_string({r.input});
        std::printf("%s --%s--> %s\n", lhs.c_str(), in.c_str(), rhs.c_str());
      }
    if (input.empty()) return 0;
  }
  SttRunResult r = run_stt(stt, decorate(to_word(input)), opt.budget);
  std::printf("%zu output tree(s)%s\n", r.outputs.size(),
              r.budget_exceeded ? " (budget hit)" : "");
  for (const OutputTree& t : r.outputs)
    std::printf("  size %llu: %s\n", (unsigned long long)t.size(),
                tree_signature(t).c_str());
  return r.budget_exceeded ? kExitBudget : 0;
}

int cmd_probe(const std::string& pattern, const Options& opt) {
  Pnfa a = compile_pattern(pattern, opt);
  Stt stt = build_stt(flatten(failure_pnfa(a)).pnfa);
  std::fprintf(stderr, "seed %llu\n", (unsigned long long)opt.seed);
  GrowthEstimate est =
      growth_probe(stt, a.alphabet, opt.max_n, opt.budget, opt.seed);
  if (opt.emit_json) {
    std::cout << growth_report(est).dump(2) << "\n";
  } else {
    std::printf("f:");
    for (std::uint64_t v : est.f) std::printf(" %llu", (unsigned long long)v);
    std::printf("\nverdict: %s",
                est.verdict == GrowthEstimate::Verdict::Exponential
                    ? "Exponential"
                : est.verdict == GrowthEstimate::Verdict::Polynomial
                    ? "Polynomial"
                    : "Inconclusive");
    if (est.verdict == GrowthEstimate::Verdict::Polynomial)
      std::printf(" (slope %.2f)", est.loglog_slope);
    std::printf("%s\n", est.exhaustive ? "" : " [sampled]");
  }
  return est.budget_exceeded ? kExitBudget : 0;
}

int cmd_classify(const std::string& pattern, const Options& opt) {
  Pnfa a = compile_pattern(pattern, opt);
  auto t0 = std::chrono::steady_clock::now();
  BacktrackClass cls = classify_failure_backtracking(a);
  std::optional<AttackStrings> attack;
  if (cls.exponential) attack = attack_strings(cls, a, opt.budget);
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  if (opt.emit_json) {
    std::cout << classify_report(cls, attack, secs).dump(2) << "\n";
  } else if (cls.exponential) {
    std::printf("Exponential\n");
    if (attack)
      std::printf("attack: prefix=\"%s\" pump=\"%s\" suffix=\"%s\"\n",
                  word_to_string(attack->prefix).c_str(),
                  word_to_string(attack->pump).c_str(),
                  word_to_string(attack->suffix).c_str());
  } else {
    std::printf("Polynomial(%d)\n", cls.degree);
  }
  return cls.exponential ? kExitCatastrophic : 0;
}

int cmd_compare(const std::string& pattern, const Options& opt) {
  RegexAst ast = parse(pattern);
  Pnfa tp = thompson_pnfa(ast), jp = java_pnfa(ast);
  std::vector<Symbol> sigma = ast.alphabet();
  for (char c : opt.alphabet) {
    Symbol s = static_cast<unsigned char>(c);
    if (!std::binary_search(sigma.begin(), sigma.end(), s)) {
      sigma.push_back(s);
      std::sort(sigma.begin(), sigma.end());
    }
  }
  Symbol pump = sigma.empty() ? 'a' : sigma.front();
  Symbol tail = 'a';
  while (std::binary_search(sigma.begin(), sigma.end(), tail)) ++tail;
  json rows = json::array();
  if (!opt.emit_json)
    std::printf("%4s  %12s  %12s\n", "n", "thompson", "java");
  for (int n = 0; n <= opt.max_n; ++n) {
    Word w(static_cast<size_t>(n), pump);
    w.push_back(tail);
    BtrTree bt = btr(tp, w, opt.budget);
    BtrTree bj = btr(jp, w, opt.budget);
    rows.push_back(json{{"n", n},
                        {"word", word_to_string(w)},
                        {"thompson", bt.state_nodes},
                        {"java", bj.state_nodes},
                        {"thompson_complete", bt.complete},
                        {"java_complete", bj.complete}});
    if (!opt.emit_json)
      std::printf("%4d  %12llu%s %12llu%s\n", n,
                  (unsigned long long)bt.state_nodes, bt.complete ? " " : "!",
                  (unsigned long long)bj.state_nodes, bj.complete ? " " : "!");
    if (!bt.complete && !bj.complete) break;
  }
  if (opt.emit_json)
    std::cout << json{{"schema_version", kSchemaVersion},
                      {"kind", "compare_report"},
                      {"pattern", pattern},
                      {"rows", rows}}
                     .dump(2)
              << "\n";
  return 0;
}

std::string random_pattern(std::mt19937& rng, int budget,
                           const std::string& sigma) {
  if (budget <= 1) {
    unsigned roll = rng() % 10;
    if (roll == 0) return "@eps";
    if (roll == 1) return "@empty";
    return std::string(1, sigma[rng() % sigma.size()]);
  }
  switch (rng() % 5) {
    case 0: {
      int left = 1 + static_cast<int>(rng() % static_cast<unsigned>(budget - 1));
      return "(" + random_pattern(rng, left, sigma) + "|" +
             random_pattern(rng, budget - left, sigma) + ")";
    }
    case 1:
    case 2: {
      int left = 1 + static_cast<int>(rng() % static_cast<unsigned>(budget - 1));
      return "(" + random_pattern(rng, left, sigma) +
             random_pattern(rng, budget - left, sigma) + ")";
    }
    case 3: return "(" + random_pattern(rng, budget - 1, sigma) + ")*";
    default: return "(" + random_pattern(rng, budget - 1, sigma) + ")*?";
  }
}

int cmd_corpus(const std::string& path, int random_count, int random_size,
               const Options& opt) {
  std::vector<std::string> patterns;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) {
      std::fprintf(stderr, "cannot open %s\n", path.c_str());
      return kExitParse;
    }
    std::string line;
    while (std::getline(in, line))
      if (!line.empty() && line[0] != '#') patterns.push_back(line);
  } else {
    std::fprintf(stderr, "seed %llu\n", (unsigned long long)opt.seed);
    std::mt19937 rng(static_cast<std::uint32_t>(opt.seed));
    std::string sigma = opt.alphabet.empty() ? "ab" : opt.alphabet;
    for (int i = 0; i < random_count; ++i)
      patterns.push_back(random_pattern(rng, random_size, sigma));
  }

  json entries = json::array();
  int exp_count = 0, poly_count = 0, fail_count = 0, max_degree = 0;
  std::vector<std::string> worst;
  for (const std::string& p : patterns) {
    try {
      Pnfa a = compile_pattern(p, opt);
      BacktrackClass cls = classify_failure_backtracking(a);
      if (cls.exponential) {
        ++exp_count;
        worst.push_back(p);
        entries.push_back(json{{"pattern", p}, {"status", "Exponential"}});
      } else {
        ++poly_count;
        max_degree = std::max(max_degree, cls.degree);
        entries.push_back(json{{"pattern", p},
                               {"status", "Polynomial"},
                               {"degree", cls.degree}});
      }
    } catch (const ParseError& e) {
      ++fail_count;
      entries.push_back(
          json{{"pattern", p}, {"status", "parse_error"}, {"error", e.what()}});
    }
  }
  json report{{"schema_version", kSchemaVersion},
              {"kind", "corpus_report"},
              {"total", static_cast<int>(patterns.size())},
              {"parse_failures", fail_count},
              {"exponential", exp_count},
              {"polynomial", poly_count},
              {"max_degree", max_degree},
              {"entries", entries},
              {"worst", worst}};
  if (path.empty()) report["seed"] = opt.seed;
  if (opt.emit_json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::printf("%zu patterns: %d exponential, %d polynomial (max degree %d), "
                "%d parse failures\n",
                patterns.size(), exp_count, poly_count, max_degree, fail_count);
    for (const std::string& p : worst)
      std::printf("  catastrophic: %s\n", p.c_str());
  }
  return exp_count > 0 ? kExitCatastrophic : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"backtracking-regex analysis toolkit"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env = std::getenv("REDOSCAN_BUDGET"))
    opt.budget = std::strtoull(env, nullptr, 10);
  app.add_option("--construction", opt.construction,
                 "pNFA construction: java (default) or thompson");
  app.add_option("--alphabet", opt.alphabet,
                 "extra alphabet symbols for the analyses");
  app.add_option("--budget-nodes", opt.budget, "node budget for tree builds");
  app.add_option("--max-n", opt.max_n, "largest input length for scans");
  app.add_flag("--json", opt.emit_json, "emit a JSON report");
  app.add_flag("--dot", opt.emit_dot, "emit graphviz DOT");
  app.add_option("--seed", opt.seed, "RNG seed for sampled scans");

  std::string pattern, input, corpus_path;
  int random_count = 100, random_size = 7;
  bool dump_rules = false;

  CLI::App* c_compile = app.add_subcommand("compile", "pattern -> pNFA");
  c_compile->add_option("pattern", pattern)->required();
  CLI::App* c_match = app.add_subcommand("match", "run the matcher");
  c_match->add_option("pattern", pattern)->required();
  c_match->add_option("input", input)->required();
  CLI::App* c_flatten = app.add_subcommand("flatten", "delta2-flattening");
  c_flatten->add_option("pattern", pattern)->required();
  c_flatten->add_flag("--trace-d", opt.trace_d,
                      "log the d-recursion to stderr");
  CLI::App* c_trans =
      app.add_subcommand("transduce", "string-to-tree transducer");
  c_trans->add_option("pattern", pattern)->required();
  c_trans->add_option("input", input);
  c_trans->add_flag("--dump-rules", dump_rules);
  CLI::App* c_probe =
      app.add_subcommand("probe", "empirical output-growth probe");
  c_probe->add_option("pattern", pattern)->required();
  CLI::App* c_classify =
      app.add_subcommand("classify", "failure-backtracking class");
  c_classify->add_option("pattern", pattern)->required();
  CLI::App* c_compare =
      app.add_subcommand("compare", "thompson vs java btr sizes");
  c_compare->add_option("pattern", pattern)->required();
  CLI::App* c_corpus = app.add_subcommand("corpus", "classify many patterns");
  c_corpus->add_option("--file", corpus_path, "newline-delimited pattern file");
  c_corpus->add_option("--random", random_count, "number of random patterns");
  c_corpus->add_option("--size", random_size, "random pattern size budget");

  // let the global flags appear after the subcommand name too
  for (CLI::App* sub : app.get_subcommands(
           [](const CLI::App*) { return true; }))
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_compile->parsed()) return cmd_compile(pattern, opt);
    if (c_match->parsed()) return cmd_match(pattern, input, opt);
    if (c_flatten->parsed()) return cmd_flatten(pattern, opt);
    if (c_trans->parsed()) return cmd_transduce(pattern, input, dump_rules, opt);
    if (c_probe->parsed()) return cmd_probe(pattern, opt);
    if (c_classify->parsed()) return cmd_classify(pattern, opt);
    if (c_compare->parsed()) return cmd_compare(pattern, opt);
    if (c_corpus->parsed())
      return cmd_corpus(corpus_path, random_count, random_size, opt);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitParse;
  }
  return kExitParse;
}
