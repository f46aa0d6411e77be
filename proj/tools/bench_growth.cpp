// Benchmarks the serial vs OpenMP worst-case scans on one pattern.
#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "redos/ambiguity.hpp"
#include "redos/construct.hpp"
#include "redos/growth.hpp"

using namespace redos;

int main(int argc, char** argv) {
  CLI::App app{"worst-case scan benchmark"};
  std::string pattern = "(a|b)*ab";
  std::string ctor = "java";
  int max_n = 10;
  std::uint64_t budget = kDefaultBtrBudget;
  app.add_option("pattern", pattern, "regex fragment pattern");
  app.add_option("--construction", ctor, "java or thompson");
  app.add_option("--max-n", max_n, "largest word length scanned");
  app.add_option("--budget-nodes", budget, "per-word btr node budget");
  CLI11_PARSE(app, argc, argv);

  Construction c =
      ctor == "thompson" ? Construction::Thompson : Construction::Java;
  Pnfa a = failure_pnfa(construct(parse(pattern), c));

  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  WorstCase s = worst_btr_sizes_serial(a, max_n, budget);
  auto t1 = clock::now();
  WorstCase p = worst_btr_sizes_parallel(a, max_n, budget);
  auto t2 = clock::now();

  double ts = std::chrono::duration<double>(t1 - t0).count();
  double tp = std::chrono::duration<double>(t2 - t1).count();
  std::printf("pattern %s, |Q| = %d, max n = %d\n", pattern.c_str(),
              a.num_states, max_n);
  std::printf("serial   %.3fs\n", ts);
  std::printf("parallel %.3fs  (speedup %.2fx)\n", tp, tp > 0 ? ts / tp : 0.0);
  std::printf("sizes:");
  for (std::uint64_t v : p.sizes) std::printf(" %llu", (unsigned long long)v);
  std::printf("%s\n", p.budget_exceeded ? "  (budget hit)" : "");
  if (s.sizes != p.sizes) {
    std::fprintf(stderr, "mismatch between serial and parallel results\n");
    return 1;
  }
  return 0;
}
