#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "redos/ambiguity.hpp"
#include "redos/construct.hpp"
#include "redos/flatten.hpp"
#include "redos/growth.hpp"
#include "support/oracle.hpp"

using namespace redos;
using testsupport::random_pattern;

namespace {

Stt failure_stt(const char* pattern, Construction c) {
  return build_stt(flatten(failure_pnfa(construct(parse(pattern), c))).pnfa);
}

}  // namespace

TEST_CASE("parallel worst-case scan equals the serial one") {
  std::mt19937 rng(53);
  for (int round = 0; round < 25; ++round) {
    std::string p = random_pattern(rng, 6, "ab");
    Pnfa a = failure_pnfa(java_pnfa(parse(p)));
    WorstCase s = worst_btr_sizes_serial(a, 7, 200000);
    WorstCase q = worst_btr_sizes_parallel(a, 7, 200000);
    CAPTURE(p);
    CHECK(s.sizes == q.sizes);
    CHECK(s.budget_exceeded == q.budget_exceeded);
  }
}

TEST_CASE("parallel scan reproduces budget exhaustion") {
  Pnfa a = failure_pnfa(java_pnfa(parse("(a|a)*")));
  WorstCase s = worst_btr_sizes_serial(a, 16, 500);
  WorstCase q = worst_btr_sizes_parallel(a, 16, 500);
  CHECK(s.budget_exceeded);
  CHECK(s.sizes == q.sizes);
  CHECK(s.budget_exceeded == q.budget_exceeded);
}

TEST_CASE("worst-case sizes match known shapes") {
  // (a|a)* failure trees double per character
  WorstCase wc =
      worst_btr_sizes_serial(failure_pnfa(java_pnfa(parse("(a|a)*"))), 10);
  for (size_t n = 4; n + 1 < wc.sizes.size(); ++n) {
    double r = static_cast<double>(wc.sizes[n + 1]) /
               static_cast<double>(wc.sizes[n]);
    CHECK(r > 1.8);
    CHECK(r < 2.2);
  }
  // a* failure trees grow by a constant per character
  WorstCase lin =
      worst_btr_sizes_serial(failure_pnfa(java_pnfa(parse("a*"))), 10);
  for (size_t n = 2; n + 1 < lin.sizes.size(); ++n)
    CHECK(lin.sizes[n + 1] - lin.sizes[n] ==
          lin.sizes[n] - lin.sizes[n - 1]);
}

TEST_CASE("classify_growth on synthetic sequences") {
  GrowthEstimate e;
  for (int n = 0; n <= 12; ++n) e.f.push_back(1ull << n);
  classify_growth(e, 0.25, 4);
  CHECK(e.verdict == GrowthEstimate::Verdict::Exponential);

  GrowthEstimate p;
  for (std::uint64_t n = 0; n <= 20; ++n) p.f.push_back(n * n + 1);
  classify_growth(p, 0.25, 4);
  CHECK(p.verdict == GrowthEstimate::Verdict::Polynomial);
  CHECK(p.degree == 2);

  GrowthEstimate tiny;
  tiny.f = {1, 2};
  classify_growth(tiny, 0.25, 4);
  CHECK(tiny.verdict == GrowthEstimate::Verdict::Inconclusive);
}

TEST_CASE("growth probe separates the standard examples") {
  GrowthEstimate exp =
      growth_probe(failure_stt("(a|a)*", Construction::Java), {'a'}, 10);
  CHECK(exp.verdict == GrowthEstimate::Verdict::Exponential);
  CHECK(exp.exhaustive);

  GrowthEstimate lin =
      growth_probe(failure_stt("a*", Construction::Java), {'a'}, 16);
  CHECK(lin.verdict == GrowthEstimate::Verdict::Polynomial);
  CHECK(lin.degree == 1);

  GrowthEstimate quad =
      growth_probe(failure_stt("a*a*", Construction::Java), {'a'}, 16);
  CHECK(quad.verdict == GrowthEstimate::Verdict::Polynomial);
  CHECK(quad.loglog_slope > 1.3);
}

TEST_CASE("growth probe is deterministic under a fixed seed") {
  Stt stt = failure_stt("(a|b)*ab", Construction::Java);
  GrowthEstimate g1 = growth_probe(stt, {'a', 'b'}, 13, 2'000'000, 7, 256, 16);
  GrowthEstimate g2 = growth_probe(stt, {'a', 'b'}, 13, 2'000'000, 7, 256, 16);
  CHECK(!g1.exhaustive);  // 2^13 words forces sampling
  CHECK(g1.f == g2.f);
  CHECK(g1.verdict == g2.verdict);
}
