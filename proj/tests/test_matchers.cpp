#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "redos/construct.hpp"
#include "redos/java_matcher.hpp"
#include "redos/pnfa.hpp"
#include "support/oracle.hpp"

using namespace redos;
using testsupport::oracle_match;
using testsupport::random_pattern;
using testsupport::random_word;

namespace {

std::vector<Word> all_words(const std::string& sigma, int max_len) {
  std::vector<Word> out{{}};
  std::vector<Word> layer{{}};
  for (int n = 0; n < max_len; ++n) {
    std::vector<Word> next;
    for (const Word& w : layer)
      for (char c : sigma) {
        Word e = w;
        e.push_back(static_cast<unsigned char>(c));
        next.push_back(e);
        out.push_back(e);
      }
    layer = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("java matcher on hand examples") {
  RegexAst ast = parse("(a|b)*abb");
  CHECK(java_match(ast, to_word("abb")).matched);
  CHECK(java_match(ast, to_word("aababb")).matched);
  CHECK(!java_match(ast, to_word("ab")).matched);
  CHECK(!java_match(ast, to_word("abbb")).matched);

  CHECK(java_match(parse("@eps"), {}).matched);
  CHECK(!java_match(parse("@eps"), to_word("a")).matched);
  CHECK(!java_match(parse("@empty"), {}).matched);
  CHECK(java_match(parse("(@eps|a)*"), to_word("aaa")).matched);
  CHECK(java_match(parse("(a*)*"), to_word("aaaa")).matched);
  CHECK(java_match(parse("(a*)*"), {}).matched);
  CHECK(java_match(parse("a*?b"), to_word("aab")).matched);
}

TEST_CASE("lazy and greedy stars accept the same language") {
  std::mt19937 rng(7);
  for (int round = 0; round < 100; ++round) {
    std::string p = random_pattern(rng, 6, "ab");
    RegexAst ast = parse(p);
    for (int k = 0; k < 20; ++k) {
      Word w = random_word(rng, 6, "ab");
      CAPTURE(p);
      CAPTURE(word_to_string(w));
      CHECK(java_match(ast, w).matched == oracle_match(ast, w));
    }
  }
}

TEST_CASE("budget exhaustion reported") {
  RegexAst ast = parse("(a|a)*b");
  Word w = to_word(std::string(40, 'a'));
  JavaMatchResult r = java_match(ast, w, 100000);
  CHECK(r.budget_exceeded);
}

TEST_CASE("btr on hand-checked examples") {
  // J(a) on "a": q0 -a-> q1(final). Two state nodes, accepting.
  Pnfa a = java_pnfa(parse("a"));
  BtrTree t = btr(a, to_word("a"));
  CHECK(succeeds(t));
  CHECK(t.state_nodes == 2);
  CHECK(t.complete);

  BtrTree miss = btr(a, to_word("b"));
  CHECK(!succeeds(miss));
  CHECK(miss.state_nodes == 1);

  // (a|a) on "a": the first alternative already accepts.
  Pnfa alt = java_pnfa(parse("a|a"));
  BtrTree t2 = btr(alt, to_word("a"));
  CHECK(succeeds(t2));
  // q0 (choice), first branch start, final: 3 state nodes.
  CHECK(t2.state_nodes == 3);
}

TEST_CASE("btr grows exponentially for (a|a)* failures") {
  Pnfa a = java_pnfa(parse("(a|a)*"));
  std::uint64_t prev = 0;
  for (int n = 4; n <= 10; ++n) {
    Word w = to_word(std::string(static_cast<size_t>(n), 'a') + "b");
    BtrTree t = btr(a, w);
    REQUIRE(t.complete);
    CHECK(!succeeds(t));
    if (prev) {
      double ratio = static_cast<double>(t.state_nodes) / static_cast<double>(prev);
      CHECK(ratio > 1.8);
      CHECK(ratio < 2.2);
    }
    prev = t.state_nodes;
  }
}

TEST_CASE("btr budget produces partial trees") {
  Pnfa a = java_pnfa(parse("(a|a)*"));
  Word w = to_word(std::string(30, 'a') + "b");
  BtrTree t = btr(a, w, 10000);
  CHECK(!t.complete);
  CHECK(t.state_nodes <= 10000);
}

TEST_CASE("match_run invocations equal btr state nodes") {
  std::mt19937 rng(11);
  for (int round = 0; round < 200; ++round) {
    std::string p = random_pattern(rng, 6, "ab");
    RegexAst ast = parse(p);
    for (Construction c : {Construction::Thompson, Construction::Java}) {
      Pnfa a = construct(ast, c);
      Word w = random_word(rng, 5, "ab");
      BtrTree t = btr(a, w);
      MatchRunResult m = match_run(a, w);
      CAPTURE(p);
      CAPTURE(word_to_string(w));
      REQUIRE(t.complete);
      CHECK(m.invocations == t.state_nodes);
      CHECK(m.run.has_value() == succeeds(t));
    }
  }
}

TEST_CASE("accepting runs are valid runs of the underlying NFA") {
  std::mt19937 rng(13);
  for (int round = 0; round < 200; ++round) {
    std::string p = random_pattern(rng, 6, "ab");
    RegexAst ast = parse(p);
    Pnfa a = java_pnfa(ast);
    Nfa n = underlying_nfa(a);
    Word w = random_word(rng, 5, "ab");
    BtrTree t = btr(a, w);
    auto run = accepting_run(t, w);
    CHECK(run.has_value() == succeeds(t));
    if (run) {
      CHECK(run_is_valid(n, *run, w, true));
      auto m = match_run(a, w);
      REQUIRE(m.run.has_value());
      CHECK(m.run->states == run->states);
      CHECK(m.run->labels == run->labels);
    }
  }
}

TEST_CASE("constructions accept the derivative-oracle language") {
  std::mt19937 rng(17);
  std::vector<Word> words = all_words("ab", 4);
  for (int round = 0; round < 150; ++round) {
    std::string p = random_pattern(rng, 6, "ab");
    RegexAst ast = parse(p);
    Pnfa th = thompson_pnfa(ast);
    Pnfa jv = java_pnfa(ast);
    Nfa nth = underlying_nfa(th);
    Nfa njv = underlying_nfa(jv);
    for (const Word& w : words) {
      bool expect = oracle_match(ast, w);
      CAPTURE(p);
      CAPTURE(word_to_string(w));
      CHECK(nfa_membership(nth, w) == expect);
      CHECK(nfa_membership(njv, w) == expect);
      CHECK(succeeds(btr(th, w)) == expect);
      CHECK(succeeds(btr(jv, w)) == expect);
    }
  }
}

TEST_CASE("short accepting run counts on known cases") {
  // (a|a) has two short accepting runs on "a".
  Nfa n = underlying_nfa(java_pnfa(parse("a|a")));
  CHECK(count_short_accepting_runs(n, to_word("a")).count == 2);

  // a* is unambiguous.
  Nfa st = underlying_nfa(java_pnfa(parse("a*")));
  for (int k = 0; k <= 5; ++k) {
    Word w(static_cast<size_t>(k), 'a');
    CHECK(count_short_accepting_runs(st, w).count == 1);
  }

  // (a|a)* has 2^n short accepting runs on a^n.
  Nfa dbl = underlying_nfa(java_pnfa(parse("(a|a)*")));
  for (int k = 0; k <= 6; ++k) {
    Word w(static_cast<size_t>(k), 'a');
    CHECK(count_short_accepting_runs(dbl, w).count == (1u << k));
  }
}
