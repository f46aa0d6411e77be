#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "redos/construct.hpp"
#include "redos/flatten.hpp"
#include "redos/transducer.hpp"
#include "support/oracle.hpp"

using namespace redos;
using testsupport::random_pattern;
using testsupport::random_word;

TEST_CASE("decorate") {
  CHECK(decorate({}) == Word{kEnd, kEnd});
  CHECK(decorate(to_word("ab")) ==
        Word{kEnd, kFlat, 'a', kFlat, 'b', kEnd});
}

TEST_CASE("build_stt requires a flattened automaton") {
  Pnfa a = thompson_pnfa(parse("(a|b)*"));
  CHECK_THROWS_AS(build_stt(a), std::invalid_argument);
  CHECK_NOTHROW(build_stt(flatten(a).pnfa));
}

TEST_CASE("transducer output equals the backtracking run") {
  std::mt19937 rng(31);
  int checked = 0;
  for (int round = 0; round < 120; ++round) {
    std::string p = random_pattern(rng, 6, "ab");
    RegexAst ast = parse(p);
    std::string sigma;
    for (Symbol s : ast.alphabet()) sigma.push_back(static_cast<char>(s));
    for (Construction c : {Construction::Thompson, Construction::Java}) {
      Pnfa f = flatten(construct(ast, c)).pnfa;
      Stt stt = build_stt(f);
      for (int k = 0; k < 6; ++k) {
        // The transducer is only defined over the automaton's alphabet.
        Word w = sigma.empty() ? Word{} : random_word(rng, 4, sigma);
        SttRunResult r = run_stt(stt, decorate(w));
        BtrTree t = btr(f, w);
        CAPTURE(p);
        CAPTURE(word_to_string(w));
        REQUIRE(!r.budget_exceeded);
        REQUIRE(r.outputs.size() == 1);
        CHECK(tree_signature(r.outputs[0]) == tree_signature(t));
        ++checked;
      }
    }
  }
  CHECK(checked >= 1000);
}

TEST_CASE("extraneous padding does not change the output") {
  RegexAst ast = parse("(a|b)*ab");
  Pnfa f = flatten(java_pnfa(ast)).pnfa;
  Stt stt = build_stt(f);
  Word w = to_word("abab");
  std::string expect = tree_signature(btr(f, w));

  Word padded;
  padded.push_back(kEnd);
  padded.push_back(kFlat);
  for (Symbol s : w) {
    padded.push_back(kFlat);
    padded.push_back(kFlat);
    padded.push_back(s);
  }
  padded.push_back(kFlat);
  padded.push_back(kEnd);
  SttRunResult r = run_stt(stt, padded);
  REQUIRE(r.outputs.size() == 1);
  CHECK(tree_signature(r.outputs[0]) == expect);
}

TEST_CASE("wrong decorations produce nothing or the same tree") {
  RegexAst ast = parse("a(b|a)*");
  Pnfa f = flatten(java_pnfa(ast)).pnfa;
  Stt stt = build_stt(f);
  Word w = to_word("aba");
  std::string expect = tree_signature(btr(f, w));

  // No leading end marker.
  Word bad1{kFlat, 'a', kFlat, 'b', kFlat, 'a', kEnd};
  CHECK(run_stt(stt, bad1).outputs.empty());

  // An end marker in the middle makes branches finish early; anything
  // produced is the backtracking tree of the corresponding prefix.
  Word bad2{kEnd, kFlat, 'a', kEnd, kFlat, 'b', kFlat, 'a', kEnd};
  SttRunResult mid = run_stt(stt, bad2);
  for (const OutputTree& t : mid.outputs)
    CHECK(tree_signature(t) == tree_signature(btr(f, to_word("a"))));

  // Missing padding: either empty or the correct tree.
  Word bad3{kEnd, 'a', 'b', 'a', kEnd};
  SttRunResult r = run_stt(stt, bad3);
  for (const OutputTree& t : r.outputs)
    CHECK(tree_signature(t) == expect);
}

TEST_CASE("empty input word") {
  for (const char* p : {"a*", "@eps", "a", "@empty"}) {
    Pnfa f = flatten(java_pnfa(parse(p))).pnfa;
    Stt stt = build_stt(f);
    SttRunResult r = run_stt(stt, decorate({}));
    REQUIRE(r.outputs.size() == 1);
    CHECK(tree_signature(r.outputs[0]) == tree_signature(btr(f, {})));
  }
}

TEST_CASE("budget exhaustion is reported") {
  Pnfa f = flatten(java_pnfa(parse("(a|a)*"))).pnfa;
  Stt stt = build_stt(f);
  Word w = to_word(std::string(30, 'a') + "b");
  SttRunResult r = run_stt(stt, decorate(w), 2000);
  CHECK(r.budget_exceeded);
}
