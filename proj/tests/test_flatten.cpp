#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "redos/construct.hpp"
#include "redos/flatten.hpp"
#include "support/oracle.hpp"

using namespace redos;
using testsupport::oracle_match;
using testsupport::random_pattern;

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

void check_flat(const Pnfa& a) {
  for (int q = 0; q < a.num_states; ++q) {
    std::map<int, int> count;
    for (int t : a.delta2[static_cast<size_t>(q)]) {
      CHECK(!a.is_q2[t]);
      CHECK(++count[t] <= 2);
    }
  }
}

}  // namespace

TEST_CASE("flattening of a* keeps the empty word") {
  for (auto ctor : {thompson_pnfa, java_pnfa}) {
    Pnfa a = ctor(parse("a*"));
    Pnfa f = flatten(a).pnfa;
    check_flat(f);
    CHECK(succeeds(btr(f, {})));
    CHECK(succeeds(btr(f, to_word("aaa"))));
    CHECK(!succeeds(btr(f, to_word("ab"))));
  }
}

TEST_CASE("flattening breaks epsilon cycles of (a*)*") {
  Pnfa a = thompson_pnfa(parse("(a*)*"));
  FlattenResult r = flatten(a, true);
  check_flat(r.pnfa);
  CHECK(!r.trace.empty());
  CHECK(succeeds(btr(r.pnfa, {})));
  CHECK(succeeds(btr(r.pnfa, to_word("aaaa"))));
  CHECK(!succeeds(btr(r.pnfa, to_word("b"))));
}

TEST_CASE("state map stays consistent") {
  Pnfa a = java_pnfa(parse("(a|b)*ab"));
  FlattenResult r = flatten(a);
  CHECK(r.state_map.size() == static_cast<size_t>(a.num_states));
  CHECK(r.state_map[static_cast<size_t>(a.q0)] == r.pnfa.q0);
  for (int q = 0; q < a.num_states; ++q) {
    int m = r.state_map[static_cast<size_t>(q)];
    if (m >= 0) CHECK(m < r.pnfa.num_states);
  }
}

TEST_CASE("language preserved and backtracking never larger") {
  std::mt19937 rng(23);
  std::vector<Word> words = all_words("ab", 4);
  int flattened = 0;
  for (int round = 0; round < 120; ++round) {
    std::string p = random_pattern(rng, 6, "ab");
    RegexAst ast = parse(p);
    for (Construction c : {Construction::Thompson, Construction::Java}) {
      Pnfa a = construct(ast, c);
      Pnfa f = flatten(a).pnfa;
      check_flat(f);
      ++flattened;
      Nfa nf = underlying_nfa(f);
      for (const Word& w : words) {
        bool expect = oracle_match(ast, w);
        CAPTURE(p);
        CAPTURE(word_to_string(w));
        CHECK(nfa_membership(nf, w) == expect);
        BtrTree tf = btr(f, w);
        BtrTree ta = btr(a, w);
        REQUIRE(tf.complete);
        REQUIRE(ta.complete);
        CHECK(succeeds(tf) == expect);
        CHECK(tf.total_nodes() <= ta.total_nodes());
      }
    }
  }
  CHECK(flattened >= 200);
}

TEST_CASE("flattening is idempotent") {
  std::mt19937 rng(29);
  for (int round = 0; round < 60; ++round) {
    RegexAst ast = parse(random_pattern(rng, 6, "ab"));
    Pnfa f1 = flatten(java_pnfa(ast)).pnfa;
    Pnfa f2 = flatten(f1).pnfa;
    CHECK(f1.num_states == f2.num_states);
    CHECK(f1.delta2 == f2.delta2);
    CHECK(f1.delta1 == f2.delta1);
    CHECK(f1.final_states == f2.final_states);
  }
}
