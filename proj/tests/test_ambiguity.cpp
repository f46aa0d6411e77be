#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "redos/ambiguity.hpp"
#include "redos/construct.hpp"
#include "redos/flatten.hpp"
#include "support/oracle.hpp"

using namespace redos;
using testsupport::random_pattern;
using testsupport::random_word;

namespace {

Nfa failure_nfa(const char* pattern, Construction c) {
  return a_construction(
      underlying_nfa(failure_pnfa(construct(parse(pattern), c))));
}

}  // namespace

TEST_CASE("failure_pnfa clears accepting states") {
  Pnfa a = java_pnfa(parse("(a|b)*ab"));
  Pnfa f = failure_pnfa(a);
  for (int q = 0; q < f.num_states; ++q) CHECK(!f.is_final(q));
  CHECK(f.num_states == a.num_states);
}

TEST_CASE("a_construction adds an accepting sink") {
  Nfa n = underlying_nfa(failure_pnfa(java_pnfa(parse("a*b"))));
  Nfa an = a_construction(n);
  int z = an.num_states - 1;
  CHECK(an.num_states == n.num_states + 1);
  for (int q = 0; q < an.num_states; ++q)
    CHECK(an.is_final(q) == (q == z));
  for (int q = 0; q < z; ++q) CHECK(an.eps[static_cast<size_t>(q)].count(z));
  for (Symbol s : an.alphabet)
    CHECK(an.delta[static_cast<size_t>(z)].at(s).count(z));
  // every word is accepted by the sink
  CHECK(nfa_membership(an, to_word("bbba")));
  CHECK(nfa_membership(an, {}));
}

TEST_CASE("trim_reachable drops unreachable states") {
  Nfa n;
  n.num_states = 3;
  n.names = {"s0", "s1", "dead"};
  n.alphabet = {'a'};
  n.q0 = 0;
  n.delta.resize(3);
  n.eps.resize(3);
  n.final_states = {false, true, true};
  n.delta[0]['a'] = {1};
  n.delta[2]['a'] = {1};
  TrimResult t = trim_reachable(n);
  CHECK(t.nfa.num_states == 2);
  CHECK(t.state_map[2] == -1);
  CHECK(t.state_map[0] == 0);
  CHECK(t.nfa.is_final(t.state_map[1]));
}

TEST_CASE("epsilon scc quotient") {
  // Jp((a*)*) has a two-state epsilon cycle between the star loop states.
  Nfa n = underlying_nfa(failure_pnfa(java_pnfa(parse("(a*)*"))));
  SccQuotient sq = epsilon_scc_quotient(n);
  CHECK(sq.n2.num_states < n.num_states);
  int multi = 0;
  for (size_t c = 0; c < sq.category.size(); ++c)
    if (sq.category[c] == SccQuotient::Category::Multi) {
      ++multi;
      CHECK(sq.in_z[c]);
    }
  CHECK(multi == 1);
  // quotient epsilon graph is acyclic and self-loop free
  for (int c = 0; c < sq.n2.num_states; ++c)
    CHECK(!sq.n2.eps[static_cast<size_t>(c)].count(c));

  // epsilon-acyclic automata quotient to themselves
  Nfa flat_n = underlying_nfa(failure_pnfa(java_pnfa(parse("(a|b)*ab"))));
  SccQuotient id = epsilon_scc_quotient(flat_n);
  CHECK(id.n2.num_states == flat_n.num_states);
  for (auto cat : id.category) CHECK(cat == SccQuotient::Category::SingleNoLoop);

  // a single state with an epsilon self-loop is category (b)
  Nfa loop;
  loop.num_states = 1;
  loop.names = {"s"};
  loop.q0 = 0;
  loop.delta.resize(1);
  loop.eps = {{0}};
  loop.final_states = {true};
  SccQuotient lq = epsilon_scc_quotient(loop);
  CHECK(lq.category[0] == SccQuotient::Category::SingleLoop);
  CHECK(lq.in_z[0]);
  CHECK(lq.n2.eps[0].empty());
}

TEST_CASE("has_eda examples") {
  EdaWitness w;
  CHECK(has_eda(failure_nfa("(a|a)*", Construction::Java), &w));
  CHECK(w.word == to_word("a"));
  CHECK(w.prefix.empty());

  CHECK(!has_eda(failure_nfa("ab", Construction::Java)));
  CHECK(!has_eda(failure_nfa("a*", Construction::Java)));
  CHECK(!has_eda(failure_nfa("a*a*", Construction::Thompson)));
  CHECK(has_eda(failure_nfa("(a*)*", Construction::Thompson)));

  // a deterministic automaton never has EDA
  Nfa dfa;
  dfa.num_states = 2;
  dfa.names = {"s0", "s1"};
  dfa.alphabet = {'a', 'b'};
  dfa.q0 = 0;
  dfa.delta.resize(2);
  dfa.eps.resize(2);
  dfa.final_states = {false, true};
  dfa.delta[0]['a'] = {1};
  dfa.delta[1]['b'] = {0};
  dfa.delta[1]['a'] = {1};
  CHECK(!has_eda(dfa));
}

TEST_CASE("ida_degree examples") {
  CHECK(ida_degree(failure_nfa("a*", Construction::Java)) == 0);
  CHECK(ida_degree(failure_nfa("a*a*", Construction::Java)) == 1);
  CHECK(ida_degree(failure_nfa("a*a*a*", Construction::Java)) == 2);
  CHECK(ida_degree(failure_nfa("ab", Construction::Java)) == 0);
  CHECK_THROWS_AS(ida_degree(failure_nfa("(a|a)*", Construction::Java)),
                  std::logic_error);
}

TEST_CASE("classification of the standard examples") {
  auto verdict = [](const char* p, Construction c) {
    return classify_failure_backtracking(construct(parse(p), c));
  };
  for (Construction c : {Construction::Java, Construction::Thompson}) {
    CHECK(verdict("(a|a)*", c).exponential);
    CHECK(!verdict("a*", c).exponential);
    CHECK(verdict("a*", c).degree == 0);
    CHECK(!verdict("a*a*", c).exponential);
    CHECK(verdict("a*a*", c).degree == 1);
    CHECK(!verdict("a*a*a*", c).exponential);
    CHECK(verdict("a*a*a*", c).degree == 2);
    CHECK(!verdict("ab", c).exponential);
    CHECK(!verdict("@empty", c).exponential);
    CHECK(!verdict("@eps", c).exponential);
  }
  // nested stars: exponential for the Thompson style, linear for the
  // Java style (its counters cut the re-entry path)
  CHECK(verdict("(a*)*", Construction::Thompson).exponential);
  CHECK(!verdict("(a*)*", Construction::Java).exponential);
  CHECK(verdict("(a*)*", Construction::Java).degree == 0);
  CHECK(!verdict("(a|@eps)*", Construction::Java).exponential);
  CHECK(verdict("(a|a)*", Construction::Java).witness.has_value());
}

TEST_CASE("model path counts equal btr state nodes on flattened automata") {
  std::mt19937 rng(41);
  int tested = 0;
  for (int round = 0; round < 150; ++round) {
    std::string p = random_pattern(rng, 6, "ab");
    RegexAst ast = parse(p);
    std::string sigma;
    for (Symbol s : ast.alphabet()) sigma.push_back(static_cast<char>(s));
    for (Construction c : {Construction::Java, Construction::Thompson}) {
      Pnfa flat = flatten(failure_pnfa(construct(ast, c))).pnfa;
      RunModel m = failure_run_model(flat, 1 << 28);
      for (int k = 0; k < 4; ++k) {
        Word w = sigma.empty() ? Word{} : random_word(rng, 5, sigma);
        BtrTree t = btr(flat, w, 300000);
        if (!t.complete) continue;
        CAPTURE(p);
        CAPTURE(word_to_string(w));
        CHECK(model_path_count(m, w) == t.state_nodes);
        ++tested;
      }
    }
  }
  CHECK(tested >= 1000);
}

TEST_CASE("dichotomy and flattening stability on a random corpus") {
  std::mt19937 rng(43);
  for (int round = 0; round < 120; ++round) {
    std::string p = random_pattern(rng, 7, "ab");
    for (Construction c : {Construction::Java, Construction::Thompson}) {
      Pnfa a = construct(parse(p), c);
      BacktrackClass b1 = classify_failure_backtracking(a);
      BacktrackClass b2 = classify_failure_backtracking(flatten(a).pnfa);
      CAPTURE(p);
      CHECK(b1.exponential == b2.exponential);
      if (!b1.exponential) CHECK(b1.degree == b2.degree);
      if (b1.exponential) CHECK(b1.witness.has_value());
      if (b1.exponential) CHECK(!b1.witness->word.empty());
    }
  }
}

TEST_CASE("attack strings") {
  Pnfa aa = java_pnfa(parse("(a|a)*"));
  BacktrackClass cls = classify_failure_backtracking(aa);
  auto at = attack_strings(cls, aa);
  REQUIRE(at.has_value());
  CHECK(at->prefix.empty());
  CHECK(at->pump == to_word("a"));
  CHECK(at->suffix == to_word("b"));  // fresh symbol outside the alphabet
  REQUIRE(at->sizes.size() >= 5);
  int run = 0, best = 0;
  for (size_t i = 1; i < at->sizes.size(); ++i) {
    if (static_cast<double>(at->sizes[i]) >=
        1.5 * static_cast<double>(at->sizes[i - 1]))
      best = std::max(best, ++run);
    else
      run = 0;
  }
  CHECK(best >= 4);

  Pnfa astar2 = thompson_pnfa(parse("(a*)*"));
  auto at2 = attack_strings(classify_failure_backtracking(astar2), astar2);
  REQUIRE(at2.has_value());
  CHECK(!at2->pump.empty());

  // polynomial verdicts carry no attack
  Pnfa poly = java_pnfa(parse("a*a*"));
  CHECK(!attack_strings(classify_failure_backtracking(poly), poly).has_value());
}

TEST_CASE("exponential verdicts admit validated attacks on a random corpus") {
  std::mt19937 rng(47);
  int found = 0, checked = 0;
  for (int round = 0; round < 200 && checked < 25; ++round) {
    std::string p = random_pattern(rng, 7, "ab");
    for (Construction c : {Construction::Java, Construction::Thompson}) {
      Pnfa a = construct(parse(p), c);
      BacktrackClass cls = classify_failure_backtracking(a);
      if (!cls.exponential) continue;
      ++checked;
      CAPTURE(p);
      if (attack_strings(cls, a).has_value()) ++found;
    }
  }
  CHECK(checked >= 10);
  // The witness-derived family must pump in the vast majority of cases.
  CHECK(found >= checked - 1);
}
