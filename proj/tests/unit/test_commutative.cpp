#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "csync/commutative.hpp"
#include "csync/errors.hpp"
#include "csync/generators.hpp"
#include "csync/graph.hpp"
#include "csync/regex.hpp"
#include "oracles.hpp"

using namespace csync;
using oracle::for_each_word;

namespace {

// Complete weakly acyclic commutative automaton from a random quotient, with
// a random start and random finals.
Pdfa random_wac(std::size_t n, std::size_t k, SplitMix64& rng) {
  const Dcsa c = scc_quotient(random_commutative(n, k, Seed{rng.next()}));
  std::vector<State> finals;
  for (State q = 0; q < c.size(); ++q) {
    if (rng.below(2) == 0) finals.push_back(q);
  }
  return Pdfa(c, static_cast<State>(rng.below(c.size())), finals);
}

}  // namespace

TEST(Commutative, Detection) {
  EXPECT_TRUE(is_commutative(Dcsa(Alphabet::of("a"), 3, {1, 2, 0})));
  EXPECT_TRUE(is_commutative(figure_commutative()));
  EXPECT_FALSE(is_commutative(cerny(4)));
  const Alphabet ab = Alphabet::of("ab");
  // a defined and b undefined on one side only.
  EXPECT_FALSE(is_commutative(Pdfa(ab, 2, {1, kNoState, kNoState, 1}, 0, {1})));
  EXPECT_TRUE(is_commutative(Pdfa::universal(ab)));
}

TEST(WeaklyAcyclic, Detection) {
  EXPECT_FALSE(is_weakly_acyclic(cerny(3)));
  EXPECT_TRUE(is_weakly_acyclic(Dcsa(Alphabet::of("a"), 1, {0})));
  EXPECT_TRUE(is_weakly_acyclic(scc_quotient(figure_commutative())));
  EXPECT_TRUE(is_weakly_acyclic(compile_regex("ab*a", binary_alphabet())));
  EXPECT_FALSE(is_weakly_acyclic(compile_regex("(ab)*", binary_alphabet())));
}

TEST(Quotient, FigureHasFiveComponents) {
  const Dcsa fig = figure_commutative();
  EXPECT_EQ(scc_decompose(fig).size(), 5u);
  const Dcsa q = scc_quotient(fig);
  EXPECT_EQ(q.size(), 5u);
  EXPECT_TRUE(is_commutative(q));
  EXPECT_THROW(scc_quotient(cerny(4)), PreconditionError);
}

TEST(Quotient, TopologicalNumbering) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Dcsa q = scc_quotient(random_commutative(6, 2, Seed{s}));
    for (State p = 0; p < q.size(); ++p) {
      for (Letter x = 0; x < q.letters(); ++x) EXPECT_GE(q.next(p, x), p);
    }
  }
}

TEST(Quotient, WeaklyAcyclicInputIsKeptUpToRenaming) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Dcsa q = scc_quotient(random_commutative(6, 2, Seed{s}));
    const Dcsa qq = scc_quotient(q);
    ASSERT_EQ(qq.size(), q.size());
    std::vector<State> perm(q.size());
    std::iota(perm.begin(), perm.end(), State{0});
    bool isomorphic = false;
    do {
      bool ok = true;
      for (State p = 0; p < q.size() && ok; ++p) {
        for (Letter x = 0; x < 2; ++x) ok = ok && perm[q.next(p, x)] == qq.next(perm[p], x);
      }
      isomorphic = ok;
    } while (!isomorphic && std::next_permutation(perm.begin(), perm.end()));
    EXPECT_TRUE(isomorphic) << s;
  }
}

// The equivalence is claimed for synchronizing inputs only.
TEST(Quotient, SameSynchronizingWords) {
  std::size_t checked = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Dcsa a = random_commutative(2 + s % 5, 2, Seed{s});
    if (!is_synchronizing(a, Witness::kSkip).synchronizing) continue;
    ++checked;
    const Dcsa q = scc_quotient(a);
    for_each_word(2, 8, [&](const Word& w) {
      ASSERT_EQ(oracle::naive_synchronizes(a, w), oracle::naive_synchronizes(q, w));
    });
  }
  EXPECT_GT(checked, 50u);
}

// Without synchronization the quotient may gain reset words: a lone 2-cycle
// becomes one state that the empty word already resets.
TEST(Quotient, NonSynchronizingInputMayGainResetWords) {
  const Dcsa swap(Alphabet::of("a"), 2, {1, 0});
  EXPECT_FALSE(oracle::naive_synchronizes(swap, {}));
  EXPECT_TRUE(oracle::naive_synchronizes(scc_quotient(swap), {}));
}

TEST(CommutativeSync, AgreesWithPairCollapse) {
  EXPECT_TRUE(commutative_is_synchronizing(figure_commutative()).synchronizing);
  EXPECT_FALSE(commutative_is_synchronizing(figure_commutative_nonsync()).synchronizing);
  EXPECT_TRUE(commutative_is_synchronizing(Dcsa(Alphabet::of("a"), 1, {0})).synchronizing);
  for (std::uint64_t s = 0; s < 500; ++s) {
    const Dcsa a = random_commutative(1 + s % 7, 1 + s % 3, Seed{s});
    const SyncReport r = commutative_is_synchronizing(a);
    EXPECT_EQ(r.synchronizing, is_synchronizing(a, Witness::kSkip).synchronizing);
    EXPECT_EQ(r.witness.has_value(), r.synchronizing);
    if (r.synchronizing) {
      const auto img = oracle::naive_image(a, *r.witness);
      ASSERT_EQ(img.size(), 1u);
      EXPECT_EQ(*img.begin(), *r.sync_state);
      EXPECT_TRUE(oracle::is_sink(a, *r.sync_state));
    }
  }
  EXPECT_THROW(commutative_is_synchronizing(cerny(3)), PreconditionError);
}

TEST(ThresholdVector, Examples) {
  const Alphabet ab = binary_alphabet();
  EXPECT_EQ(threshold_vector(parse_word("aabba", ab), 3, 2).counts, (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(threshold_vector({}, 4, 2).counts, (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(threshold_vector(parse_word("bbb", ab), 2, 2).counts, (std::vector<std::size_t>{0, 1}));
}

TEST(AcceptedVectorSet, EncodingIsMixedRadixFirstLetterMostSignificant) {
  AcceptedVectorSet s(3, 2);
  EXPECT_EQ(s.capacity(), 9u);
  EXPECT_EQ(s.encode({{1, 2}}), 5u);
  EXPECT_EQ(s.decode(5), (ThresholdVector{{1, 2}}));
  s.insert({{2, 0}});
  s.insert_index(1);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.vectors(), (std::vector<ThresholdVector>{{{0, 1}}, {{2, 0}}}));
  AcceptedVectorSet t = AcceptedVectorSet::all(3, 2);
  t.intersect_with(s);
  EXPECT_EQ(t, s);
  AcceptedVectorSet u(3, 2);
  u.unite_with(s);
  EXPECT_EQ(u, s);
}

TEST(CountingAutomaton, SmallExamples) {
  const Alphabet ab = binary_alphabet();
  AcceptedVectorSet zero(1, 2);
  zero.insert({{0, 0}});
  const Pdfa one = counting_automaton(1, ab, zero);
  EXPECT_EQ(one.size(), 1u);
  EXPECT_TRUE(one.accepts(parse_word("abab", ab)));

  AcceptedVectorSet both(2, 2);
  both.insert({{1, 1}});
  const Pdfa b = counting_automaton(2, ab, both);
  EXPECT_EQ(b.size(), 4u);
  EXPECT_TRUE(b.complete());
  for_each_word(2, 6, [&](const Word& w) {
    const bool has_a = std::count(w.begin(), w.end(), 0) > 0;
    const bool has_b = std::count(w.begin(), w.end(), 1) > 0;
    EXPECT_EQ(b.accepts(w), has_a && has_b);
  });
}

TEST(AcceptedVectors, PreimageEquivalence) {
  SplitMix64 rng(Seed{41});
  for (int i = 0; i < 60; ++i) {
    const Pdfa b = random_wac(1 + rng.below(5), 2, rng);
    const std::size_t n = b.size() + rng.below(2);
    const AcceptedVectorSet e = accepted_vectors(b, n);
    EXPECT_EQ(e, accepted_vectors(b, n, 3));
    const Pdfa counter = counting_automaton(n, b.alphabet(), e);
    EXPECT_EQ(counter.size(), static_cast<std::size_t>(std::pow(n, 2)));
    for_each_word(2, 2 * n, [&](const Word& w) {
      ASSERT_EQ(b.accepts(w), e.contains(threshold_vector(w, n, 2)));
      ASSERT_EQ(b.accepts(w), counter.accepts(w));
    });
  }
}

TEST(AcceptedVectors, TrivialLanguages) {
  const Alphabet ab = binary_alphabet();
  EXPECT_EQ(accepted_vectors(Pdfa::universal(ab), 3).size(), 9u);
  const Pdfa none(ab, 1, {0, 0}, 0, {});
  EXPECT_TRUE(accepted_vectors(none, 3).empty());
}

TEST(AcceptedVectors, Preconditions) {
  const Alphabet ab = binary_alphabet();
  EXPECT_THROW(accepted_vectors(compile_regex("ab*a", ab), 4), PreconditionError);  // partial
  EXPECT_THROW(accepted_vectors(Pdfa(cerny(3), 0, {0}), 3), PreconditionError);
  EXPECT_THROW(accepted_vectors(Pdfa(scc_quotient(figure_commutative()), 0, {0}), 2),
               PreconditionError);
}

TEST(IntersectWac, StateCountAndMembership) {
  SplitMix64 rng(Seed{43});
  for (int i = 0; i < 30; ++i) {
    const std::size_t k = 1 + rng.below(3);
    std::vector<Pdfa> parts;
    std::size_t m = 1;
    for (std::size_t j = 0, count = 1 + rng.below(3); j < count; ++j) {
      parts.push_back(random_wac(1 + rng.below(4), k, rng));
      m = std::max(m, parts.back().size());
    }
    const Pdfa x = intersect_wac(parts, m);
    EXPECT_EQ(x.size(), static_cast<std::size_t>(std::pow(m, k)));
    EXPECT_EQ(x, intersect_wac(parts, m, 4));
    for_each_word(k, std::min<std::size_t>(2 * m, 7), [&](const Word& w) {
      bool all = true;
      for (const Pdfa& p : parts) all = all && p.accepts(w);
      ASSERT_EQ(x.accepts(w), all);
    });
  }
}

TEST(IntersectWac, Errors) {
  EXPECT_THROW(intersect_wac({}, 2), PreconditionError);
  EXPECT_THROW(intersect_wac({Pdfa::universal(Alphabet::of("ab")), Pdfa::universal(Alphabet::of("abc"))}, 2),
               AlphabetMismatch);
}

TEST(SyncLanguage, MatchesEnumeration) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const Dcsa a = random_commutative(2 + s % 4, 2, Seed{s});
    const Pdfa lang = sync_language_automaton(a);
    const Pdfa fast = sync_language_automaton(a, {.minimal_states_only = true});
    const std::size_t m = scc_quotient(a).size();
    const bool sync = is_synchronizing(a, Witness::kSkip).synchronizing;
    if (sync) {
      EXPECT_EQ(lang.size(), m * m);
    } else {
      EXPECT_EQ(lang, Pdfa::empty_language(a.alphabet()));
    }
    for_each_word(2, std::max<std::size_t>(2 * a.size(), 6), [&](const Word& w) {
      ASSERT_EQ(lang.accepts(w), oracle::naive_synchronizes(a, w));
      ASSERT_EQ(fast.accepts(w), lang.accepts(w));
    });
  }
}

TEST(ConstrainedCommutative, Figures) {
  const Dcsa fig = figure_commutative();
  const auto w = constrained_sync_commutative(fig, Pdfa::universal(fig.alphabet()));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->size(), 3u);
  const Dcsa non = figure_commutative_nonsync();
  EXPECT_FALSE(constrained_sync_commutative(non, Pdfa::universal(non.alphabet())).has_value());
  EXPECT_FALSE(constrained_sync_commutative(non, compile_regex("a*b", non.alphabet())).has_value());
}

TEST(ConstrainedCommutative, AgreesWithOracle) {
  const Alphabet ab = binary_alphabet();
  const std::vector<Pdfa> constraints = {
      compile_regex("a(a+b)*", ab), compile_regex("ab*a", ab),  compile_regex("b(aa+ba)*", ab),
      compile_regex("(a+b)*b", ab), compile_regex("(ab)*", ab), compile_regex("b*a*b", ab)};
  for (std::uint64_t s = 0; s < 150; ++s) {
    const Dcsa a = random_commutative(1 + s % 6, 2, Seed{1000 + s});
    for (const Pdfa& b : constraints) {
      const auto got = constrained_sync_commutative(a, b);
      const auto want = constrained_sync_oracle(a, b);
      ASSERT_EQ(got.has_value(), want.has_value());
      if (got) {
        EXPECT_TRUE(b.accepts(*got));
        EXPECT_TRUE(oracle::naive_synchronizes(a, *got));
        EXPECT_EQ(got->size(), want->size());
      }
    }
  }
  EXPECT_THROW(constrained_sync_commutative(cerny(3), Pdfa::universal(ab)), PreconditionError);
}

TEST(ConstrainedCommutative, ThreeLetters) {
  const Alphabet abc = first_letters(3);
  const std::vector<Pdfa> constraints = {compile_regex("a(b+c)*", abc), compile_regex("(a+b)*c", abc),
                                         compile_regex("ab*c", abc)};
  for (std::uint64_t s = 0; s < 80; ++s) {
    const Dcsa a = random_commutative(1 + s % 5, 3, Seed{5000 + s});
    for (const Pdfa& b : constraints) {
      EXPECT_EQ(constrained_sync_commutative(a, b, {.jobs = 2}).has_value(),
                constrained_sync_oracle(a, b).has_value());
    }
  }
}
