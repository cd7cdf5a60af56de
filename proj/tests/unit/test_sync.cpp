#include <gtest/gtest.h>

#include "csync/errors.hpp"
#include "csync/generators.hpp"
#include "csync/regex.hpp"
#include "csync/sync.hpp"
#include "oracles.hpp"

using namespace csync;

TEST(PairCollapse, CernyWitness) {
  for (std::size_t n = 2; n <= 12; ++n) {
    const SyncReport r = is_synchronizing(cerny(n));
    ASSERT_TRUE(r.synchronizing);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_LE(r.witness->size(), n * n * n);
    const auto img = oracle::naive_image(cerny(n), *r.witness);
    ASSERT_EQ(img.size(), 1u);
    EXPECT_EQ(*r.sync_state, *img.begin());
  }
}

TEST(PairCollapse, SkipModeLeavesWitnessEmpty) {
  const SyncReport r = is_synchronizing(cerny(30), Witness::kSkip);
  EXPECT_TRUE(r.synchronizing);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_FALSE(r.sync_state.has_value());
}

TEST(PairCollapse, TrivialAndNegativeCases) {
  const Dcsa one(Alphabet::of("a"), 1, {0});
  const SyncReport r = is_synchronizing(one);
  EXPECT_TRUE(r.synchronizing);
  EXPECT_EQ(r.witness, Word{});
  const Dcsa perm(Alphabet::of("a"), 3, {1, 2, 0});
  const SyncReport p = is_synchronizing(perm);
  EXPECT_FALSE(p.synchronizing);
  EXPECT_FALSE(p.witness.has_value());
  EXPECT_FALSE(p.sync_state.has_value());
}

TEST(PairCollapse, AgreesWithEnumerationOnRandomAutomata) {
  SplitMix64 rng(Seed{17});
  const Alphabet ab = Alphabet::of("ab");
  for (int i = 0; i < 400; ++i) {
    const std::size_t n = 1 + rng.below(5);
    const Dcsa a = oracle::random_dcsa(n, ab, rng);
    const SyncReport r = is_synchronizing(a);
    // Shortest reset words of 5-state automata have length at most 16.
    const auto brute = oracle::brute_shortest_sync(a, (n - 1) * (n - 1));
    EXPECT_EQ(r.synchronizing, brute.has_value());
    if (r.synchronizing) EXPECT_TRUE(oracle::naive_synchronizes(a, *r.witness));
  }
}

TEST(ShortestSync, CernyLengthsAndLexLeast) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto w = shortest_sync_word(cerny(n));
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->size(), (n - 1) * (n - 1));
  }
  EXPECT_EQ(format_word(*shortest_sync_word(cerny(4)), binary_alphabet()), "abbbabbba");
}

TEST(ShortestSync, MatchesEnumeration) {
  SplitMix64 rng(Seed{19});
  const Alphabet ab = Alphabet::of("abc");
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng.below(4);
    const Dcsa a = oracle::random_dcsa(n, ab, rng);
    EXPECT_EQ(shortest_sync_word(a), oracle::brute_shortest_sync(a, (n - 1) * (n - 1)));
  }
}

TEST(ShortestSync, LargeStateCounts) {
  // Exercises the hashed visited stores (n > 16 and n > 64).
  const auto w20 = shortest_sync_word(cerny(20));
  ASSERT_TRUE(w20.has_value());
  EXPECT_EQ(w20->size(), 361u);
  // b cycles 70 states, a sends everything to 0.
  std::vector<State> table;
  for (State q = 0; q < 70; ++q) table.insert(table.end(), {0, (q + 1) % 70});
  const Dcsa big(binary_alphabet(), 70, table);
  EXPECT_EQ(shortest_sync_word(big), Word{0});
}

TEST(ShortestSync, BudgetExceeded) {
  EXPECT_THROW(shortest_sync_word(cerny(10), SearchBudget{10}), BudgetExceeded);
}

TEST(ConstrainedOracle, MatchesEnumeration) {
  SplitMix64 rng(Seed{23});
  const Alphabet ab = Alphabet::of("ab");
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng.below(4);
    const Dcsa a = oracle::random_dcsa(n, ab, rng);
    const Pdfa b = oracle::random_pdfa(1 + rng.below(3), ab, rng, 25);
    const auto brute = oracle::brute_constrained(a, b, 12);
    const auto got = constrained_sync_oracle(a, b);
    if (got && got->size() > 12) {
      EXPECT_FALSE(brute.has_value());
    } else {
      EXPECT_EQ(got, brute);
    }
  }
}

TEST(ConstrainedOracle, Figures) {
  const Dcsa fig = figure_commutative();
  const auto w = constrained_sync_oracle(fig, Pdfa::universal(fig.alphabet()));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->size(), 3u);
  EXPECT_FALSE(constrained_sync_oracle(figure_commutative_nonsync(),
                                       Pdfa::universal(binary_alphabet())).has_value());
  EXPECT_FALSE(constrained_sync_oracle(fig, Pdfa::empty_language(fig.alphabet())).has_value());
}

TEST(ConstrainedOracle, AlphabetMismatch) {
  EXPECT_THROW(constrained_sync_oracle(cerny(3), Pdfa::universal(Alphabet::of("abc"))),
               AlphabetMismatch);
}

TEST(ConstrainedOracle, ParityOnSinkCycle) {
  const Pdfa b = compile_regex("b(a+bb)*", binary_alphabet());
  for (std::size_t n = 5; n <= 10; ++n) {
    EXPECT_EQ(constrained_sync_oracle(sink_cycle_automaton(n), b).has_value(), n % 2 == 0) << n;
  }
}

TEST(IdempotentCount, Bound) {
  const Dcsa c = cerny(5);
  EXPECT_TRUE(idempotent_count_check(c, *shortest_sync_word(c)));
  EXPECT_THROW(idempotent_count_check(c, Word{0}), PreconditionError);
  const Dcsa not_si(Alphabet::of("a"), 3, {0, 0, 0});
  EXPECT_THROW(idempotent_count_check(not_si, Word{0}), PreconditionError);
}

TEST(IdempotentCount, HoldsForAllShortWitnesses) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const Dcsa a = random_simple_idempotents(3 + s % 4, Seed{s});
    oracle::for_each_word(2, 9, [&](const Word& w) {
      if (oracle::naive_synchronizes(a, w)) EXPECT_TRUE(idempotent_count_check(a, w));
    });
  }
}
