#pragma once

#include <cstdint>

#include "csync/automaton.hpp"

namespace csync {

struct Seed {
  std::uint64_t value = 0;
};

/// SplitMix64 (Steele, Lea, Flood 2014). Written out so that a seed produces
/// the same stream on every platform and in every port of these generators:
///
///     state += 0x9E3779B97F4A7C15
///     z = state
///     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///     return z ^ (z >> 31)
class SplitMix64 {
 public:
  explicit SplitMix64(Seed seed) noexcept : state_(seed.value) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return r % bound;
  }

 private:
  std::uint64_t state_;
};

/// Alphabet {a, b} used by every binary family below (a = 0, b = 1).
const Alphabet& binary_alphabet();

/// Černý automaton C_n: b is the cycle q -> q+1 mod n, a fixes every state
/// except 0 -> 1. Requires n ≥ 2.
Dcsa cerny(std::size_t n);

/// n−1 is a sink t, b cycles 0..n−2 and fixes t, a sends s = n−2 to t and
/// fixes everything else. Requires n ≥ 3.
Dcsa sink_cycle_automaton(std::size_t n);

/// b is the full cycle q -> q+1 mod n, a sends 0 to p and fixes everything
/// else; synchronizing iff gcd(n, p) = 1. Requires n ≥ 3, 0 < p < n.
Dcsa case2_automaton(std::size_t n, std::size_t p);

/// 7-state commutative synchronizing automaton with 5 strongly connected
/// components; "baa" is a shortest reset word.
Dcsa figure_commutative();

/// 7-state commutative automaton that is not synchronizing (its bottom
/// component is a 2-cycle under a).
Dcsa figure_commutative_nonsync();

/// Random commutative DCSA with n states over the first k letters of
/// "abcdefgh...". Letter actions are drawn one after another; each new action
/// is built by backtracking against all earlier ones under a node budget; if
/// every retry runs out, the action is a random product of powers of the
/// earlier actions instead. Large n therefore yields less varied samples.
Dcsa random_commutative(std::size_t n, std::size_t k, Seed seed);

/// Random binary automaton with simple idempotents: b a permutation, a merges
/// one random pair. A quarter of the samples use the sink-cycle shape and half
/// the rest make b a single n-cycle, so structured automata are common.
Dcsa random_simple_idempotents(std::size_t n, Seed seed);

/// Alphabet of the first k lowercase letters.
Alphabet first_letters(std::size_t k);

}  // namespace csync
