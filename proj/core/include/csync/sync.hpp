#pragma once

#include <cstddef>
#include <optional>

#include "csync/automaton.hpp"

namespace csync {

/// Outcome of a synchronizability check. When built with a witness,
/// `witness` is present iff `synchronizing`, and δ(Q, witness) = {sync_state}.
struct SyncReport {
  bool synchronizing = false;
  std::optional<Word> witness;
  std::optional<State> sync_state;
};

/// Cap on explored (subset, constraint state) configurations.
struct SearchBudget {
  std::size_t max_subsets = std::size_t{1} << 22;
};

enum class Witness { kBuild, kSkip };

/// Pair-collapse check in O(|Σ||Q|²): every unordered pair must be mergeable.
/// With Witness::kBuild the collapse words are chained greedily (always the
/// pair of the current image with the shortest collapse word, ties broken by
/// the smaller pair) into a reset word of length at most n³. kSkip answers
/// the decision only, leaving witness and sync_state empty.
SyncReport is_synchronizing(const Dcsa& a, Witness mode = Witness::kBuild);

/// Breadth-first search over subsets reachable from Q. Returns the
/// lexicographically least shortest reset word, or nullopt if A is not
/// synchronizing. Throws BudgetExceeded when more than budget.max_subsets
/// subsets are discovered.
std::optional<Word> shortest_sync_word(const Dcsa& a, SearchBudget budget = {});

/// Breadth-first search over pairs (S, p) from (Q, p₀) along transitions
/// defined in B. Returns the lexicographically least shortest reset word of A
/// that lies in L(B), or nullopt if none exists. Throws AlphabetMismatch or
/// BudgetExceeded.
std::optional<Word> constrained_sync_oracle(const Dcsa& a, const Pdfa& b,
                                            SearchBudget budget = {});

/// Whether `w` contains at least n−1 occurrences of non-permutational
/// idempotent letters. Throws PreconditionError if A does not have simple
/// idempotents or `w` does not synchronize A.
bool idempotent_count_check(const Dcsa& a, const Word& w);

/// Convenience: |δ(Q, w)| = 1.
bool synchronizes(const Dcsa& a, const Word& w);

}  // namespace csync
