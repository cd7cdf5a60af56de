#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "csync/automaton.hpp"

namespace csync {

/// Strongly connected components of an automaton graph and their condensation.
struct SccDecomposition {
  std::vector<std::size_t> component_of;        ///< state -> component id
  std::vector<std::vector<State>> components;   ///< sorted members per component
  std::vector<std::pair<std::size_t, std::size_t>> dag_edges;  ///< sorted, no self edges
  std::vector<std::size_t> topo_order;          ///< every component precedes those it reaches

  std::size_t size() const noexcept { return components.size(); }
  bool reaches_directly(std::size_t from, std::size_t to) const;
  /// Components without outgoing DAG edges.
  std::vector<std::size_t> sinks() const;
};

/// Tarjan low-link in one pass; iterative, so deep graphs are fine.
SccDecomposition scc_decompose(const Dcsa& a);
SccDecomposition scc_decompose(const Pdfa& b);

/// Reachable-pair product; L(result) = L(b1) ∩ L(b2). States numbered in BFS
/// discovery order from the start pair. Throws AlphabetMismatch.
Pdfa product(const Pdfa& b1, const Pdfa& b2);

/// True iff no final state is reachable from the start state.
bool is_empty(const Pdfa& b);

/// Lexicographically least among the shortest accepted words.
std::optional<Word> shortest_accepted_word(const Pdfa& b);

/// Shortest word leading from `from` into a final state, if any.
std::optional<Word> shortest_word_to_final(const Pdfa& b, State from);

/// States reachable from `from` (including itself).
std::vector<bool> reachable_from(const Pdfa& b, State from);

/// Restriction to states that are reachable and co-reachable, renumbered in BFS
/// order from the start. An empty language yields Pdfa::empty_language.
Pdfa trim(const Pdfa& b);

}  // namespace csync
