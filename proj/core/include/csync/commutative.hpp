#pragma once

#include <optional>
#include <vector>

#include "csync/automaton.hpp"
#include "csync/sync.hpp"

namespace csync {

/// δ(q, xy) = δ(q, yx) for every state and letter pair. For a Pdfa both sides
/// must agree including definedness.
bool is_commutative(const Dcsa& a);
bool is_commutative(const Pdfa& b);

/// Every strongly connected component is a single state.
bool is_weakly_acyclic(const Dcsa& a);
bool is_weakly_acyclic(const Pdfa& b);

/// Automaton on the strongly connected components of a commutative A. States
/// are numbered in topological order, so every transition goes to an equal or
/// larger state. Throws PreconditionError if A is not commutative.
Dcsa scc_quotient(const Dcsa& a);

/// Decision by the shape of the component DAG: the topologically last
/// component must be a single state reachable from every component. The
/// witness is a_1^{m−1}⋯a_k^{m−1} with m the number of components; it is not
/// shortest. Throws PreconditionError if A is not commutative.
SyncReport commutative_is_synchronizing(const Dcsa& a);

/// ψ_n(u): letter counts of u, each saturated at n−1.
struct ThresholdVector {
  std::vector<std::size_t> counts;
  friend bool operator==(const ThresholdVector&, const ThresholdVector&) = default;
  friend auto operator<=>(const ThresholdVector&, const ThresholdVector&) = default;
};

ThresholdVector threshold_vector(const Word& w, std::size_t n, std::size_t k);

/// Subset of {0,…,n−1}^k stored as a bitmap in mixed radix n, with the first
/// letter's count as the most significant digit.
class AcceptedVectorSet {
 public:
  AcceptedVectorSet(std::size_t n, std::size_t k);
  static AcceptedVectorSet all(std::size_t n, std::size_t k);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t capacity() const noexcept { return member_.size(); }
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  std::size_t encode(const ThresholdVector& v) const;
  ThresholdVector decode(std::size_t index) const;

  bool contains(const ThresholdVector& v) const { return member_[encode(v)] != 0; }
  bool contains_index(std::size_t index) const { return member_[index] != 0; }
  void insert(const ThresholdVector& v) { member_[encode(v)] = 1; }
  void insert_index(std::size_t index) { member_[index] = 1; }
  /// In increasing index order.
  std::vector<ThresholdVector> vectors() const;

  AcceptedVectorSet& intersect_with(const AcceptedVectorSet& other);
  AcceptedVectorSet& unite_with(const AcceptedVectorSet& other);

  friend bool operator==(const AcceptedVectorSet&, const AcceptedVectorSet&) = default;

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<char> member_;
};

/// Complete automaton on {0,…,n−1}^k counting letters up to n−1; state ids are
/// the AcceptedVectorSet indices, the start is the zero vector and the final
/// states are `accepted`. Recognizes ψ_n⁻¹(accepted).
Pdfa counting_automaton(std::size_t n, const Alphabet& alphabet,
                        const AcceptedVectorSet& accepted);

/// E = { ψ_n(u) : u = a_1^{c_1}⋯a_k^{c_k} ∈ L(b), c_j < n }. Requires b complete,
/// commutative and weakly acyclic with at most n states; throws
/// PreconditionError otherwise. `jobs` > 1 splits the enumeration by the first
/// letter's count across threads.
AcceptedVectorSet accepted_vectors(const Pdfa& b, std::size_t n, std::size_t jobs = 1);

/// Counting automaton of the intersection of all E_i; recognizes the
/// intersection of the input languages. Throws PreconditionError on an empty
/// list or invalid member, AlphabetMismatch on differing alphabets.
Pdfa intersect_wac(const std::vector<Pdfa>& automata, std::size_t n, std::size_t jobs = 1);

struct SyncLanguageOptions {
  /// Intersect only over the states that no other state reaches.
  bool minimal_states_only = false;
  std::size_t jobs = 1;
};

/// Recognizes the synchronizing words of a commutative A: the intersection of
/// C_{q,{s}} over the quotient states q, where s is the quotient's sink. For a
/// non-synchronizing A the result is Pdfa::empty_language. Throws
/// PreconditionError if A is not commutative.
Pdfa sync_language_automaton(const Dcsa& a, SyncLanguageOptions options = {});

/// Lexicographically least shortest word in L(B) that synchronizes the
/// commutative A, found in the product of the sync language with B.
std::optional<Word> constrained_sync_commutative(const Dcsa& a, const Pdfa& b,
                                                 SyncLanguageOptions options = {});

}  // namespace csync
