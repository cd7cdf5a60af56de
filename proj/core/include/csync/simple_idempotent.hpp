#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csync/automaton.hpp"
#include "csync/sync.hpp"

namespace csync {

enum class LetterClass { kPermutation, kSimpleIdempotent, kOther };

std::string_view to_string(LetterClass c);

/// Per-letter tags of a Dcsa.
struct LetterClasses {
  std::vector<LetterClass> tags;

  LetterClass at(Letter x) const { return tags.at(x); }
  /// No letter is tagged kOther.
  bool has_simple_idempotents() const;
  std::size_t count(LetterClass c) const;
};

/// A letter permutes Q, or it is a simple idempotent (image of size n−1 and
/// δ(q, xx) = δ(q, x) for all q, so it merges exactly one pair), or neither.
LetterClasses classify_letters(const Dcsa& a);

/// Shape of a binary automaton with simple idempotents, in terms of its
/// idempotent letter `a` and permutational letter `b`.
///
///   kCase1: t is a sink, b cycles Q∖{t}, a sends s ≠ t to t.
///   kCase2: b is one n-cycle, a sends s to t = δ(s, b^p) with gcd(p, n) = 1.
///
/// In kCase2, p counts b-steps from s to t. An older formulation of this
/// structure result used p for a state index instead, which breaks on the
/// Černý automaton (there p = 1 and gcd(1, n) = 1 as required).
struct StructureForm {
  enum class Kind { kCase1, kCase2, kNotStructured };

  Kind kind = Kind::kNotStructured;
  Letter a = 0;  ///< the idempotent letter in the input's numbering
  Letter b = 1;  ///< the permutational letter
  State s = kNoState;
  State t = kNoState;
  std::size_t p = 0;  ///< kCase2 only

  /// The idempotent is letter 1, so letters are swapped internally.
  bool swapped() const { return a != 0; }
};

std::string_view to_string(StructureForm::Kind k);

/// Throws PreconditionError unless A is binary with simple idempotents and
/// n > 3. Automata with two idempotent letters or two permutations are
/// kNotStructured.
StructureForm structure_classify(const Dcsa& a);

/// Normalized shape of a constraint with at most three states.
enum class ConstraintShape {
  kTable,               ///< {start} and a two-state component with one missing transition
  kCompleteInner,       ///< the two-state component is complete
  kStronglyConnected,   ///< all states form one component
  kTwoStateReduction,   ///< three singleton components
  kSingleCyclePair,     ///< the two-state component is a bare 2-cycle
  kUnary,               ///< alphabet of size ≤ 1
  kSmallInstance,       ///< at most two states, or no final state in the component
  kOmittedBranch,       ///< start inside the two-state component, or both states entered
  kUnsupportedShape,
};

std::string_view to_string(ConstraintShape s);

/// Result of constraint_case. States 1, 2, 3 of the case analysis are
/// `start`, `entry` (the component state entered from the start) and `other`.
struct ConstraintCase {
  ConstraintShape shape = ConstraintShape::kUnsupportedShape;
  int case_id = 0;  ///< 1..12 for kTable
  State start = kNoState;
  State entry = kNoState;
  State other = kNoState;

  std::string describe() const;
};

/// Applies the normalizations in order: small alphabet or state count, one
/// component, three components, start inside the two-state component, a
/// complete or bare-cycle component, then the twelve table rows. Letter 0 plays
/// the idempotent `a`. Requires |P| ≤ 3, |Σ| ≤ 2 and every state reachable.
ConstraintCase constraint_case(const Pdfa& b);

/// The twelve table constraints, one expression per case_id, over {a, b}.
std::string_view table_constraint(int case_id);

/// Inner witness for table case `case_id` on Case1 automata with n states.
/// Throws PreconditionError for cases 1 and 6 when n is odd.
Word proof_witness_catalog(int case_id, std::size_t n);

// ---------------------------------------------------------------------------
// Derived decisions. For constraints outside the cases worked out by hand the
// answer depends only on the trimmed single-final constraint and on n (Case1)
// or (n, p) (Case2); the table below records the pattern observed by the
// exhaustive oracle over n ∈ [5, 12].

enum class Case1Rule : std::uint8_t { kNever, kAlways, kEvenN, kNMinus1NotDiv3, kOracle };
enum class Case2Rule : std::uint8_t {
  kNever,
  kAlways,
  kPIsNMinus1,
  kPIsNMinus2,
  kOddN,
  kNNotDiv3,
  kEvenNOrEvenPOrPAtLeastNMinus2,
  kOracle,
};

struct DerivedRule {
  std::string_view key;
  Case1Rule case1;
  Case2Rule case2;
};

std::string_view to_string(Case1Rule r);
std::string_view to_string(Case2Rule r);
std::optional<bool> evaluate(Case1Rule r, std::size_t n);
std::optional<bool> evaluate(Case2Rule r, std::size_t n, std::size_t p);

/// Canonical text of a trimmed PDFA over two letters with one final state:
/// per state the two targets ('.' for undefined), then ':' and the final state.
std::string constraint_key(const Pdfa& trimmed_single_final);

std::span<const DerivedRule> derived_rules();
const DerivedRule* find_derived_rule(std::string_view key);

/// Hand-derived decision for a trimmed single-final constraint, in internal
/// letter order (letter 0 idempotent). nullopt when no argument applies.
std::optional<bool> proof_decision(StructureForm::Kind form, const Pdfa& b, std::size_t n);

/// Derived-table decision for a trimmed single-final constraint.
std::optional<bool> derived_decision(const StructureForm& form, const Pdfa& b, std::size_t n);

// ---------------------------------------------------------------------------

enum class DecisionRoute {
  kSmallAutomaton,     ///< n ≤ 4: exact search
  kNotSynchronizing,
  kUnstructured,       ///< synchronizing but no structure form: exact search
  kEmptyConstraint,
  kProofRule,
  kDerivedRule,
  kOracleFallback,
};

std::string_view to_string(DecisionRoute r);

struct ConstrainedDecision {
  bool yes = false;
  std::optional<Word> witness;  ///< absent only if every construction ran out of budget
  DecisionRoute route = DecisionRoute::kOracleFallback;
  std::optional<ConstraintCase> constraint;  ///< of the final part that decided
  std::vector<std::string> diagnostics;
};

/// Decides whether the binary simple-idempotents automaton A has a
/// synchronizing word in L(B), |P| ≤ 3. Final states are handled one at a time
/// and the answers OR-ed. Witnesses come from the proof's templates, then a
/// greedy pair-merging search in A × B, then the budgeted exact search; each
/// is checked against A and B before it is returned.
ConstrainedDecision decide_constrained(const Dcsa& a, const Pdfa& b, SearchBudget budget = {});

}  // namespace csync
