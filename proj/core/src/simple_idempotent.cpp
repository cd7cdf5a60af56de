#include "csync/simple_idempotent.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "csync/errors.hpp"
#include "csync/graph.hpp"

namespace csync {

std::string_view to_string(LetterClass c) {
  switch (c) {
    case LetterClass::kPermutation: return "permutation";
    case LetterClass::kSimpleIdempotent: return "simple_idempotent";
    case LetterClass::kOther: return "other";
  }
  return "?";
}

bool LetterClasses::has_simple_idempotents() const { return count(LetterClass::kOther) == 0; }

std::size_t LetterClasses::count(LetterClass c) const {
  return static_cast<std::size_t>(std::count(tags.begin(), tags.end(), c));
}

LetterClasses classify_letters(const Dcsa& a) {
  const std::size_t n = a.size();
  LetterClasses out;
  for (Letter x = 0; x < a.letters(); ++x) {
    std::vector<char> hit(n, 0);
    std::size_t image_size = 0;
    bool idempotent = true;
    for (State q = 0; q < n; ++q) {
      const State r = a.next(q, x);
      if (!hit[r]) {
        hit[r] = 1;
        ++image_size;
      }
      idempotent = idempotent && a.next(r, x) == r;
    }
    if (image_size == n) {
      out.tags.push_back(LetterClass::kPermutation);
    } else if (image_size + 1 == n && idempotent) {
      out.tags.push_back(LetterClass::kSimpleIdempotent);
    } else {
      out.tags.push_back(LetterClass::kOther);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(StructureForm::Kind k) {
  switch (k) {
    case StructureForm::Kind::kCase1: return "case1";
    case StructureForm::Kind::kCase2: return "case2";
    case StructureForm::Kind::kNotStructured: return "not_structured";
  }
  return "?";
}

namespace {

// Length of the b-cycle through q, or 0 if the walk does not return to q
// within `limit` steps.
std::size_t cycle_length(const Dcsa& a, Letter b, State q, std::size_t limit) {
  State r = q;
  for (std::size_t len = 1; len <= limit; ++len) {
    r = a.next(r, b);
    if (r == q) return len;
  }
  return 0;
}

}  // namespace

StructureForm structure_classify(const Dcsa& a) {
  if (a.letters() != 2) throw PreconditionError("structure_classify: alphabet must be binary");
  const LetterClasses classes = classify_letters(a);
  if (!classes.has_simple_idempotents()) {
    throw PreconditionError("structure_classify: automaton does not have simple idempotents");
  }
  const std::size_t n = a.size();
  if (n <= 3) throw PreconditionError("structure_classify: requires more than three states");

  StructureForm form;
  if (classes.count(LetterClass::kSimpleIdempotent) != 1) return form;
  form.a = classes.at(0) == LetterClass::kSimpleIdempotent ? 0 : 1;
  form.b = 1 - form.a;

  // the one state a moves, and where to
  State s = kNoState;
  for (State q = 0; q < n && s == kNoState; ++q) {
    if (a.next(q, form.a) != q) s = q;
  }
  const State t = a.next(s, form.a);

  const bool t_is_sink = a.next(t, form.b) == t;
  if (t_is_sink) {
    if (cycle_length(a, form.b, s, n) == n - 1) {
      form.kind = StructureForm::Kind::kCase1;
      form.s = s;
      form.t = t;
    }
    return form;
  }
  if (cycle_length(a, form.b, s, n) != n) return form;
  std::size_t p = 0;
  for (State r = s; r != t; r = a.next(r, form.b)) ++p;
  if (std::gcd(p, n) == 1) {
    form.kind = StructureForm::Kind::kCase2;
    form.s = s;
    form.t = t;
    form.p = p;
  }
  return form;
}

// ---------------------------------------------------------------------------

std::string_view to_string(ConstraintShape s) {
  switch (s) {
    case ConstraintShape::kTable: return "table";
    case ConstraintShape::kCompleteInner: return "complete_inner";
    case ConstraintShape::kStronglyConnected: return "strongly_connected";
    case ConstraintShape::kTwoStateReduction: return "two_state_reduction";
    case ConstraintShape::kSingleCyclePair: return "single_cycle_pair";
    case ConstraintShape::kUnary: return "unary";
    case ConstraintShape::kSmallInstance: return "small_instance";
    case ConstraintShape::kOmittedBranch: return "omitted_branch";
    case ConstraintShape::kUnsupportedShape: return "unsupported_shape";
  }
  return "?";
}

std::string ConstraintCase::describe() const {
  if (shape == ConstraintShape::kTable) return "case " + std::to_string(case_id);
  return std::string(to_string(shape));
}

namespace {

constexpr Letter kA = 0;
constexpr Letter kB = 1;

// Inner transitions of one table row: targets of (entry, other) under a and b,
// with kNoState for the missing transition. 0 = entry, 1 = other.
struct TableRow {
  int id;
  State entry_a, entry_b, other_a, other_b;
};

constexpr State kX = kNoState;
constexpr TableRow kTableRows[] = {
    {1, 0, 1, kX, 0},   {2, 1, kX, 1, 0},  {3, 0, 1, 0, kX},  {4, 1, kX, 0, 1},
    {5, 1, 0, kX, 0},   {6, kX, 1, 1, 0},  {7, 1, 0, 0, kX},  {8, kX, 1, 0, 1},
    {9, 1, 1, 0, kX},   {10, 1, kX, 0, 0}, {11, 1, 1, kX, 0}, {12, kX, 1, 0, 0},
};

constexpr std::string_view kTableExpressions[] = {
    "b(a+bb)*",  "b(aa*b)*",  "b(a+ba)*",  "b(ab*a)*",  "b(b+ab)*",  "b(ba*b)*",
    "b(b+aa)*",  "b(bb*a)*",  "b(aa+ba)*", "b(aa+ab)*", "b(ab+bb)*", "b(ba+bb)*",
};

}  // namespace

ConstraintCase constraint_case(const Pdfa& b) {
  if (b.size() > 3) throw PreconditionError("constraint_case: constraint has more than three states");
  if (b.letters() > 2) throw PreconditionError("constraint_case: alphabet has more than two letters");
  const auto reach = reachable_from(b, b.start());
  if (std::find(reach.begin(), reach.end(), false) != reach.end()) {
    throw PreconditionError("constraint_case: some state is unreachable from the start");
  }

  ConstraintCase cc;
  cc.start = b.start();
  if (b.letters() <= 1) {
    cc.shape = ConstraintShape::kUnary;
    return cc;
  }
  if (b.size() <= 2) {
    cc.shape = ConstraintShape::kSmallInstance;
    return cc;
  }
  const SccDecomposition scc = scc_decompose(b);
  if (scc.size() == 1) {
    cc.shape = ConstraintShape::kStronglyConnected;
    return cc;
  }
  if (scc.size() == 3) {
    cc.shape = ConstraintShape::kTwoStateReduction;
    return cc;
  }
  const auto& pair = scc.components[scc.components[0].size() == 2 ? 0 : 1];
  if (std::find(pair.begin(), pair.end(), b.start()) != pair.end()) {
    cc.shape = ConstraintShape::kOmittedBranch;
    return cc;
  }
  if (!b.is_final(pair[0]) && !b.is_final(pair[1])) {
    cc.shape = ConstraintShape::kSmallInstance;
    return cc;
  }

  const bool enters0 = b.next(b.start(), kA) == pair[0] || b.next(b.start(), kB) == pair[0];
  const bool enters1 = b.next(b.start(), kA) == pair[1] || b.next(b.start(), kB) == pair[1];
  cc.entry = enters0 ? pair[0] : pair[1];
  cc.other = enters0 ? pair[1] : pair[0];

  std::size_t inner = 0;
  for (State q : pair) {
    for (Letter x = 0; x < 2; ++x) inner += b.defined(q, x) ? 1 : 0;
  }
  if (inner == 4) {
    cc.shape = ConstraintShape::kCompleteInner;
    return cc;
  }
  if (inner <= 2) {
    cc.shape = ConstraintShape::kSingleCyclePair;
    return cc;
  }
  if (enters0 && enters1) {
    cc.shape = ConstraintShape::kOmittedBranch;
    return cc;
  }

  auto role = [&](State q) -> State {
    if (q == cc.entry) return 0;
    if (q == cc.other) return 1;
    return kNoState;
  };
  for (const TableRow& row : kTableRows) {
    if (role(b.next(cc.entry, kA)) == row.entry_a && role(b.next(cc.entry, kB)) == row.entry_b &&
        role(b.next(cc.other, kA)) == row.other_a && role(b.next(cc.other, kB)) == row.other_b) {
      cc.shape = ConstraintShape::kTable;
      cc.case_id = row.id;
      return cc;
    }
  }
  cc.shape = ConstraintShape::kUnsupportedShape;
  return cc;
}

std::string_view table_constraint(int case_id) {
  if (case_id < 1 || case_id > 12) throw PreconditionError("table case must be in 1..12");
  return kTableExpressions[case_id - 1];
}

Word proof_witness_catalog(int case_id, std::size_t n) {
  if (case_id < 1 || case_id > 12) throw PreconditionError("table case must be in 1..12");
  if (n < 2) throw PreconditionError("proof_witness_catalog: n must be at least 2");
  if ((case_id == 1 || case_id == 6) && n % 2 != 0) {
    throw PreconditionError("table case " + std::to_string(case_id) +
                            " has a synchronizing word only for even n");
  }
  auto repeat = [](Word unit, std::size_t times) {
    Word w;
    for (std::size_t i = 0; i < times; ++i) w.insert(w.end(), unit.begin(), unit.end());
    return w;
  };
  auto cat = [](Word x, const Word& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  switch (case_id) {
    case 1: return repeat({kB, kB, kA}, n - 1);
    case 2: return repeat({kA, kB}, n - 1);
    case 3: return cat({kA}, repeat({kB, kA}, n - 2));
    case 4: return repeat({kA, kB, kA}, n - 2);
    case 5: return repeat({kA, kB}, n - 1);
    case 6: return repeat({kB, kB, kB, kA, kB}, n - 1);
    case 7: return repeat({kB, kA, kA}, n - 1);
    case 8: return repeat({kB, kA}, n - 1);
    case 9: return cat({kA, kA}, repeat({kB, kA}, n - 2));
    case 10: return cat(cat({kA, kA}, repeat({kA, kB}, n - 2)), {kA, kA});
    case 11: return repeat({kA, kB}, n - 1);
    case 12: return cat({kB, kA}, repeat({kB, kA}, n - 2));
  }
  return {};
}

// ---------------------------------------------------------------------------

std::string_view to_string(Case1Rule r) {
  switch (r) {
    case Case1Rule::kNever: return "never";
    case Case1Rule::kAlways: return "always";
    case Case1Rule::kEvenN: return "n even";
    case Case1Rule::kNMinus1NotDiv3: return "3 does not divide n-1";
    case Case1Rule::kOracle: return "no pattern";
  }
  return "?";
}

std::string_view to_string(Case2Rule r) {
  switch (r) {
    case Case2Rule::kNever: return "never";
    case Case2Rule::kAlways: return "always";
    case Case2Rule::kPIsNMinus1: return "p = n-1";
    case Case2Rule::kPIsNMinus2: return "p = n-2";
    case Case2Rule::kOddN: return "n odd";
    case Case2Rule::kNNotDiv3: return "3 does not divide n";
    case Case2Rule::kEvenNOrEvenPOrPAtLeastNMinus2: return "n even or p even or p >= n-2";
    case Case2Rule::kOracle: return "no pattern";
  }
  return "?";
}

std::optional<bool> evaluate(Case1Rule r, std::size_t n) {
  switch (r) {
    case Case1Rule::kNever: return false;
    case Case1Rule::kAlways: return true;
    case Case1Rule::kEvenN: return n % 2 == 0;
    case Case1Rule::kNMinus1NotDiv3: return (n - 1) % 3 != 0;
    case Case1Rule::kOracle: return std::nullopt;
  }
  return std::nullopt;
}

std::optional<bool> evaluate(Case2Rule r, std::size_t n, std::size_t p) {
  switch (r) {
    case Case2Rule::kNever: return false;
    case Case2Rule::kAlways: return true;
    case Case2Rule::kPIsNMinus1: return p + 1 == n;
    case Case2Rule::kPIsNMinus2: return p + 2 == n;
    case Case2Rule::kOddN: return n % 2 == 1;
    case Case2Rule::kNNotDiv3: return n % 3 != 0;
    case Case2Rule::kEvenNOrEvenPOrPAtLeastNMinus2: return n % 2 == 0 || p % 2 == 0 || p + 2 >= n;
    case Case2Rule::kOracle: return std::nullopt;
  }
  return std::nullopt;
}

std::string constraint_key(const Pdfa& b) {
  const auto finals = b.finals();
  if (finals.size() != 1) throw PreconditionError("constraint_key: expects exactly one final state");
  if (b.size() > 9) throw PreconditionError("constraint_key: expects at most nine states");
  std::string key;
  for (State p = 0; p < b.size(); ++p) {
    for (Letter x = 0; x < b.letters(); ++x) {
      const State t = b.next(p, x);
      key += t == kNoState ? '.' : static_cast<char>('0' + t);
    }
  }
  key += ':';
  key += static_cast<char>('0' + finals.front());
  return key;
}

namespace {

// Sorted by key; the empty-key entry at the end only terminates the list.
constexpr DerivedRule kDerivedRules[] = {
#include "derived_rules.inc"
    {"", Case1Rule::kOracle, Case2Rule::kOracle},
};

}  // namespace

std::span<const DerivedRule> derived_rules() {
  return {kDerivedRules, std::size(kDerivedRules) - 1};
}

const DerivedRule* find_derived_rule(std::string_view key) {
  const auto rules = derived_rules();
  const auto it = std::lower_bound(rules.begin(), rules.end(), key,
                                   [](const DerivedRule& r, std::string_view k) { return r.key < k; });
  return it != rules.end() && it->key == key ? &*it : nullptr;
}

std::optional<bool> proof_decision(StructureForm::Kind form, const Pdfa& b, std::size_t n) {
  if (n <= 4 || form == StructureForm::Kind::kNotStructured) return std::nullopt;
  const bool case1 = form == StructureForm::Kind::kCase1;
  const ConstraintCase cc = constraint_case(b);
  switch (cc.shape) {
    case ConstraintShape::kCompleteInner:
      return true;
    case ConstraintShape::kTwoStateReduction: {
      const State f = b.finals().front();
      return b.next(f, kA) == f && b.next(f, kB) == f;
    }
    case ConstraintShape::kSingleCyclePair: {
      const bool same = (b.next(cc.entry, kA) == cc.other) == (b.next(cc.other, kA) == cc.entry);
      if (same) return false;
      return case1 ? std::optional<bool>(true) : std::nullopt;
    }
    case ConstraintShape::kTable:
      if (!case1) return std::nullopt;
      return (cc.case_id == 1 || cc.case_id == 6) ? n % 2 == 0 : true;
    default:
      return std::nullopt;
  }
}

std::optional<bool> derived_decision(const StructureForm& form, const Pdfa& b, std::size_t n) {
  const DerivedRule* rule = find_derived_rule(constraint_key(b));
  if (rule == nullptr) return std::nullopt;
  switch (form.kind) {
    case StructureForm::Kind::kCase1: return evaluate(rule->case1, n);
    case StructureForm::Kind::kCase2: return evaluate(rule->case2, n, form.p);
    case StructureForm::Kind::kNotStructured: return std::nullopt;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::string_view to_string(DecisionRoute r) {
  switch (r) {
    case DecisionRoute::kSmallAutomaton: return "small_automaton";
    case DecisionRoute::kNotSynchronizing: return "not_synchronizing";
    case DecisionRoute::kUnstructured: return "unstructured";
    case DecisionRoute::kEmptyConstraint: return "empty_constraint";
    case DecisionRoute::kProofRule: return "proof_rule";
    case DecisionRoute::kDerivedRule: return "derived_rule";
    case DecisionRoute::kOracleFallback: return "oracle_fallback";
  }
  return "?";
}

namespace {

Dcsa swap_letters(const Dcsa& a) {
  std::vector<State> table(a.table().begin(), a.table().end());
  for (std::size_t q = 0; q < a.size(); ++q) std::swap(table[2 * q], table[2 * q + 1]);
  return Dcsa(a.alphabet(), a.size(), std::move(table));
}

Pdfa swap_letters(const Pdfa& b) {
  std::vector<State> table(b.table().begin(), b.table().end());
  for (std::size_t q = 0; q < b.size(); ++q) std::swap(table[2 * q], table[2 * q + 1]);
  return Pdfa(b.alphabet(), b.size(), std::move(table), b.start(), b.finals());
}

Word swap_letters(Word w) {
  for (Letter& x : w) x = 1 - x;
  return w;
}

Word concat(std::initializer_list<const Word*> parts) {
  Word w;
  for (const Word* p : parts) w.insert(w.end(), p->begin(), p->end());
  return w;
}

std::optional<Word> word_between(const Pdfa& b, State from, State to) {
  return shortest_accepted_word(b.with_start_and_finals(from, {to}));
}

// Prefix reaching `mid`, then `inner`, then the shortest way to a final state.
std::optional<Word> around(const Pdfa& b, State mid, const Word& inner) {
  const auto u = word_between(b, b.start(), mid);
  if (!u) return std::nullopt;
  const State after = b.run(mid, inner);
  if (after == kNoState) return std::nullopt;
  const auto v = shortest_word_to_final(b, after);
  if (!v) return std::nullopt;
  return concat({&*u, &inner, &*v});
}

// Template witnesses for the hand-derived positive answers (internal letters).
std::optional<Word> proof_witness(const Dcsa& a, StructureForm::Kind form, const Pdfa& b) {
  const std::size_t n = a.size();
  const ConstraintCase cc = constraint_case(b);
  auto unconstrained = [&] { return is_synchronizing(a).witness.value_or(Word{}); };
  switch (cc.shape) {
    case ConstraintShape::kTable:
      if (form != StructureForm::Kind::kCase1) return std::nullopt;
      return around(b, cc.entry, proof_witness_catalog(cc.case_id, n));
    case ConstraintShape::kCompleteInner:
      return around(b, cc.entry, unconstrained());
    case ConstraintShape::kSingleCyclePair: {
      if (form != StructureForm::Kind::kCase1) return std::nullopt;
      Word inner;
      const bool a_first = b.next(cc.entry, kA) == cc.other;
      if (a_first) inner.push_back(kA);
      else inner.insert(inner.end(), {kB, kA});
      for (std::size_t i = 0; i + 2 < n; ++i) inner.insert(inner.end(), {kB, kA});
      if (a_first) inner.push_back(kB);
      return around(b, cc.entry, inner);
    }
    case ConstraintShape::kTwoStateReduction: {
      const State f = b.finals().front();
      return around(b, f, unconstrained());
    }
    default:
      return std::nullopt;
  }
}

// Repeatedly merges some pair of the current image along a shortest path in
// pairs × B, then walks to a final state. Fails if a merge is impossible from
// the current constraint state.
std::optional<Word> greedy_witness(const Dcsa& a, const Pdfa& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const std::size_t k = a.letters();
  if (n * n * m > (std::size_t{1} << 26)) return std::nullopt;
  auto id = [&](State x, State y, State q) { return (std::size_t{x} * n + y) * m + q; };

  std::vector<State> current(n);
  std::iota(current.begin(), current.end(), State{0});
  State p = b.start();
  Word out;
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> parent(n * n * m);
  std::vector<Letter> via(n * n * m);
  std::vector<std::size_t> queue;

  while (current.size() > 1) {
    std::fill(parent.begin(), parent.end(), kNone);
    queue.clear();
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        const std::size_t s = id(current[i], current[j], p);
        parent[s] = static_cast<std::uint32_t>(s);
        queue.push_back(s);
      }
    }
    std::optional<Word> merge;
    for (std::size_t head = 0; head < queue.size() && !merge; ++head) {
      const std::size_t s = queue[head];
      const auto q = static_cast<State>(s % m);
      const auto y = static_cast<State>((s / m) % n);
      const auto x = static_cast<State>(s / m / n);
      for (Letter c = 0; c < k && !merge; ++c) {
        const State q2 = b.next(q, c);
        if (q2 == kNoState) continue;
        State x2 = a.next(x, c), y2 = a.next(y, c);
        if (x2 == y2) {
          Word w{c};
          for (std::size_t r = s; parent[r] != r; r = parent[r]) w.push_back(via[r]);
          std::reverse(w.begin(), w.end());
          merge = std::move(w);
          break;
        }
        if (x2 > y2) std::swap(x2, y2);
        const std::size_t t = id(x2, y2, q2);
        if (parent[t] != kNone) continue;
        parent[t] = static_cast<std::uint32_t>(s);
        via[t] = c;
        queue.push_back(t);
      }
    }
    if (!merge) return std::nullopt;
    out.insert(out.end(), merge->begin(), merge->end());
    p = b.run(p, *merge);
    for (State& q : current) q = a.run(q, *merge);
    std::sort(current.begin(), current.end());
    current.erase(std::unique(current.begin(), current.end()), current.end());
  }
  const auto tail = shortest_word_to_final(b, p);
  if (!tail) return std::nullopt;
  out.insert(out.end(), tail->begin(), tail->end());
  return out;
}

enum class Source { kProof, kDerived, kOracle };

struct PartAnswer {
  bool yes = false;
  std::optional<Word> witness;
  Source source = Source::kOracle;
};

// One trimmed single-final constraint, internal letter order.
PartAnswer decide_part(const Dcsa& a, const StructureForm& form, const Pdfa& b,
                       SearchBudget budget, std::vector<std::string>& diagnostics) {
  const std::size_t n = a.size();
  PartAnswer answer;
  std::optional<bool> rule = proof_decision(form.kind, b, n);
  if (rule) {
    answer.source = Source::kProof;
  } else if ((rule = derived_decision(form, b, n))) {
    answer.source = Source::kDerived;
  }
  if (!rule) {
    diagnostics.push_back("no rule for constraint " + constraint_key(b) + " (" +
                          constraint_case(b).describe() + "); using exact search");
    answer.witness = constrained_sync_oracle(a, b, budget);
    answer.yes = answer.witness.has_value();
    return answer;
  }
  answer.yes = *rule;
  if (!answer.yes) return answer;

  if (answer.source == Source::kProof) answer.witness = proof_witness(a, form.kind, b);
  if (answer.witness && !(synchronizes(a, *answer.witness) && b.accepts(*answer.witness))) {
    diagnostics.push_back("template witness for " + constraint_case(b).describe() +
                          " failed verification");
    answer.witness.reset();
  }
  if (!answer.witness) answer.witness = greedy_witness(a, b);
  if (!answer.witness) {
    try {
      answer.witness = constrained_sync_oracle(a, b, budget);
      if (!answer.witness) {
        diagnostics.push_back("rule for " + constraint_key(b) +
                              " predicted a witness but exact search found none");
        answer.yes = false;
        answer.source = Source::kOracle;
      }
    } catch (const BudgetExceeded&) {
      diagnostics.push_back("witness search exceeded its budget; answering from the rule alone");
    }
  }
  return answer;
}

void verify(const Dcsa& a, const Pdfa& b, const Word& w) {
  if (!synchronizes(a, w) || !b.accepts(w)) {
    throw std::logic_error("decide_constrained produced an invalid witness");
  }
}

}  // namespace

ConstrainedDecision decide_constrained(const Dcsa& a, const Pdfa& b, SearchBudget budget) {
  if (!(a.alphabet() == b.alphabet())) {
    throw AlphabetMismatch("input automaton and constraint are over different alphabets");
  }
  if (a.letters() != 2) throw PreconditionError("decide_constrained: alphabet must be binary");
  if (!classify_letters(a).has_simple_idempotents()) {
    throw PreconditionError("decide_constrained: automaton does not have simple idempotents");
  }
  if (b.size() > 3) throw PreconditionError("decide_constrained: constraint has more than three states");

  ConstrainedDecision out;
  const Pdfa whole = trim(b);
  if (whole.finals().empty()) {
    out.route = DecisionRoute::kEmptyConstraint;
    return out;
  }
  auto exact = [&](DecisionRoute route) {
    out.route = route;
    out.witness = constrained_sync_oracle(a, b, budget);
    out.yes = out.witness.has_value();
    if (out.witness) verify(a, b, *out.witness);
    return out;
  };
  if (a.size() <= 4) return exact(DecisionRoute::kSmallAutomaton);
  if (!is_synchronizing(a, Witness::kSkip).synchronizing) {
    out.route = DecisionRoute::kNotSynchronizing;
    return out;
  }
  const StructureForm form = structure_classify(a);
  if (form.kind == StructureForm::Kind::kNotStructured) {
    out.diagnostics.push_back("synchronizing automaton without a structure form; using exact search");
    return exact(DecisionRoute::kUnstructured);
  }

  const Dcsa ai = form.swapped() ? swap_letters(a) : a;
  const Pdfa bi = form.swapped() ? swap_letters(whole) : whole;
  out.constraint = constraint_case(bi);

  Source weakest = Source::kProof;
  for (State f : bi.finals()) {
    const Pdfa part = trim(bi.with_start_and_finals(bi.start(), {f}));
    PartAnswer answer = decide_part(ai, form, part, budget, out.diagnostics);
    weakest = std::max(weakest, answer.source);
    if (answer.yes) {
      out.yes = true;
      if (answer.witness) out.witness = form.swapped() ? swap_letters(*answer.witness) : *answer.witness;
      weakest = answer.source;
      out.constraint = constraint_case(part);
      break;
    }
  }
  out.route = weakest == Source::kProof     ? DecisionRoute::kProofRule
              : weakest == Source::kDerived ? DecisionRoute::kDerivedRule
                                            : DecisionRoute::kOracleFallback;
  if (out.witness) verify(a, b, *out.witness);
  return out;
}

}  // namespace csync
