#include "csync/sync.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "csync/errors.hpp"
#include "csync/simple_idempotent.hpp"

namespace csync {

bool synchronizes(const Dcsa& a, const Word& w) { return image(a, w).count() == 1; }

// ---------------------------------------------------------------------------
// Pair automaton

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

class PairGraph {
 public:
  explicit PairGraph(const Dcsa& a) : a_(a), n_(a.size()), dist_(pair_count(n_), kUnreached) {
    build_preimages();
    backward_bfs();
  }

  static std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

  /// Index of {p, q}, p ≠ q.
  std::size_t index(State p, State q) const {
    if (p > q) std::swap(p, q);
    return std::size_t{q} * (q - 1) / 2 + p;
  }

  std::uint32_t distance(State p, State q) const { return dist_[index(p, q)]; }

  bool all_collapsible() const {
    return std::none_of(dist_.begin(), dist_.end(), [](auto d) { return d == kUnreached; });
  }

  /// Lexicographically least shortest word merging p and q.
  Word collapse_word(State p, State q) const {
    Word w;
    std::uint32_t d = distance(p, q);
    while (p != q) {
      for (Letter x = 0; x < a_.letters(); ++x) {
        const State p2 = a_.next(p, x);
        const State q2 = a_.next(q, x);
        if (p2 == q2 ? d == 1 : distance(p2, q2) == d - 1) {
          w.push_back(x);
          p = p2;
          q = q2;
          --d;
          break;
        }
      }
    }
    return w;
  }

 private:
  void build_preimages() {
    const std::size_t k = a_.letters();
    offsets_.assign(k, std::vector<std::size_t>(n_ + 1, 0));
    preimages_.assign(k, std::vector<State>(n_));
    for (Letter x = 0; x < k; ++x) {
      auto& off = offsets_[x];
      for (State q = 0; q < n_; ++q) ++off[a_.next(q, x) + 1];
      for (std::size_t i = 0; i < n_; ++i) off[i + 1] += off[i];
      std::vector<std::size_t> fill(off.begin(), off.end() - 1);
      for (State q = 0; q < n_; ++q) preimages_[x][fill[a_.next(q, x)]++] = q;
    }
  }

  template <typename F>
  void for_preimages(Letter x, State r, F&& f) const {
    const auto& off = offsets_[x];
    for (std::size_t i = off[r]; i < off[r + 1]; ++i) f(preimages_[x][i]);
  }

  void backward_bfs() {
    std::vector<std::uint32_t> queue;
    queue.reserve(dist_.size());
    auto visit = [&](State p, State q, std::uint32_t d) {
      if (p == q) return;
      const std::size_t i = index(p, q);
      if (dist_[i] != kUnreached) return;
      dist_[i] = d;
      queue.push_back(static_cast<std::uint32_t>(i));
    };
    for (Letter x = 0; x < a_.letters(); ++x) {
      for (State r = 0; r < n_; ++r) {
        const auto& off = offsets_[x];
        for (std::size_t i = off[r]; i < off[r + 1]; ++i) {
          for (std::size_t j = i + 1; j < off[r + 1]; ++j) {
            visit(preimages_[x][i], preimages_[x][j], 1);
          }
        }
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t i = queue[head];
      // invert index(p, q) = q(q-1)/2 + p
      auto q = static_cast<State>((1 + static_cast<std::size_t>(std::sqrt(8.0 * i + 1))) / 2);
      while (std::size_t{q} * (q - 1) / 2 > i) --q;
      while (std::size_t{q + 1} * q / 2 <= i) ++q;
      const auto p = static_cast<State>(i - std::size_t{q} * (q - 1) / 2);
      const std::uint32_t d = dist_[i] + 1;
      for (Letter x = 0; x < a_.letters(); ++x) {
        for_preimages(x, p, [&](State p0) {
          for_preimages(x, q, [&](State q0) { visit(p0, q0, d); });
        });
      }
    }
  }

  const Dcsa& a_;
  std::size_t n_;
  std::vector<std::uint32_t> dist_;
  std::vector<std::vector<std::size_t>> offsets_;
  std::vector<std::vector<State>> preimages_;
};

}  // namespace

SyncReport is_synchronizing(const Dcsa& a, Witness mode) {
  SyncReport report;
  if (a.size() == 1) {
    report.synchronizing = true;
    if (mode == Witness::kBuild) {
      report.witness = Word{};
      report.sync_state = 0;
    }
    return report;
  }
  const PairGraph pairs(a);
  report.synchronizing = pairs.all_collapsible();
  if (!report.synchronizing || mode == Witness::kSkip) return report;

  Word witness;
  std::vector<State> current(a.size());
  for (State q = 0; q < a.size(); ++q) current[q] = q;
  while (current.size() > 1) {
    State best_p = current[0], best_q = current[1];
    std::uint32_t best = pairs.distance(best_p, best_q);
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        const std::uint32_t d = pairs.distance(current[i], current[j]);
        if (d < best) {
          best = d;
          best_p = current[i];
          best_q = current[j];
        }
      }
    }
    const Word w = pairs.collapse_word(best_p, best_q);
    witness.insert(witness.end(), w.begin(), w.end());
    for (State& q : current) q = a.run(q, w);
    std::sort(current.begin(), current.end());
    current.erase(std::unique(current.begin(), current.end()), current.end());
  }
  report.sync_state = current.front();
  report.witness = std::move(witness);
  return report;
}

// ---------------------------------------------------------------------------
// Subset searches. Subsets are uint64 masks when n ≤ 64, with a flat visited
// table when 2^n·|P| is small; StateSet keys otherwise.

namespace {

struct NoConstraint {
  std::size_t size() const { return 1; }
  State start() const { return 0; }
  bool is_final(State) const { return true; }
  State next(State, Letter) const { return 0; }
};

template <typename Mask>
struct Node {
  Mask subset;
  State constraint;
  std::uint32_t parent;
  Letter via;
};

inline std::size_t popcount_of(std::uint64_t m) { return static_cast<std::size_t>(std::popcount(m)); }
inline std::size_t popcount_of(const StateSet& s) { return s.count(); }

inline std::uint64_t apply(const Dcsa& a, std::uint64_t m, Letter x) {
  std::uint64_t out = 0;
  while (m != 0) {
    const auto q = static_cast<State>(std::countr_zero(m));
    out |= std::uint64_t{1} << a.next(q, x);
    m &= m - 1;
  }
  return out;
}

inline StateSet apply(const Dcsa& a, const StateSet& s, Letter x) { return step(a, s, Word{x}); }

class DenseVisited {
 public:
  DenseVisited(std::size_t n, std::size_t constraint_states)
      : stride_(constraint_states), seen_((std::size_t{1} << n) * constraint_states, 0) {}
  bool insert(std::uint64_t m, State p) {
    char& slot = seen_[m * stride_ + p];
    if (slot) return false;
    slot = 1;
    return true;
  }

 private:
  std::size_t stride_;
  std::vector<char> seen_;
};

class HashVisited {
 public:
  explicit HashVisited(std::size_t constraint_states) : seen_(constraint_states) {}
  bool insert(std::uint64_t m, State p) { return seen_[p].insert(m).second; }

 private:
  std::vector<std::unordered_set<std::uint64_t>> seen_;
};

class SetVisited {
 public:
  explicit SetVisited(std::size_t constraint_states) : seen_(constraint_states) {}
  bool insert(const StateSet& s, State p) { return seen_[p].insert(s).second; }

 private:
  std::vector<std::unordered_set<StateSet, StateSetHash>> seen_;
};

template <typename Mask, typename Constraint, typename Visited>
std::optional<Word> subset_bfs(const Dcsa& a, const Constraint& b, Mask full, Visited& visited,
                               SearchBudget budget) {
  std::vector<Node<Mask>> nodes;
  auto reconstruct = [&](std::uint32_t i) {
    Word w;
    while (i != 0) {
      w.push_back(nodes[i].via);
      i = nodes[i].parent;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };

  nodes.push_back({full, b.start(), 0, 0});
  visited.insert(full, b.start());
  if (popcount_of(full) == 1 && b.is_final(b.start())) return Word{};

  for (std::uint32_t head = 0; head < nodes.size(); ++head) {
    for (Letter x = 0; x < a.letters(); ++x) {
      const State p = b.next(nodes[head].constraint, x);
      if (p == kNoState) continue;
      Mask next = apply(a, nodes[head].subset, x);
      if (!visited.insert(next, p)) continue;
      if (nodes.size() >= budget.max_subsets) throw BudgetExceeded(nodes.size());
      const bool accept = popcount_of(next) == 1 && b.is_final(p);
      nodes.push_back({std::move(next), p, head, x});
      if (accept) return reconstruct(static_cast<std::uint32_t>(nodes.size() - 1));
    }
  }
  return std::nullopt;
}

template <typename Constraint>
std::optional<Word> search(const Dcsa& a, const Constraint& b, SearchBudget budget) {
  if (budget.max_subsets == 0) throw PreconditionError("search budget must be positive");
  const std::size_t n = a.size();
  if (n <= 64) {
    const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    if (n <= 16) {
      DenseVisited visited(n, b.size());
      return subset_bfs(a, b, full, visited, budget);
    }
    HashVisited visited(b.size());
    return subset_bfs(a, b, full, visited, budget);
  }
  SetVisited visited(b.size());
  return subset_bfs(a, b, StateSet::full(n), visited, budget);
}

}  // namespace

std::optional<Word> shortest_sync_word(const Dcsa& a, SearchBudget budget) {
  return search(a, NoConstraint{}, budget);
}

std::optional<Word> constrained_sync_oracle(const Dcsa& a, const Pdfa& b, SearchBudget budget) {
  if (!(a.alphabet() == b.alphabet())) {
    throw AlphabetMismatch("input automaton and constraint are over different alphabets");
  }
  return search(a, b, budget);
}

// ---------------------------------------------------------------------------

bool idempotent_count_check(const Dcsa& a, const Word& w) {
  const auto classes = classify_letters(a);
  if (!classes.has_simple_idempotents()) {
    throw PreconditionError("idempotent_count_check: automaton does not have simple idempotents");
  }
  if (!synchronizes(a, w)) {
    throw PreconditionError("idempotent_count_check: word does not synchronize the automaton");
  }
  std::size_t count = 0;
  for (Letter x : w) {
    if (classes.at(x) == LetterClass::kSimpleIdempotent) ++count;
  }
  return count + 1 >= a.size();
}

}  // namespace csync
