#include "csync/generators.hpp"

#include <numeric>
#include <string>
#include <utility>

#include "csync/errors.hpp"

namespace csync {

const Alphabet& binary_alphabet() {
  static const Alphabet ab = Alphabet::of("ab");
  return ab;
}

Alphabet first_letters(std::size_t k) {
  if (k == 0 || k > 26) throw PreconditionError("alphabet size must be in [1, 26]");
  std::string symbols;
  for (std::size_t i = 0; i < k; ++i) symbols.push_back(static_cast<char>('a' + i));
  return Alphabet::of(symbols);
}

namespace {

constexpr Letter kA = 0;
constexpr Letter kB = 1;

Dcsa binary(std::size_t n, const std::vector<State>& on_a, const std::vector<State>& on_b) {
  std::vector<State> table(2 * n);
  for (std::size_t q = 0; q < n; ++q) {
    table[2 * q + kA] = on_a[q];
    table[2 * q + kB] = on_b[q];
  }
  return Dcsa(binary_alphabet(), n, std::move(table));
}

}  // namespace

Dcsa cerny(std::size_t n) {
  if (n < 2) throw PreconditionError("cerny(n) requires n >= 2");
  std::vector<State> on_a(n), on_b(n);
  for (std::size_t q = 0; q < n; ++q) {
    on_a[q] = static_cast<State>(q);
    on_b[q] = static_cast<State>((q + 1) % n);
  }
  on_a[0] = 1;
  return binary(n, on_a, on_b);
}

Dcsa sink_cycle_automaton(std::size_t n) {
  if (n < 3) throw PreconditionError("sink_cycle_automaton(n) requires n >= 3");
  const std::size_t cycle = n - 1;
  const auto sink = static_cast<State>(n - 1);
  std::vector<State> on_a(n), on_b(n);
  for (std::size_t q = 0; q < cycle; ++q) {
    on_a[q] = static_cast<State>(q);
    on_b[q] = static_cast<State>((q + 1) % cycle);
  }
  on_a[sink] = on_b[sink] = sink;
  on_a[n - 2] = sink;
  return binary(n, on_a, on_b);
}

Dcsa case2_automaton(std::size_t n, std::size_t p) {
  if (n < 3) throw PreconditionError("case2_automaton(n, p) requires n >= 3");
  if (p == 0 || p >= n) throw PreconditionError("case2_automaton(n, p) requires 0 < p < n");
  std::vector<State> on_a(n), on_b(n);
  for (std::size_t q = 0; q < n; ++q) {
    on_a[q] = static_cast<State>(q);
    on_b[q] = static_cast<State>((q + 1) % n);
  }
  on_a[0] = static_cast<State>(p);
  return binary(n, on_a, on_b);
}

// Both figures are drawn without state labels. States are numbered in the
// order the drawing declares its nodes.
Dcsa figure_commutative() {
  //            0  1  2  3  4  5  6
  return binary(7, {1, 3, 4, 1, 4, 2, 2},   // a
                   {2, 4, 2, 4, 4, 6, 5});  // b
}

// The loop at the bottom-left node is drawn as an edge from that node back to
// itself labelled b; it is read as the self-loop 3 -b-> 3, the only reading
// that keeps the automaton commutative.
Dcsa figure_commutative_nonsync() {
  //            0  1  2  3  4  5  6
  return binary(7, {1, 5, 6, 4, 3, 1, 2},   // a
                   {2, 6, 3, 3, 4, 2, 4});  // b
}

// ---------------------------------------------------------------------------

namespace {

// Backtracking search for a map f on {0..n-1} commuting with every map in
// `earlier`. Returns false if the node budget runs out.
class CommutingMapSearch {
 public:
  CommutingMapSearch(std::size_t n, const std::vector<std::vector<State>>& earlier,
                     SplitMix64& rng, std::size_t node_budget)
      : n_(n), earlier_(earlier), rng_(rng), budget_(node_budget), f_(n, kNoState) {
    preimages_.resize(earlier.size(), std::vector<std::vector<State>>(n));
    for (std::size_t g = 0; g < earlier.size(); ++g) {
      for (State q = 0; q < n; ++q) preimages_[g][earlier[g][q]].push_back(q);
    }
  }

  bool run(std::vector<State>& out) {
    if (!assign(0)) return false;
    out = f_;
    return true;
  }

 private:
  bool consistent(State q) const {
    for (std::size_t g = 0; g < earlier_.size(); ++g) {
      const auto& gm = earlier_[g];
      // r = q: g(f(q)) == f(g(q)) once f(g(q)) is known
      if (f_[gm[q]] != kNoState && gm[f_[q]] != f_[gm[q]]) return false;
      // r with g(r) = q: g(f(r)) == f(q)
      for (State r : preimages_[g][q]) {
        if (f_[r] != kNoState && gm[f_[r]] != f_[q]) return false;
      }
    }
    return true;
  }

  bool assign(State q) {
    if (q == n_) return true;
    std::vector<State> candidates(n_);
    std::iota(candidates.begin(), candidates.end(), State{0});
    for (std::size_t i = n_; i > 1; --i) {
      std::swap(candidates[i - 1], candidates[rng_.below(i)]);
    }
    for (State c : candidates) {
      if (budget_ == 0) return false;
      --budget_;
      f_[q] = c;
      if (consistent(q) && assign(q + 1)) return true;
      f_[q] = kNoState;
    }
    return false;
  }

  std::size_t n_;
  const std::vector<std::vector<State>>& earlier_;
  std::vector<std::vector<std::vector<State>>> preimages_;
  SplitMix64& rng_;
  std::size_t budget_;
  std::vector<State> f_;
};

}  // namespace

Dcsa random_commutative(std::size_t n, std::size_t k, Seed seed) {
  if (n == 0 || k == 0) throw PreconditionError("random_commutative requires n >= 1 and k >= 1");
  constexpr std::size_t kRetries = 32;
  constexpr std::size_t kNodeBudget = 200000;
  SplitMix64 rng(seed);

  std::vector<std::vector<State>> maps;
  for (std::size_t letter = 0; letter < k; ++letter) {
    bool found = false;
    for (std::size_t attempt = 0; attempt < kRetries && !found; ++attempt) {
      std::vector<State> f;
      CommutingMapSearch search(n, maps, rng, kNodeBudget);
      if (search.run(f)) {
        maps.push_back(std::move(f));
        found = true;
      }
    }
    if (!found) {
      // Products of powers of the earlier actions commute with all of them.
      std::vector<State> f(n);
      std::iota(f.begin(), f.end(), State{0});
      for (const auto& g : maps) {
        for (std::uint64_t e = rng.below(n); e > 0; --e) {
          for (auto& v : f) v = g[v];
        }
      }
      maps.push_back(std::move(f));
    }
  }

  std::vector<State> table(n * k);
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t x = 0; x < k; ++x) table[q * k + x] = maps[x][q];
  }
  return Dcsa(first_letters(k), n, std::move(table));
}

Dcsa random_simple_idempotents(std::size_t n, Seed seed) {
  if (n < 2) throw PreconditionError("random_simple_idempotents requires n >= 2");
  SplitMix64 rng(seed);
  std::vector<State> on_a(n), on_b(n);
  std::iota(on_a.begin(), on_a.end(), State{0});

  // Random cyclic order of `members` (Sattolo) written into on_b.
  auto cycle_through = [&](std::vector<State> members) {
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[rng.below(i - 1)]);
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      on_b[members[i]] = members[(i + 1) % members.size()];
    }
  };

  const std::uint64_t mode = rng.below(8);
  if (mode < 2 && n >= 3) {
    const auto sink = static_cast<State>(rng.below(n));
    std::vector<State> rest;
    for (State q = 0; q < n; ++q) {
      if (q != sink) rest.push_back(q);
    }
    cycle_through(rest);
    on_b[sink] = sink;
    on_a[rest[rng.below(rest.size())]] = sink;
    return binary(n, on_a, on_b);
  }
  if (mode < 5) {
    std::vector<State> all(n);
    std::iota(all.begin(), all.end(), State{0});
    cycle_through(all);
  } else {
    std::iota(on_b.begin(), on_b.end(), State{0});
    for (std::size_t i = n; i > 1; --i) std::swap(on_b[i - 1], on_b[rng.below(i)]);
  }
  const auto s = static_cast<State>(rng.below(n));
  auto t = static_cast<State>(rng.below(n - 1));
  if (t >= s) ++t;
  on_a[s] = t;
  return binary(n, on_a, on_b);
}

}  // namespace csync
