#include "csync/commutative.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "csync/errors.hpp"
#include "csync/graph.hpp"

namespace csync {

namespace {

template <typename Automaton>
bool commutes(const Automaton& m) {
  const std::size_t k = m.letters();
  for (State q = 0; q < m.size(); ++q) {
    for (Letter x = 0; x < k; ++x) {
      for (Letter y = x + 1; y < k; ++y) {
        if (m.run(q, Word{x, y}) != m.run(q, Word{y, x})) return false;
      }
    }
  }
  return true;
}

template <typename Automaton>
bool all_components_trivial(const Automaton& m) {
  return scc_decompose(m).size() == m.size();
}

void require_commutative(const Dcsa& a, const char* op) {
  if (!is_commutative(a)) throw PreconditionError(std::string(op) + ": automaton is not commutative");
}

// Largest counting automaton we agree to build.
constexpr std::size_t kMaxCountingStates = std::size_t{1} << 26;

std::size_t checked_power(std::size_t n, std::size_t k) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > kMaxCountingStates / std::max<std::size_t>(n, 1)) {
      throw PreconditionError("counting automaton with " + std::to_string(n) + "^" +
                              std::to_string(k) + " states is too large");
    }
    total *= n;
  }
  return total;
}

}  // namespace

bool is_commutative(const Dcsa& a) { return commutes(a); }
bool is_commutative(const Pdfa& b) { return commutes(b); }

bool is_weakly_acyclic(const Dcsa& a) { return all_components_trivial(a); }
bool is_weakly_acyclic(const Pdfa& b) { return all_components_trivial(b); }

Dcsa scc_quotient(const Dcsa& a) {
  require_commutative(a, "scc_quotient");
  const SccDecomposition scc = scc_decompose(a);
  const std::size_t m = scc.size();
  std::vector<State> position(m);
  for (std::size_t i = 0; i < m; ++i) position[scc.topo_order[i]] = static_cast<State>(i);

  const std::size_t k = a.letters();
  std::vector<State> table(m * k);
  for (std::size_t c = 0; c < m; ++c) {
    const State rep = scc.components[c].front();
    for (Letter x = 0; x < k; ++x) {
      table[position[c] * k + x] = position[scc.component_of[a.next(rep, x)]];
    }
  }
  return Dcsa(a.alphabet(), m, std::move(table));
}

SyncReport commutative_is_synchronizing(const Dcsa& a) {
  require_commutative(a, "commutative_is_synchronizing");
  const SccDecomposition scc = scc_decompose(a);
  const auto sinks = scc.sinks();
  SyncReport report;
  report.synchronizing = sinks.size() == 1 && scc.components[sinks.front()].size() == 1;
  if (!report.synchronizing) return report;

  const std::size_t m = scc.size();
  Word w;
  for (Letter x = 0; x < a.letters(); ++x) w.insert(w.end(), m - 1, x);
  const State sink = scc.components[sinks.front()].front();
  if (image(a, w) != StateSet(a.size(), {sink})) {
    throw std::logic_error("commutative_is_synchronizing: saturated word does not reach the sink");
  }
  report.witness = std::move(w);
  report.sync_state = sink;
  return report;
}

// ---------------------------------------------------------------------------

ThresholdVector threshold_vector(const Word& w, std::size_t n, std::size_t k) {
  if (n == 0) throw PreconditionError("threshold_vector: n must be positive");
  ThresholdVector v{std::vector<std::size_t>(k, 0)};
  for (Letter x : w) {
    if (x >= k) throw PreconditionError("threshold_vector: letter out of range");
    v.counts[x] = std::min(v.counts[x] + 1, n - 1);
  }
  return v;
}

AcceptedVectorSet::AcceptedVectorSet(std::size_t n, std::size_t k)
    : n_(n), k_(k), member_(checked_power(n, k), 0) {
  if (n == 0) throw PreconditionError("AcceptedVectorSet: n must be positive");
}

AcceptedVectorSet AcceptedVectorSet::all(std::size_t n, std::size_t k) {
  AcceptedVectorSet s(n, k);
  std::fill(s.member_.begin(), s.member_.end(), 1);
  return s;
}

std::size_t AcceptedVectorSet::size() const {
  return static_cast<std::size_t>(std::count(member_.begin(), member_.end(), 1));
}

std::size_t AcceptedVectorSet::encode(const ThresholdVector& v) const {
  if (v.counts.size() != k_) throw PreconditionError("threshold vector has the wrong dimension");
  std::size_t index = 0;
  for (std::size_t c : v.counts) {
    if (c >= n_) throw PreconditionError("threshold vector entry exceeds n-1");
    index = index * n_ + c;
  }
  return index;
}

ThresholdVector AcceptedVectorSet::decode(std::size_t index) const {
  ThresholdVector v{std::vector<std::size_t>(k_)};
  for (std::size_t j = k_; j-- > 0;) {
    v.counts[j] = index % n_;
    index /= n_;
  }
  return v;
}

std::vector<ThresholdVector> AcceptedVectorSet::vectors() const {
  std::vector<ThresholdVector> out;
  for (std::size_t i = 0; i < member_.size(); ++i) {
    if (member_[i]) out.push_back(decode(i));
  }
  return out;
}

AcceptedVectorSet& AcceptedVectorSet::intersect_with(const AcceptedVectorSet& other) {
  if (other.n_ != n_ || other.k_ != k_) throw PreconditionError("vector sets differ in shape");
  for (std::size_t i = 0; i < member_.size(); ++i) member_[i] = member_[i] && other.member_[i];
  return *this;
}

AcceptedVectorSet& AcceptedVectorSet::unite_with(const AcceptedVectorSet& other) {
  if (other.n_ != n_ || other.k_ != k_) throw PreconditionError("vector sets differ in shape");
  for (std::size_t i = 0; i < member_.size(); ++i) member_[i] = member_[i] || other.member_[i];
  return *this;
}

Pdfa counting_automaton(std::size_t n, const Alphabet& alphabet,
                        const AcceptedVectorSet& accepted) {
  const std::size_t k = alphabet.size();
  if (accepted.n() != n || accepted.k() != k) {
    throw PreconditionError("counting_automaton: accepted vectors have dimensions (" +
                            std::to_string(accepted.k()) + ", " + std::to_string(accepted.n()) +
                            "), expected (" + std::to_string(k) + ", " + std::to_string(n) + ")");
  }
  const std::size_t states = accepted.capacity();
  std::vector<std::size_t> weight(k, 1);
  for (std::size_t j = k; j-- > 1;) weight[j - 1] = weight[j] * n;

  std::vector<State> table(states * k);
  std::vector<State> finals;
  for (std::size_t s = 0; s < states; ++s) {
    if (accepted.contains_index(s)) finals.push_back(static_cast<State>(s));
    for (Letter x = 0; x < k; ++x) {
      const std::size_t digit = (s / weight[x]) % n;
      table[s * k + x] = static_cast<State>(digit + 1 < n ? s + weight[x] : s);
    }
  }
  return Pdfa(alphabet, states, std::move(table), 0, std::move(finals));
}

namespace {

void validate_wac(const Pdfa& b, std::size_t n, const char* op) {
  if (!b.complete()) throw PreconditionError(std::string(op) + ": automaton is not complete");
  if (b.size() > n) {
    throw PreconditionError(std::string(op) + ": automaton has more than n = " +
                            std::to_string(n) + " states");
  }
  if (!is_commutative(b)) throw PreconditionError(std::string(op) + ": automaton is not commutative");
  if (!is_weakly_acyclic(b)) {
    throw PreconditionError(std::string(op) + ": automaton is not weakly acyclic");
  }
}

// Visits a_1^{c_1}⋯a_k^{c_k} for all c with c_1 ≡ offset (mod stride).
void enumerate_canonical(const Pdfa& b, std::size_t n, std::size_t offset, std::size_t stride,
                         AcceptedVectorSet& out) {
  const std::size_t k = b.letters();
  auto rec = [&](auto&& self, std::size_t j, State q, std::size_t index) -> void {
    if (j == k) {
      if (b.is_final(q)) out.insert_index(index);
      return;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (j != 0 || c % stride == offset) self(self, j + 1, q, index * n + c);
      q = b.next(q, static_cast<Letter>(j));
    }
  };
  rec(rec, 0, b.start(), 0);
}

}  // namespace

AcceptedVectorSet accepted_vectors(const Pdfa& b, std::size_t n, std::size_t jobs) {
  validate_wac(b, n, "accepted_vectors");
  AcceptedVectorSet out(n, b.letters());
  jobs = std::clamp<std::size_t>(jobs, 1, n);
  if (jobs == 1 || b.letters() == 0) {
    enumerate_canonical(b, n, 0, 1, out);
    return out;
  }
  // Workers write to disjoint entries (distinct first digits).
  std::vector<std::thread> workers;
  for (std::size_t t = 0; t < jobs; ++t) {
    workers.emplace_back([&, t] { enumerate_canonical(b, n, t, jobs, out); });
  }
  for (auto& w : workers) w.join();
  return out;
}

Pdfa intersect_wac(const std::vector<Pdfa>& automata, std::size_t n, std::size_t jobs) {
  if (automata.empty()) throw PreconditionError("intersect_wac: no automata given");
  const Alphabet& alphabet = automata.front().alphabet();
  for (const Pdfa& b : automata) {
    if (!(b.alphabet() == alphabet)) throw AlphabetMismatch("intersect_wac: alphabets differ");
  }
  AcceptedVectorSet common = AcceptedVectorSet::all(n, alphabet.size());
  for (const Pdfa& b : automata) common.intersect_with(accepted_vectors(b, n, jobs));
  return counting_automaton(n, alphabet, common);
}

Pdfa sync_language_automaton(const Dcsa& a, SyncLanguageOptions options) {
  if (!commutative_is_synchronizing(a).synchronizing) return Pdfa::empty_language(a.alphabet());
  const Dcsa c = scc_quotient(a);
  const std::size_t m = c.size();
  const auto sink = static_cast<State>(m - 1);  // topologically last

  std::vector<bool> entered(m, false);
  for (State q = 0; q < m; ++q) {
    for (Letter x = 0; x < c.letters(); ++x) {
      if (c.next(q, x) != q) entered[c.next(q, x)] = true;
    }
  }
  std::vector<Pdfa> parts;
  for (State q = 0; q < m; ++q) {
    if (options.minimal_states_only && entered[q]) continue;
    parts.emplace_back(c, q, std::vector<State>{sink});
  }
  return intersect_wac(parts, m, options.jobs);
}

std::optional<Word> constrained_sync_commutative(const Dcsa& a, const Pdfa& b,
                                                 SyncLanguageOptions options) {
  if (!(a.alphabet() == b.alphabet())) {
    throw AlphabetMismatch("input automaton and constraint are over different alphabets");
  }
  require_commutative(a, "constrained_sync_commutative");
  return shortest_accepted_word(product(sync_language_automaton(a, options), b));
}

}  // namespace csync
