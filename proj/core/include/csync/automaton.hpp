#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace csync {

using State = std::uint32_t;
using Letter = std::uint32_t;

/// Sentinel target for an undefined partial transition.
inline constexpr State kNoState = std::numeric_limits<State>::max();

/// Sequence of letter indices.
using Word = std::vector<Letter>;

/// Ordered set of single-character symbols; the position of a symbol is its
/// letter index.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<char> symbols);
  /// Each character of `symbols` is one letter, e.g. Alphabet::of("ab").
  static Alphabet of(std::string_view symbols);

  std::size_t size() const noexcept { return symbols_.size(); }
  char symbol(Letter letter) const { return symbols_.at(letter); }
  std::optional<Letter> index_of(char symbol) const noexcept;
  const std::vector<char>& symbols() const noexcept { return symbols_; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<char> symbols_;
};

std::string format_word(const Word& word, const Alphabet& alphabet);
/// Inverse of format_word; throws ParseError on an unknown symbol.
Word parse_word(std::string_view text, const Alphabet& alphabet);

/// Fixed-universe bitset over states 0..universe-1.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe);
  StateSet(std::size_t universe, std::initializer_list<State> states);

  static StateSet full(std::size_t universe);

  std::size_t universe() const noexcept { return universe_; }
  bool contains(State q) const noexcept {
    return (blocks_[q >> 6] >> (q & 63)) & 1u;
  }
  void insert(State q) noexcept { blocks_[q >> 6] |= std::uint64_t{1} << (q & 63); }
  void erase(State q) noexcept { blocks_[q >> 6] &= ~(std::uint64_t{1} << (q & 63)); }
  std::size_t count() const noexcept;
  bool empty() const noexcept;
  /// Smallest member; kNoState if empty.
  State first() const noexcept;
  std::vector<State> members() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      std::uint64_t bits = blocks_[b];
      while (bits != 0) {
        const int offset = __builtin_ctzll(bits);
        f(static_cast<State>(b * 64 + static_cast<std::size_t>(offset)));
        bits &= bits - 1;
      }
    }
  }

  std::size_t hash() const noexcept;
  friend bool operator==(const StateSet&, const StateSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> blocks_;
};

struct StateSetHash {
  std::size_t operator()(const StateSet& s) const noexcept { return s.hash(); }
};

/// Deterministic complete semi-automaton (Σ, Q, δ).
class Dcsa {
 public:
  /// `table[q * k + a]` is δ(q, a). Throws InvalidAutomaton if the table is not
  /// total or a target is out of range.
  Dcsa(Alphabet alphabet, std::size_t n_states, std::vector<State> table);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return n_states_; }
  std::size_t letters() const noexcept { return alphabet_.size(); }

  State next(State q, Letter a) const noexcept { return table_[q * letters() + a]; }
  State run(State q, const Word& w) const noexcept;
  std::span<const State> table() const noexcept { return table_; }

  friend bool operator==(const Dcsa&, const Dcsa&) = default;

 private:
  Alphabet alphabet_;
  std::size_t n_states_;
  std::vector<State> table_;
};

/// Partial deterministic finite automaton (Σ, P, μ, p₀, F).
class Pdfa {
 public:
  /// `table[p * k + a]` is μ(p, a) or kNoState. `finals` lists final states.
  Pdfa(Alphabet alphabet, std::size_t n_states, std::vector<State> table, State start,
       std::vector<State> finals);
  /// Complete automaton sharing `a`'s transition table.
  Pdfa(const Dcsa& a, State start, std::vector<State> finals);

  /// One state, every letter loops, state final: recognizes Σ*.
  static Pdfa universal(const Alphabet& alphabet);
  /// One state, no transitions, no finals: recognizes ∅.
  static Pdfa empty_language(const Alphabet& alphabet);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return n_states_; }
  std::size_t letters() const noexcept { return alphabet_.size(); }
  State start() const noexcept { return start_; }

  State next(State p, Letter a) const noexcept { return table_[p * letters() + a]; }
  bool defined(State p, Letter a) const noexcept { return next(p, a) != kNoState; }
  bool is_final(State p) const noexcept { return is_final_[p] != 0; }
  std::vector<State> finals() const;
  bool complete() const noexcept;
  std::size_t transition_count() const noexcept;

  /// μ(p, w), or kNoState if undefined along the way.
  State run(State p, const Word& w) const noexcept;
  bool accepts(const Word& w) const noexcept;

  /// Same transitions, different start state and final set (B_{p,E}).
  Pdfa with_start_and_finals(State start, std::vector<State> finals) const;

  std::span<const State> table() const noexcept { return table_; }

  friend bool operator==(const Pdfa&, const Pdfa&) = default;

 private:
  Alphabet alphabet_;
  std::size_t n_states_;
  std::vector<State> table_;
  State start_;
  std::vector<char> is_final_;
};

/// δ(S, w). For a Pdfa, states whose run becomes undefined are dropped.
StateSet step(const Dcsa& a, const StateSet& states, const Word& w);
StateSet step(const Pdfa& b, const StateSet& states, const Word& w);

/// δ(Q, w) for the full state set.
StateSet image(const Dcsa& a, const Word& w);

}  // namespace csync
