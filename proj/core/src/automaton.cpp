#include "csync/automaton.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "csync/errors.hpp"

namespace csync {

Alphabet::Alphabet(std::vector<char> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InvalidAutomaton("alphabet must contain at least one symbol");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const auto c = static_cast<unsigned char>(symbols_[i]);
    if (!std::isgraph(c) || c == '#' || c == '(' || c == ')' || c == '+' || c == '*') {
      throw InvalidAutomaton(std::string("invalid alphabet symbol '") + symbols_[i] + "'");
    }
    if (std::find(symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(i),
                  symbols_[i]) != symbols_.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw InvalidAutomaton(std::string("duplicate alphabet symbol '") + symbols_[i] + "'");
    }
  }
}

Alphabet Alphabet::of(std::string_view symbols) {
  return Alphabet(std::vector<char>(symbols.begin(), symbols.end()));
}

std::optional<Letter> Alphabet::index_of(char symbol) const noexcept {
  const auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end()) return std::nullopt;
  return static_cast<Letter>(it - symbols_.begin());
}

std::string format_word(const Word& word, const Alphabet& alphabet) {
  std::string out;
  out.reserve(word.size());
  for (Letter x : word) out.push_back(alphabet.symbol(x));
  return out;
}

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    const auto x = alphabet.index_of(c);
    if (!x) throw ParseError(std::string("unknown symbol '") + c + "' in word");
    w.push_back(*x);
  }
  return w;
}

// ---------------------------------------------------------------------------

StateSet::StateSet(std::size_t universe) : universe_(universe), blocks_((universe + 63) / 64, 0) {}

StateSet::StateSet(std::size_t universe, std::initializer_list<State> states)
    : StateSet(universe) {
  for (State q : states) insert(q);
}

StateSet StateSet::full(std::size_t universe) {
  StateSet s(universe);
  for (std::size_t b = 0; b < s.blocks_.size(); ++b) s.blocks_[b] = ~std::uint64_t{0};
  if (universe % 64 != 0) s.blocks_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
  return s;
}

std::size_t StateSet::count() const noexcept {
  std::size_t c = 0;
  for (auto b : blocks_) c += static_cast<std::size_t>(std::popcount(b));
  return c;
}

bool StateSet::empty() const noexcept {
  return std::all_of(blocks_.begin(), blocks_.end(), [](auto b) { return b == 0; });
}

State StateSet::first() const noexcept {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b] != 0) {
      return static_cast<State>(b * 64 + static_cast<std::size_t>(std::countr_zero(blocks_[b])));
    }
  }
  return kNoState;
}

std::vector<State> StateSet::members() const {
  std::vector<State> out;
  for_each([&](State q) { out.push_back(q); });
  return out;
}

std::size_t StateSet::hash() const noexcept {
  // splitmix-style mixing over the blocks
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ universe_;
  for (auto b : blocks_) {
    h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    h ^= h >> 31;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------

Dcsa::Dcsa(Alphabet alphabet, std::size_t n_states, std::vector<State> table)
    : alphabet_(std::move(alphabet)), n_states_(n_states), table_(std::move(table)) {
  if (n_states_ == 0) throw InvalidAutomaton("automaton must have at least one state");
  if (alphabet_.size() == 0) throw InvalidAutomaton("alphabet must not be empty");
  if (table_.size() != n_states_ * alphabet_.size()) {
    throw InvalidAutomaton("transition table has wrong size");
  }
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] == kNoState) {
      throw InvalidAutomaton("transition from state " + std::to_string(i / letters()) +
                             " on '" + alphabet_.symbol(static_cast<Letter>(i % letters())) +
                             "' is undefined");
    }
    if (table_[i] >= n_states_) {
      throw InvalidAutomaton("transition target " + std::to_string(table_[i]) +
                             " out of range");
    }
  }
}

State Dcsa::run(State q, const Word& w) const noexcept {
  for (Letter x : w) q = next(q, x);
  return q;
}

// ---------------------------------------------------------------------------

Pdfa::Pdfa(Alphabet alphabet, std::size_t n_states, std::vector<State> table, State start,
           std::vector<State> finals)
    : alphabet_(std::move(alphabet)),
      n_states_(n_states),
      table_(std::move(table)),
      start_(start),
      is_final_(n_states, 0) {
  if (n_states_ == 0) throw InvalidAutomaton("automaton must have at least one state");
  if (table_.size() != n_states_ * alphabet_.size()) {
    throw InvalidAutomaton("transition table has wrong size");
  }
  for (State t : table_) {
    if (t != kNoState && t >= n_states_) {
      throw InvalidAutomaton("transition target " + std::to_string(t) + " out of range");
    }
  }
  if (start_ >= n_states_) throw InvalidAutomaton("initial state out of range");
  for (State f : finals) {
    if (f >= n_states_) throw InvalidAutomaton("final state " + std::to_string(f) + " out of range");
    is_final_[f] = 1;
  }
}

Pdfa::Pdfa(const Dcsa& a, State start, std::vector<State> finals)
    : Pdfa(a.alphabet(), a.size(), std::vector<State>(a.table().begin(), a.table().end()),
           start, std::move(finals)) {}

Pdfa Pdfa::universal(const Alphabet& alphabet) {
  return Pdfa(alphabet, 1, std::vector<State>(alphabet.size(), 0), 0, {0});
}

Pdfa Pdfa::empty_language(const Alphabet& alphabet) {
  return Pdfa(alphabet, 1, std::vector<State>(alphabet.size(), kNoState), 0, {});
}

std::vector<State> Pdfa::finals() const {
  std::vector<State> out;
  for (State p = 0; p < n_states_; ++p) {
    if (is_final_[p]) out.push_back(p);
  }
  return out;
}

bool Pdfa::complete() const noexcept {
  return std::none_of(table_.begin(), table_.end(), [](State t) { return t == kNoState; });
}

std::size_t Pdfa::transition_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(table_.begin(), table_.end(), [](State t) { return t != kNoState; }));
}

State Pdfa::run(State p, const Word& w) const noexcept {
  for (Letter x : w) {
    if (p == kNoState) return kNoState;
    p = next(p, x);
  }
  return p;
}

bool Pdfa::accepts(const Word& w) const noexcept {
  const State p = run(start_, w);
  return p != kNoState && is_final(p);
}

Pdfa Pdfa::with_start_and_finals(State start, std::vector<State> finals) const {
  return Pdfa(alphabet_, n_states_, table_, start, std::move(finals));
}

// ---------------------------------------------------------------------------

StateSet step(const Dcsa& a, const StateSet& states, const Word& w) {
  StateSet current = states;
  for (Letter x : w) {
    StateSet next(current.universe());
    current.for_each([&](State q) { next.insert(a.next(q, x)); });
    current = std::move(next);
  }
  return current;
}

StateSet step(const Pdfa& b, const StateSet& states, const Word& w) {
  StateSet current = states;
  for (Letter x : w) {
    StateSet next(current.universe());
    current.for_each([&](State q) {
      const State t = b.next(q, x);
      if (t != kNoState) next.insert(t);
    });
    current = std::move(next);
  }
  return current;
}

StateSet image(const Dcsa& a, const Word& w) { return step(a, StateSet::full(a.size()), w); }

}  // namespace csync
