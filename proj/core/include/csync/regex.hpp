#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "csync/automaton.hpp"

namespace csync {

/// Constraint expression over an alphabet: symbols, juxtaposition, `+`, `*`.
/// There is no empty-word literal; ε only arises through `*`.
struct RegexAst {
  enum class Kind { kSymbol, kConcat, kUnion, kStar };

  Kind kind = Kind::kSymbol;
  Letter letter = 0;               ///< kSymbol only
  std::vector<RegexAst> children;  ///< ≥ 2 for concat/union, 1 for star

  static RegexAst symbol(Letter x);
  static RegexAst concat(std::vector<RegexAst> parts);
  static RegexAst alternation(std::vector<RegexAst> parts);
  static RegexAst star(RegexAst inner);

  friend bool operator==(const RegexAst&, const RegexAst&) = default;
};

/// Grammar: expr := term ('+' term)* ; term := factor+ ; factor := atom '*'* ;
/// atom := SYMBOL | '(' expr ')'. Whitespace is ignored. Throws ParseError.
RegexAst parse_regex(std::string_view text, const Alphabet& alphabet);

/// Fully parenthesised rendering, for diagnostics and golden tests.
std::string to_string(const RegexAst& ast, const Alphabet& alphabet);

/// Trimmed deterministic automaton for the expression's language.
///
/// Position automaton, subset construction, trimming and state-equivalence
/// merging; afterwards the start state is split off if another state enters
/// it, so the start never lies on a cycle through other states. States are
/// numbered in BFS order with letters tried in index order.
Pdfa compile(const RegexAst& ast, const Alphabet& alphabet);
Pdfa compile_regex(std::string_view text, const Alphabet& alphabet);

/// Σ_{i,j} = { x : μ(i, x) = j }.
class SigmaSets {
 public:
  explicit SigmaSets(const Pdfa& b);

  std::size_t states() const noexcept { return n_; }
  const std::vector<Letter>& at(State i, State j) const { return sets_[i * n_ + j]; }
  bool empty(State i, State j) const { return at(i, j).empty(); }

 private:
  std::size_t n_;
  std::vector<std::vector<Letter>> sets_;
};

SigmaSets sigma_sets(const Pdfa& b);

}  // namespace csync
