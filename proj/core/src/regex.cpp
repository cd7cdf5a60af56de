#include "csync/regex.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "csync/errors.hpp"
#include "csync/graph.hpp"

namespace csync {

RegexAst RegexAst::symbol(Letter x) {
  RegexAst node;
  node.kind = Kind::kSymbol;
  node.letter = x;
  return node;
}

namespace {

RegexAst flatten(RegexAst::Kind kind, std::vector<RegexAst> parts) {
  std::vector<RegexAst> flat;
  for (auto& part : parts) {
    if (part.kind == kind) {
      for (auto& child : part.children) flat.push_back(std::move(child));
    } else {
      flat.push_back(std::move(part));
    }
  }
  if (flat.size() == 1) return std::move(flat.front());
  RegexAst node;
  node.kind = kind;
  node.children = std::move(flat);
  return node;
}

}  // namespace

RegexAst RegexAst::concat(std::vector<RegexAst> parts) {
  return flatten(Kind::kConcat, std::move(parts));
}

RegexAst RegexAst::alternation(std::vector<RegexAst> parts) {
  return flatten(Kind::kUnion, std::move(parts));
}

RegexAst RegexAst::star(RegexAst inner) {
  if (inner.kind == Kind::kStar) return inner;  // (r*)* = r*
  RegexAst node;
  node.kind = Kind::kStar;
  node.children.push_back(std::move(inner));
  return node;
}

// ---------------------------------------------------------------------------

namespace {

class RegexParser {
 public:
  RegexParser(std::string_view text, const Alphabet& alphabet) : alphabet_(alphabet) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (!std::isspace(static_cast<unsigned char>(text[i]))) tokens_.push_back({text[i], i});
    }
  }

  RegexAst parse() {
    if (tokens_.empty()) throw ParseError("empty expression");
    RegexAst ast = expr();
    if (pos_ < tokens_.size()) {
      if (peek() == ')') fail("unbalanced parentheses: unexpected ')'");
      fail(std::string("unexpected '") + peek() + "'");
    }
    return ast;
  }

 private:
  struct Token {
    char c;
    std::size_t offset;
  };

  char peek() const { return pos_ < tokens_.size() ? tokens_[pos_].c : '\0'; }
  bool at_end() const { return pos_ >= tokens_.size(); }

  [[noreturn]] void fail(const std::string& what) const {
    const std::size_t offset = at_end() ? (tokens_.empty() ? 0 : tokens_.back().offset + 1)
                                        : tokens_[pos_].offset;
    throw ParseError("regex column " + std::to_string(offset + 1) + ": " + what);
  }

  RegexAst expr() {
    std::vector<RegexAst> terms;
    terms.push_back(term());
    while (peek() == '+') {
      ++pos_;
      terms.push_back(term());
    }
    return RegexAst::alternation(std::move(terms));
  }

  RegexAst term() {
    std::vector<RegexAst> factors;
    while (!at_end() && peek() != '+' && peek() != ')') factors.push_back(factor());
    if (factors.empty()) {
      if (at_end()) fail("dangling operator: expression ends where a term is expected");
      if (peek() == ')') fail("empty group or dangling operator before ')'");
      fail("dangling '+'");
    }
    return RegexAst::concat(std::move(factors));
  }

  RegexAst factor() {
    RegexAst a = atom();
    while (peek() == '*') {
      ++pos_;
      a = RegexAst::star(std::move(a));
    }
    return a;
  }

  RegexAst atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      RegexAst inner = expr();
      if (peek() != ')') fail("unbalanced parentheses: missing ')'");
      ++pos_;
      return inner;
    }
    if (c == '*') fail("dangling '*'");
    const auto x = alphabet_.index_of(c);
    if (!x) fail(std::string("unknown symbol '") + c + "'");
    ++pos_;
    return RegexAst::symbol(*x);
  }

  const Alphabet& alphabet_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

RegexAst parse_regex(std::string_view text, const Alphabet& alphabet) {
  return RegexParser(text, alphabet).parse();
}

std::string to_string(const RegexAst& ast, const Alphabet& alphabet) {
  switch (ast.kind) {
    case RegexAst::Kind::kSymbol:
      return std::string(1, alphabet.symbol(ast.letter));
    case RegexAst::Kind::kStar:
      return "(" + to_string(ast.children.front(), alphabet) + ")*";
    case RegexAst::Kind::kConcat:
    case RegexAst::Kind::kUnion: {
      std::string out = "(";
      for (std::size_t i = 0; i < ast.children.size(); ++i) {
        if (i > 0 && ast.kind == RegexAst::Kind::kUnion) out += '+';
        out += to_string(ast.children[i], alphabet);
      }
      return out + ")";
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Position (Glushkov) automaton: one state per symbol occurrence plus an
// initial state; no ε-transitions, so the subset construction runs directly.

namespace {

struct Positions {
  std::vector<Letter> letter_of;              // position -> letter
  std::vector<std::set<std::size_t>> follow;  // position -> following positions
};

struct Summary {
  bool nullable = false;
  std::set<std::size_t> first;
  std::set<std::size_t> last;
};

Summary analyse(const RegexAst& ast, Positions& pos) {
  switch (ast.kind) {
    case RegexAst::Kind::kSymbol: {
      const std::size_t p = pos.letter_of.size();
      pos.letter_of.push_back(ast.letter);
      pos.follow.emplace_back();
      return Summary{false, {p}, {p}};
    }
    case RegexAst::Kind::kStar: {
      Summary inner = analyse(ast.children.front(), pos);
      for (std::size_t l : inner.last) pos.follow[l].insert(inner.first.begin(), inner.first.end());
      inner.nullable = true;
      return inner;
    }
    case RegexAst::Kind::kUnion: {
      Summary out;
      for (const auto& child : ast.children) {
        Summary s = analyse(child, pos);
        out.nullable = out.nullable || s.nullable;
        out.first.insert(s.first.begin(), s.first.end());
        out.last.insert(s.last.begin(), s.last.end());
      }
      return out;
    }
    case RegexAst::Kind::kConcat: {
      Summary out;
      out.nullable = true;
      for (const auto& child : ast.children) {
        Summary s = analyse(child, pos);
        for (std::size_t l : out.last) pos.follow[l].insert(s.first.begin(), s.first.end());
        if (out.nullable) out.first.insert(s.first.begin(), s.first.end());
        if (s.nullable) {
          out.last.insert(s.last.begin(), s.last.end());
        } else {
          out.last = std::move(s.last);
        }
        out.nullable = out.nullable && s.nullable;
      }
      return out;
    }
  }
  return {};
}

// Moore partition refinement on a trimmed PDFA (undefined = implicit dead
// state, which is distinct from every live state after trimming).
std::vector<std::size_t> equivalence_classes(const Pdfa& b) {
  const std::size_t n = b.size();
  const std::size_t k = b.letters();
  std::vector<std::size_t> cls(n);
  for (State p = 0; p < n; ++p) cls[p] = b.is_final(p) ? 1 : 0;
  std::size_t count = 0;
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> signature_id;
    std::vector<std::size_t> next(n);
    for (State p = 0; p < n; ++p) {
      std::vector<std::size_t> sig{cls[p]};
      for (Letter x = 0; x < k; ++x) {
        const State t = b.next(p, x);
        sig.push_back(t == kNoState ? static_cast<std::size_t>(-1) : cls[t]);
      }
      next[p] = signature_id.try_emplace(std::move(sig), signature_id.size()).first->second;
    }
    const std::size_t new_count = signature_id.size();
    cls = std::move(next);
    if (new_count == count) break;
    count = new_count;
  }
  return cls;
}

Pdfa quotient_by(const Pdfa& b, const std::vector<std::size_t>& cls) {
  const std::size_t k = b.letters();
  const std::size_t classes = *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<State> table(classes * k, kNoState);
  std::vector<char> fin(classes, 0);
  for (State p = 0; p < b.size(); ++p) {
    if (b.is_final(p)) fin[cls[p]] = 1;
    for (Letter x = 0; x < k; ++x) {
      const State t = b.next(p, x);
      if (t != kNoState) table[cls[p] * k + x] = static_cast<State>(cls[t]);
    }
  }
  std::vector<State> finals;
  for (std::size_t c = 0; c < classes; ++c) {
    if (fin[c]) finals.push_back(static_cast<State>(c));
  }
  return Pdfa(b.alphabet(), classes, std::move(table), static_cast<State>(cls[b.start()]),
              std::move(finals));
}

// Gives the start state no incoming transitions from other states.
Pdfa separate_start(const Pdfa& b) {
  const std::size_t k = b.letters();
  bool entered = false;
  for (State p = 0; p < b.size(); ++p) {
    if (p == b.start()) continue;
    for (Letter x = 0; x < k; ++x) entered = entered || b.next(p, x) == b.start();
  }
  if (!entered) return b;
  const std::size_t n = b.size() + 1;
  const State fresh = static_cast<State>(b.size());
  std::vector<State> table(b.table().begin(), b.table().end());
  for (Letter x = 0; x < k; ++x) table.push_back(b.next(b.start(), x));
  auto finals = b.finals();
  if (b.is_final(b.start())) finals.push_back(fresh);
  return Pdfa(b.alphabet(), n, std::move(table), fresh, std::move(finals));
}

}  // namespace

Pdfa compile(const RegexAst& ast, const Alphabet& alphabet) {
  Positions pos;
  const Summary root = analyse(ast, pos);
  const std::size_t k = alphabet.size();

  // Subset construction over position sets. An extra position stands for
  // "nothing read yet"; it is followed by the first positions.
  const std::size_t initial = pos.letter_of.size();
  pos.follow.push_back(root.first);
  auto accepting = [&](const std::set<std::size_t>& subset) {
    return std::any_of(subset.begin(), subset.end(), [&](std::size_t p) {
      return p == initial ? root.nullable : root.last.count(p) > 0;
    });
  };

  std::map<std::set<std::size_t>, State> id;
  std::vector<std::set<std::size_t>> subsets{{initial}};
  id[subsets.front()] = 0;
  std::vector<State> table;
  std::vector<State> finals;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const auto current = subsets[i];
    if (accepting(current)) finals.push_back(static_cast<State>(i));
    for (Letter x = 0; x < k; ++x) {
      std::set<std::size_t> target;
      for (std::size_t p : current) {
        for (std::size_t f : pos.follow[p]) {
          if (pos.letter_of[f] == x) target.insert(f);
        }
      }
      if (target.empty()) {
        table.push_back(kNoState);
        continue;
      }
      auto [it, inserted] = id.try_emplace(target, static_cast<State>(subsets.size()));
      if (inserted) subsets.push_back(target);
      table.push_back(it->second);
    }
  }

  Pdfa dfa(alphabet, subsets.size(), std::move(table), 0, std::move(finals));
  Pdfa trimmed = trim(dfa);
  if (trimmed.finals().empty()) return trimmed;
  Pdfa merged = quotient_by(trimmed, equivalence_classes(trimmed));
  return trim(separate_start(merged));
}

Pdfa compile_regex(std::string_view text, const Alphabet& alphabet) {
  return compile(parse_regex(text, alphabet), alphabet);
}

// ---------------------------------------------------------------------------

SigmaSets::SigmaSets(const Pdfa& b) : n_(b.size()), sets_(b.size() * b.size()) {
  for (State i = 0; i < n_; ++i) {
    for (Letter x = 0; x < b.letters(); ++x) {
      const State j = b.next(i, x);
      if (j != kNoState) sets_[i * n_ + j].push_back(x);
    }
  }
}

SigmaSets sigma_sets(const Pdfa& b) { return SigmaSets(b); }

}  // namespace csync
