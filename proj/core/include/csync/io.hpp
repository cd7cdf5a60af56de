#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include "csync/automaton.hpp"

namespace csync {

using AnyAutomaton = std::variant<Dcsa, Pdfa>;

/// Parses the line-oriented `.aut` format:
///
///     alphabet a b
///     states 4
///     initial 0        (optional)
///     final 2 3        (optional, may be empty)
///     trans 0 a 1
///
/// `#` starts a comment. Without `initial`/`final` lines the result is a Dcsa
/// and the table must be total; otherwise a Pdfa (initial defaults to 0).
/// Throws ParseError.
AnyAutomaton parse_automaton(std::string_view text);
AnyAutomaton parse_automaton(std::istream& in);
AnyAutomaton load_automaton(const std::string& path);

/// parse_automaton, then require the requested kind.
Dcsa parse_dcsa(std::string_view text);
Pdfa parse_pdfa(std::string_view text);

/// Emits lines in canonical order; transitions sorted by (source, letter).
/// A non-empty `header` is written first as `#` comment lines.
std::string serialize_automaton(const Dcsa& a, std::string_view header = {});
std::string serialize_automaton(const Pdfa& b, std::string_view header = {});
std::string serialize_automaton(const AnyAutomaton& a, std::string_view header = {});

/// Graphviz digraph, one edge per defined transition.
std::string to_dot(const Dcsa& a, std::string_view name = "A");
std::string to_dot(const Pdfa& b, std::string_view name = "B");

}  // namespace csync
