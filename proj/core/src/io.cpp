#include "csync/io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "csync/errors.hpp"

namespace csync {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t begin = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > begin) fields.push_back(line.substr(begin, i - begin));
  }
  return fields;
}

std::size_t parse_count(std::string_view field, std::size_t line) {
  std::size_t value = 0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(field) + "'");
  }
  return value;
}

State parse_state(std::string_view field, std::size_t n_states, std::size_t line) {
  const std::size_t q = parse_count(field, line);
  if (q >= n_states) {
    throw ParseError(line, "state " + std::to_string(q) + " out of range [0, " +
                               std::to_string(n_states) + ")");
  }
  return static_cast<State>(q);
}

}  // namespace

AnyAutomaton parse_automaton(std::string_view text) {
  std::optional<Alphabet> alphabet;
  std::optional<std::size_t> n_states;
  std::optional<State> initial;
  std::optional<std::vector<State>> finals;
  std::vector<State> table;

  auto require_header = [&](std::size_t line) {
    if (!alphabet || !n_states) {
      throw ParseError(line, "'alphabet' and 'states' must precede this line");
    }
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    const std::string_view keyword = fields[0];

    if (keyword == "alphabet") {
      if (alphabet) throw ParseError(line_no, "duplicate 'alphabet' line");
      std::vector<char> symbols;
      for (std::size_t i = 1; i < fields.size(); ++i) {
        if (fields[i].size() != 1) {
          throw ParseError(line_no, "symbols must be single characters: '" +
                                        std::string(fields[i]) + "'");
        }
        symbols.push_back(fields[i][0]);
      }
      try {
        alphabet = Alphabet(std::move(symbols));
      } catch (const InvalidAutomaton& e) {
        throw ParseError(line_no, e.what());
      }
    } else if (keyword == "states") {
      if (n_states) throw ParseError(line_no, "duplicate 'states' line");
      if (!alphabet) throw ParseError(line_no, "'alphabet' must precede 'states'");
      if (fields.size() != 2) throw ParseError(line_no, "expected 'states <count>'");
      n_states = parse_count(fields[1], line_no);
      if (*n_states == 0) throw ParseError(line_no, "automaton must have at least one state");
      table.assign(*n_states * alphabet->size(), kNoState);
    } else if (keyword == "initial") {
      require_header(line_no);
      if (initial) throw ParseError(line_no, "duplicate 'initial' line");
      if (fields.size() != 2) throw ParseError(line_no, "expected 'initial <state>'");
      initial = parse_state(fields[1], *n_states, line_no);
    } else if (keyword == "final") {
      require_header(line_no);
      if (finals) throw ParseError(line_no, "duplicate 'final' line");
      finals.emplace();
      for (std::size_t i = 1; i < fields.size(); ++i) {
        finals->push_back(parse_state(fields[i], *n_states, line_no));
      }
    } else if (keyword == "trans") {
      require_header(line_no);
      if (fields.size() != 4) throw ParseError(line_no, "expected 'trans <source> <symbol> <target>'");
      const State source = parse_state(fields[1], *n_states, line_no);
      if (fields[2].size() != 1) throw ParseError(line_no, "symbols must be single characters");
      const auto letter = alphabet->index_of(fields[2][0]);
      if (!letter) throw ParseError(line_no, "unknown symbol '" + std::string(fields[2]) + "'");
      const State target = parse_state(fields[3], *n_states, line_no);
      State& slot = table[source * alphabet->size() + *letter];
      if (slot != kNoState) {
        throw ParseError(line_no, "duplicate transition for state " + std::to_string(source) +
                                      " on '" + std::string(fields[2]) + "'");
      }
      slot = target;
    } else {
      throw ParseError(line_no, "unknown keyword '" + std::string(keyword) + "'");
    }
  }

  if (!alphabet) throw ParseError("missing 'alphabet' line");
  if (!n_states) throw ParseError("missing 'states' line");

  if (!initial && !finals) {
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (table[i] == kNoState) {
        throw ParseError("semi-automaton without initial/final lines must be complete: state " +
                         std::to_string(i / alphabet->size()) + " has no transition on '" +
                         alphabet->symbol(static_cast<Letter>(i % alphabet->size())) + "'");
      }
    }
    return Dcsa(*alphabet, *n_states, std::move(table));
  }
  return Pdfa(*alphabet, *n_states, std::move(table), initial.value_or(0),
              finals.value_or(std::vector<State>{}));
}

AnyAutomaton parse_automaton(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_automaton(buffer.str());
}

AnyAutomaton load_automaton(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_automaton(in);
}

Dcsa parse_dcsa(std::string_view text) {
  auto any = parse_automaton(text);
  if (auto* a = std::get_if<Dcsa>(&any)) return std::move(*a);
  throw ParseError("expected a complete semi-automaton (no initial/final lines)");
}

Pdfa parse_pdfa(std::string_view text) {
  auto any = parse_automaton(text);
  if (auto* b = std::get_if<Pdfa>(&any)) return std::move(*b);
  throw ParseError("expected a partial automaton with 'initial'/'final' lines");
}

namespace {

void write_header(std::ostringstream& out, std::string_view header) {
  std::size_t pos = 0;
  while (pos < header.size()) {
    const std::size_t eol = std::min(header.find('\n', pos), header.size());
    out << "# " << header.substr(pos, eol - pos) << '\n';
    pos = eol + 1;
  }
}

void write_alphabet_and_states(std::ostringstream& out, const Alphabet& alphabet,
                               std::size_t n_states) {
  out << "alphabet";
  for (char c : alphabet.symbols()) out << ' ' << c;
  out << "\nstates " << n_states << '\n';
}

void write_transitions(std::ostringstream& out, const Alphabet& alphabet, std::size_t n_states,
                       std::span<const State> table) {
  const std::size_t k = alphabet.size();
  for (std::size_t q = 0; q < n_states; ++q) {
    for (std::size_t x = 0; x < k; ++x) {
      const State t = table[q * k + x];
      if (t != kNoState) {
        out << "trans " << q << ' ' << alphabet.symbol(static_cast<Letter>(x)) << ' ' << t << '\n';
      }
    }
  }
}

}  // namespace

std::string serialize_automaton(const Dcsa& a, std::string_view header) {
  std::ostringstream out;
  write_header(out, header);
  write_alphabet_and_states(out, a.alphabet(), a.size());
  write_transitions(out, a.alphabet(), a.size(), a.table());
  return out.str();
}

std::string serialize_automaton(const Pdfa& b, std::string_view header) {
  std::ostringstream out;
  write_header(out, header);
  write_alphabet_and_states(out, b.alphabet(), b.size());
  out << "initial " << b.start() << "\nfinal";
  for (State f : b.finals()) out << ' ' << f;
  out << '\n';
  write_transitions(out, b.alphabet(), b.size(), b.table());
  return out.str();
}

std::string serialize_automaton(const AnyAutomaton& a, std::string_view header) {
  return std::visit([&](const auto& x) { return serialize_automaton(x, header); }, a);
}

namespace {

std::string dot_escape(char c) {
  if (c == '"' || c == '\\') return std::string("\\") + c;
  return std::string(1, c);
}

}  // namespace

std::string to_dot(const Dcsa& a, std::string_view name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (std::size_t q = 0; q < a.size(); ++q) out << "  " << q << ";\n";
  for (std::size_t q = 0; q < a.size(); ++q) {
    for (Letter x = 0; x < a.letters(); ++x) {
      out << "  " << q << " -> " << a.next(static_cast<State>(q), x) << " [label=\""
          << dot_escape(a.alphabet().symbol(x)) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const Pdfa& b, std::string_view name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  rankdir=LR;\n";
  out << "  __start [shape=point];\n";
  for (std::size_t p = 0; p < b.size(); ++p) {
    out << "  " << p << " [shape=" << (b.is_final(static_cast<State>(p)) ? "doublecircle" : "circle")
        << "];\n";
  }
  out << "  __start -> " << b.start() << ";\n";
  for (std::size_t p = 0; p < b.size(); ++p) {
    for (Letter x = 0; x < b.letters(); ++x) {
      const State t = b.next(static_cast<State>(p), x);
      if (t == kNoState) continue;
      out << "  " << p << " -> " << t << " [label=\"" << dot_escape(b.alphabet().symbol(x))
          << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace csync
