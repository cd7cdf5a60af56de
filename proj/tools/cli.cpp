#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "csync/commutative.hpp"
#include "csync/errors.hpp"
#include "csync/generators.hpp"
#include "csync/graph.hpp"
#include "csync/io.hpp"
#include "csync/regex.hpp"
#include "csync/simple_idempotent.hpp"
#include "csync/sync.hpp"

namespace csync::cli {

namespace {

// Thrown for problems that should end in exit status kUsage.
struct UsageError : Error {
  using Error::Error;
};

// Ordered key/value result of one command on one input.
class Report {
 public:
  void add(std::string key, std::string value) { fields_.emplace_back(std::move(key), std::move(value)); }

  std::string render(bool machine) const {
    std::ostringstream os;
    for (const auto& [key, value] : fields_) {
      if (machine) {
        os << key << '=' << value << '\n';
      } else {
        os << key << ": " << value << '\n';
      }
    }
    return os.str();
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

struct Outcome {
  int code = kAnswered;
  std::string text;
  std::string error;
};

struct Common {
  std::vector<std::string> inputs;
  bool machine = false;
  std::size_t budget = SearchBudget{}.max_subsets;
  std::size_t jobs = 1;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string show_word(const Word& w, const Alphabet& alphabet, bool machine) {
  if (w.empty() && !machine) return "(empty word)";
  return format_word(w, alphabet);
}

Dcsa load_input(const std::string& path) {
  AnyAutomaton any = load_automaton(path);
  if (auto* a = std::get_if<Dcsa>(&any)) return std::move(*a);
  throw InvalidAutomaton(path + ": expected a semi-automaton without initial/final lines");
}

Pdfa load_constraint(const std::string& path) {
  AnyAutomaton any = load_automaton(path);
  if (auto* b = std::get_if<Pdfa>(&any)) return std::move(*b);
  throw InvalidAutomaton(path + ": a constraint needs initial/final lines");
}

// Runs `work` on every input, `jobs` at a time, and prints results in input
// order. The exit status is the most severe one seen.
template <typename Work>
int for_each_input(const Common& common, Work work, std::ostream& out, std::ostream& err) {
  const std::size_t count = common.inputs.size();
  std::vector<Outcome> outcomes(count);
  auto run_one = [&](std::size_t i) {
    Outcome& o = outcomes[i];
    try {
      Report report;
      if (count > 1) report.add("file", common.inputs[i]);
      work(common.inputs[i], report);
      o.text = report.render(common.machine);
    } catch (const UsageError& e) {
      o.code = kUsage;
      o.error = e.what();
    } catch (const BudgetExceeded& e) {
      o.code = kBudget;
      Report report;
      if (count > 1) report.add("file", common.inputs[i]);
      report.add("answer", "unknown");
      report.add("reason", "budget_exceeded");
      o.text = report.render(common.machine);
      o.error = e.what();
    } catch (const ParseError& e) {
      o.code = kInvalidInput;
      o.error = common.inputs[i] + ": " + e.what();
    } catch (const PreconditionError& e) {
      o.code = kUsage;
      o.error = e.what();
    } catch (const AlphabetMismatch& e) {
      o.code = kInvalidInput;
      o.error = e.what();
    } catch (const Error& e) {
      o.code = kInvalidInput;
      o.error = e.what();
    }
  };

  const std::size_t jobs = std::clamp<std::size_t>(common.jobs, 1, std::max<std::size_t>(count, 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (std::size_t t = 0; t < jobs; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) run_one(i);
      });
    }
    for (auto& w : workers) w.join();
  }

  int code = kAnswered;
  for (const Outcome& o : outcomes) {
    out << o.text;
    if (!common.machine && count > 1 && !o.text.empty()) out << '\n';
    if (!o.error.empty()) err << "csync: " << o.error << '\n';
    code = std::max(code, o.code);
  }
  return code;
}

void add_common(CLI::App* cmd, Common& common, bool with_budget) {
  cmd->add_option("inputs", common.inputs, "Input .aut files")->required();
  cmd->add_flag("--machine", common.machine, "One key=value pair per line");
  cmd->add_option("--jobs", common.jobs, "Process this many input files concurrently")
      ->check(CLI::Range(std::size_t{1}, std::size_t{256}));
  if (with_budget) {
    cmd->add_option("--budget", common.budget, "Cap on explored subset configurations")
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  }
}

// ---------------------------------------------------------------------------

void cmd_validate(const std::string& path, Report& r) {
  AnyAutomaton any = load_automaton(path);
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        r.add("valid", "yes");
        r.add("kind", std::is_same_v<T, Dcsa> ? "dcsa" : "pdfa");
        r.add("states", std::to_string(m.size()));
        std::string symbols(m.alphabet().symbols().begin(), m.alphabet().symbols().end());
        r.add("alphabet", symbols);
        if constexpr (std::is_same_v<T, Pdfa>) {
          r.add("transitions", std::to_string(m.transition_count()));
          r.add("complete", yes_no(m.complete()));
        }
      },
      any);
}

void cmd_sync(const std::string& path, Report& r, bool shortest, std::size_t budget, bool machine) {
  const Dcsa a = load_input(path);
  std::optional<Word> witness;
  bool yes = false;
  if (shortest) {
    witness = shortest_sync_word(a, SearchBudget{budget});
    yes = witness.has_value();
  } else {
    SyncReport report = is_synchronizing(a);
    yes = report.synchronizing;
    witness = std::move(report.witness);
  }
  r.add("answer", yes_no(yes));
  if (witness) {
    r.add("witness", show_word(*witness, a.alphabet(), machine));
    r.add("length", std::to_string(witness->size()));
  }
  r.add("method", shortest ? "shortest" : "pair-collapse");
}

struct ConstraintSource {
  std::string regex;
  std::string path;
  std::string method = "auto";
};

Pdfa build_constraint(const ConstraintSource& src, const Alphabet& alphabet) {
  if (!src.regex.empty()) {
    try {
      return compile_regex(src.regex, alphabet);
    } catch (const ParseError& e) {
      throw UsageError(std::string("--regex: ") + e.what());
    }
  }
  Pdfa b = load_constraint(src.path);
  if (!(b.alphabet() == alphabet)) {
    throw AlphabetMismatch("constraint " + src.path + " is over a different alphabet");
  }
  return b;
}

bool simple_idempotent_applicable(const Dcsa& a, const Pdfa& b) {
  return a.letters() == 2 && b.size() <= 3 && classify_letters(a).has_simple_idempotents();
}

void cmd_constrained(const std::string& path, Report& r, const ConstraintSource& src,
                     std::size_t budget, bool machine) {
  const Dcsa a = load_input(path);
  const Pdfa b = build_constraint(src, a.alphabet());

  std::string method = src.method;
  if (method == "auto") {
    if (is_commutative(a)) {
      method = "commutative";
    } else if (simple_idempotent_applicable(a, b)) {
      method = "simple-idempotent";
    } else {
      method = "oracle";
    }
  }

  std::optional<Word> witness;
  bool yes = false;
  std::vector<std::string> notes;
  std::string route;
  if (method == "commutative") {
    if (!is_commutative(a)) throw UsageError("--method commutative: input is not commutative");
    witness = constrained_sync_commutative(a, b);
    yes = witness.has_value();
  } else if (method == "simple-idempotent") {
    if (!simple_idempotent_applicable(a, b)) {
      throw UsageError(
          "--method simple-idempotent: needs a binary automaton with simple idempotents and a "
          "constraint with at most three states");
    }
    ConstrainedDecision d = decide_constrained(a, b, SearchBudget{budget});
    yes = d.yes;
    witness = std::move(d.witness);
    notes = std::move(d.diagnostics);
    route = std::string(to_string(d.route));
    if (d.constraint) route += ", " + d.constraint->describe();
  } else {
    witness = constrained_sync_oracle(a, b, SearchBudget{budget});
    yes = witness.has_value();
  }

  r.add("answer", yes_no(yes));
  if (witness) {
    r.add("witness", show_word(*witness, a.alphabet(), machine));
    r.add("length", std::to_string(witness->size()));
  }
  r.add("method", method);
  if (!route.empty()) r.add("route", route);
  for (const auto& note : notes) r.add("note", note);
}

void cmd_classify(const std::string& path, Report& r) {
  const Dcsa a = load_input(path);
  r.add("states", std::to_string(a.size()));
  const LetterClasses classes = classify_letters(a);
  for (Letter x = 0; x < a.letters(); ++x) {
    r.add(std::string("letter_") + a.alphabet().symbol(x), std::string(to_string(classes.at(x))));
  }
  r.add("simple_idempotents", yes_no(classes.has_simple_idempotents()));
  if (a.letters() == 2 && classes.has_simple_idempotents() && a.size() > 3) {
    const StructureForm form = structure_classify(a);
    std::string text(to_string(form.kind));
    if (form.kind != StructureForm::Kind::kNotStructured) {
      text += " a=" + std::string(1, a.alphabet().symbol(form.a)) +
              " b=" + std::string(1, a.alphabet().symbol(form.b)) + " s=" + std::to_string(form.s) +
              " t=" + std::to_string(form.t);
      if (form.kind == StructureForm::Kind::kCase2) text += " p=" + std::to_string(form.p);
    }
    r.add("structure", text);
  } else {
    r.add("structure", "n/a");
  }
  const bool commutative = is_commutative(a);
  r.add("commutative", yes_no(commutative));
  r.add("weakly_acyclic", yes_no(is_weakly_acyclic(a)));
  r.add("scc_count", std::to_string(scc_decompose(a).size()));
  r.add("synchronizing", yes_no(is_synchronizing(a, Witness::kSkip).synchronizing));
}

void cmd_dot(const std::string& path, Report&, const std::string& regex, std::ostream& text) {
  const Dcsa a = load_input(path);
  if (regex.empty()) {
    text << to_dot(a);
    return;
  }
  try {
    text << to_dot(compile_regex(regex, a.alphabet()));
  } catch (const ParseError& e) {
    throw UsageError(std::string("--regex: ") + e.what());
  }
}

struct GenOptions {
  std::string family;
  std::size_t n = 0;
  std::size_t p = 1;
  std::size_t k = 2;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_gen(const GenOptions& g, std::ostream& out, std::ostream& err) {
  std::optional<Dcsa> a;
  std::string header;
  const std::string n = std::to_string(g.n);
  try {
    if (g.family == "cerny") {
      a = cerny(g.n);
      header = "cerny(" + n + ")";
    } else if (g.family == "sink-cycle") {
      a = sink_cycle_automaton(g.n);
      header = "sink_cycle_automaton(" + n + ")";
    } else if (g.family == "case2") {
      a = case2_automaton(g.n, g.p);
      header = "case2_automaton(" + n + ", " + std::to_string(g.p) + ")";
    } else if (g.family == "random-commutative") {
      a = random_commutative(g.n, g.k, Seed{g.seed});
      header = "random_commutative(" + n + ", " + std::to_string(g.k) + ", seed " +
               std::to_string(g.seed) + ")";
    } else if (g.family == "random-simple-idempotent") {
      a = random_simple_idempotents(g.n, Seed{g.seed});
      header = "random_simple_idempotents(" + n + ", seed " + std::to_string(g.seed) + ")";
    } else if (g.family == "figure-commutative") {
      a = figure_commutative();
      header = "commutative synchronizing example, 7 states";
    } else if (g.family == "figure-commutative-nonsync") {
      a = figure_commutative_nonsync();
      header =
          "commutative non-synchronizing example, 7 states\n"
          "the loop drawn at the lower-left node is read as 3 -b-> 3";
    }
  } catch (const PreconditionError& e) {
    err << "csync: gen: " << e.what() << '\n';
    return kUsage;
  }
  const std::string text = serialize_automaton(*a, header);
  if (g.output.empty()) {
    out << text;
    return kAnswered;
  }
  std::ofstream file(g.output);
  file << text;
  if (!file) {
    err << "csync: cannot write " << g.output << '\n';
    return kInvalidInput;
  }
  return kAnswered;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constrained synchronization of finite automata", "csync"};
  app.require_subcommand(1, 1);

  Common common;
  bool shortest = false;
  ConstraintSource src;
  GenOptions gen;
  std::string dot_regex;

  auto* validate = app.add_subcommand("validate", "Parse .aut files and report their shape");
  add_common(validate, common, false);

  auto* sync = app.add_subcommand("sync", "Decide synchronizability; print a reset word");
  add_common(sync, common, true);
  sync->add_flag("--shortest", shortest, "Exact shortest reset word (exponential search)");

  auto* constrained = app.add_subcommand("constrained", "Reset word inside a constraint language");
  add_common(constrained, common, true);
  auto* regex_opt = constrained->add_option("--regex", src.regex, "Constraint expression");
  auto* file_opt = constrained->add_option("--constraint", src.path, "Constraint .aut file");
  regex_opt->excludes(file_opt);
  constrained->add_option("--method", src.method, "Solver")
      ->check(CLI::IsMember({"auto", "commutative", "simple-idempotent", "oracle"}));

  auto* classify = app.add_subcommand("classify", "Letter classes, structure and commutativity");
  add_common(classify, common, false);

  auto* dot = app.add_subcommand("dot", "Graphviz rendering of an automaton or constraint");
  add_common(dot, common, false);
  dot->add_option("--regex", dot_regex, "Render this constraint instead");

  auto* gen_cmd = app.add_subcommand("gen", "Write a generated automaton in .aut format");
  gen_cmd->add_option("--family", gen.family, "Automaton family")
      ->required()
      ->check(CLI::IsMember({"cerny", "sink-cycle", "case2", "random-commutative",
                             "random-simple-idempotent", "figure-commutative",
                             "figure-commutative-nonsync"}));
  gen_cmd->add_option("-n,--states", gen.n, "Number of states");
  gen_cmd->add_option("--p", gen.p, "Offset for case2");
  gen_cmd->add_option("--k", gen.k, "Alphabet size for random-commutative");
  gen_cmd->add_option("--seed", gen.seed, "Seed for random families");
  gen_cmd->add_option("-o,--output", gen.output, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kAnswered : kUsage;
  }

  if (constrained->parsed() && src.regex.empty() && src.path.empty()) {
    err << "csync: constrained needs --regex or --constraint\n";
    return kUsage;
  }

  if (validate->parsed()) {
    return for_each_input(common, cmd_validate, out, err);
  }
  if (sync->parsed()) {
    return for_each_input(
        common, [&](const std::string& p, Report& r) { cmd_sync(p, r, shortest, common.budget, common.machine); },
        out, err);
  }
  if (constrained->parsed()) {
    return for_each_input(
        common,
        [&](const std::string& p, Report& r) { cmd_constrained(p, r, src, common.budget, common.machine); },
        out, err);
  }
  if (classify->parsed()) {
    return for_each_input(common, cmd_classify, out, err);
  }
  if (dot->parsed()) {
    // DOT output is not key/value; render each input directly.
    int code = kAnswered;
    for (const auto& path : common.inputs) {
      Common single = common;
      single.inputs = {path};
      std::ostringstream text;
      Report unused;
      try {
        cmd_dot(path, unused, dot_regex, text);
        out << text.str();
      } catch (const UsageError& e) {
        err << "csync: " << e.what() << '\n';
        code = std::max<int>(code, kUsage);
      } catch (const Error& e) {
        err << "csync: " << path << ": " << e.what() << '\n';
        code = std::max<int>(code, kInvalidInput);
      }
    }
    return code;
  }
  return cmd_gen(gen, out, err);
}

}  // namespace csync::cli
