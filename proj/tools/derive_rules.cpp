// Regenerates the derived decision table for binary simple-idempotent inputs.
//
// Every binary PDFA with at most three states and one final state is trimmed
// and reduced to its canonical key. For each key the exact oracle is run on
// sink_cycle_automaton(n) and on case2_automaton(n, p) for all coprime p, and
// the observed yes/no pattern is matched against a fixed list of predicates.
// Keys whose pattern matches no predicate get kOracle, which makes the solver
// fall back to exact search for them.
//
//   derive_rules [--min-n 5] [--max-n 12] [--check-to 14] [--output FILE]

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "csync/generators.hpp"
#include "csync/graph.hpp"
#include "csync/simple_idempotent.hpp"
#include "csync/sync.hpp"

using namespace csync;

namespace {

struct Observations {
  std::vector<std::pair<std::size_t, bool>> case1;                       // (n, yes)
  std::vector<std::tuple<std::size_t, std::size_t, bool>> case2;         // (n, p, yes)
};

constexpr Case1Rule kCase1Candidates[] = {Case1Rule::kNever, Case1Rule::kAlways,
                                          Case1Rule::kEvenN, Case1Rule::kNMinus1NotDiv3};
constexpr Case2Rule kCase2Candidates[] = {
    Case2Rule::kNever,    Case2Rule::kAlways,   Case2Rule::kPIsNMinus1,
    Case2Rule::kPIsNMinus2, Case2Rule::kOddN, Case2Rule::kNNotDiv3,
    Case2Rule::kEvenNOrEvenPOrPAtLeastNMinus2};

std::string enum_name(Case1Rule r) {
  switch (r) {
    case Case1Rule::kNever: return "kNever";
    case Case1Rule::kAlways: return "kAlways";
    case Case1Rule::kEvenN: return "kEvenN";
    case Case1Rule::kNMinus1NotDiv3: return "kNMinus1NotDiv3";
    case Case1Rule::kOracle: return "kOracle";
  }
  return "kOracle";
}

std::string enum_name(Case2Rule r) {
  switch (r) {
    case Case2Rule::kNever: return "kNever";
    case Case2Rule::kAlways: return "kAlways";
    case Case2Rule::kPIsNMinus1: return "kPIsNMinus1";
    case Case2Rule::kPIsNMinus2: return "kPIsNMinus2";
    case Case2Rule::kOddN: return "kOddN";
    case Case2Rule::kNNotDiv3: return "kNNotDiv3";
    case Case2Rule::kEvenNOrEvenPOrPAtLeastNMinus2: return "kEvenNOrEvenPOrPAtLeastNMinus2";
    case Case2Rule::kOracle: return "kOracle";
  }
  return "kOracle";
}

// All trimmed single-final binary PDFAs with at most three states, by key.
std::map<std::string, Pdfa> constraint_shapes() {
  const Alphabet& ab = binary_alphabet();
  std::map<std::string, Pdfa> shapes;
  for (std::size_t m = 1; m <= 3; ++m) {
    const std::size_t cells = 2 * m;
    std::vector<State> table(cells, kNoState);
    std::size_t combos = 1;
    for (std::size_t i = 0; i < cells; ++i) combos *= m + 1;
    for (std::size_t code = 0; code < combos; ++code) {
      std::size_t c = code;
      for (std::size_t i = 0; i < cells; ++i) {
        const std::size_t digit = c % (m + 1);
        c /= m + 1;
        table[i] = digit == m ? kNoState : static_cast<State>(digit);
      }
      for (State f = 0; f < m; ++f) {
        const Pdfa trimmed = trim(Pdfa(ab, m, table, 0, {f}));
        if (trimmed.finals().empty()) continue;
        shapes.emplace(constraint_key(trimmed), trimmed);
      }
    }
  }
  return shapes;
}

Observations observe(const Pdfa& b, std::size_t lo, std::size_t hi) {
  Observations obs;
  for (std::size_t n = lo; n <= hi; ++n) {
    obs.case1.emplace_back(n, constrained_sync_oracle(sink_cycle_automaton(n), b).has_value());
    for (std::size_t p = 1; p < n; ++p) {
      if (std::gcd(n, p) != 1) continue;
      obs.case2.emplace_back(n, p,
                             constrained_sync_oracle(case2_automaton(n, p), b).has_value());
    }
  }
  return obs;
}

Case1Rule fit_case1(const Observations& obs) {
  for (Case1Rule r : kCase1Candidates) {
    if (std::all_of(obs.case1.begin(), obs.case1.end(),
                    [&](const auto& o) { return evaluate(r, o.first) == o.second; })) {
      return r;
    }
  }
  return Case1Rule::kOracle;
}

Case2Rule fit_case2(const Observations& obs) {
  for (Case2Rule r : kCase2Candidates) {
    if (std::all_of(obs.case2.begin(), obs.case2.end(), [&](const auto& o) {
          return evaluate(r, std::get<0>(o), std::get<1>(o)) == std::get<2>(o);
        })) {
      return r;
    }
  }
  return Case2Rule::kOracle;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derive the decision table for binary simple-idempotent inputs"};
  std::size_t min_n = 5, max_n = 12, check_to = 0;
  std::string output;
  app.add_option("--min-n", min_n, "Smallest n observed")->check(CLI::Range(5, 20));
  app.add_option("--max-n", max_n, "Largest n used for fitting")->check(CLI::Range(5, 20));
  app.add_option("--check-to", check_to, "Re-check fitted rules up to this n (0: off)");
  app.add_option("--output", output, "Write the table here instead of stdout");
  CLI11_PARSE(app, argc, argv);

  const auto shapes = constraint_shapes();
  std::cerr << shapes.size() << " constraint shapes\n";

  std::string table = "// Generated by tools/derive_rules (n in [" + std::to_string(min_n) + ", " +
                      std::to_string(max_n) + "]). Do not edit by hand.\n";
  std::size_t unresolved = 0, mismatches = 0, done = 0;
  for (const auto& [key, b] : shapes) {
    const Observations obs = observe(b, min_n, max_n);
    const Case1Rule r1 = fit_case1(obs);
    const Case2Rule r2 = fit_case2(obs);
    unresolved += (r1 == Case1Rule::kOracle) + (r2 == Case2Rule::kOracle);
    if (check_to > max_n) {
      const Observations extra = observe(b, max_n + 1, check_to);
      for (const auto& [n, yes] : extra.case1) {
        if (evaluate(r1, n).value_or(yes) != yes) {
          ++mismatches;
          std::cerr << "case1 mismatch " << key << " n=" << n << "\n";
        }
      }
      for (const auto& [n, p, yes] : extra.case2) {
        if (evaluate(r2, n, p).value_or(yes) != yes) {
          ++mismatches;
          std::cerr << "case2 mismatch " << key << " n=" << n << " p=" << p << "\n";
        }
      }
    }
    table += "{\"" + key + "\", Case1Rule::" + enum_name(r1) + ", Case2Rule::" + enum_name(r2) +
             "},\n";
    if (++done % 200 == 0) std::cerr << done << " / " << shapes.size() << "\n";
  }
  std::cerr << "unresolved patterns: " << unresolved << ", extended-range mismatches: "
            << mismatches << "\n";

  if (output.empty()) {
    std::cout << table;
  } else {
    std::ofstream(output) << table;
  }
  return mismatches == 0 ? 0 : 1;
}
