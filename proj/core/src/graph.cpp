#include "csync/graph.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "csync/errors.hpp"

namespace csync {
namespace {

// Successor function shared by Dcsa and Pdfa; undefined targets are kNoState.
template <typename Automaton>
SccDecomposition tarjan(const Automaton& a) {
  const std::size_t n = a.size();
  const std::size_t k = a.letters();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);

  std::vector<std::size_t> index(n, kUnvisited), lowlink(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<State> stack;
  std::vector<std::pair<State, Letter>> call;  // (state, next letter to try)
  std::size_t counter = 0;

  SccDecomposition result;
  result.component_of.assign(n, kUnvisited);

  for (State root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;

    while (!call.empty()) {
      auto& [q, next_letter] = call.back();
      if (next_letter < k) {
        const State t = a.next(q, next_letter++);
        if (t == kNoState) continue;
        if (index[t] == kUnvisited) {
          index[t] = lowlink[t] = counter++;
          stack.push_back(t);
          on_stack[t] = 1;
          call.push_back({t, 0});
        } else if (on_stack[t]) {
          lowlink[q] = std::min(lowlink[q], index[t]);
        }
        continue;
      }
      const State done = q;
      call.pop_back();
      if (!call.empty()) {
        const State parent = call.back().first;
        lowlink[parent] = std::min(lowlink[parent], lowlink[done]);
      }
      if (lowlink[done] == index[done]) {
        std::vector<State> members;
        State m;
        do {
          m = stack.back();
          stack.pop_back();
          on_stack[m] = 0;
          result.component_of[m] = result.components.size();
          members.push_back(m);
        } while (m != done);
        std::sort(members.begin(), members.end());
        result.components.push_back(std::move(members));
      }
    }
  }

  // Tarjan completes sink components first; reversing gives a topological order.
  const std::size_t c = result.components.size();
  result.topo_order.resize(c);
  for (std::size_t i = 0; i < c; ++i) result.topo_order[i] = c - 1 - i;

  for (State q = 0; q < n; ++q) {
    for (Letter x = 0; x < k; ++x) {
      const State t = a.next(q, x);
      if (t == kNoState) continue;
      const auto from = result.component_of[q];
      const auto to = result.component_of[t];
      if (from != to) result.dag_edges.emplace_back(from, to);
    }
  }
  std::sort(result.dag_edges.begin(), result.dag_edges.end());
  result.dag_edges.erase(std::unique(result.dag_edges.begin(), result.dag_edges.end()),
                         result.dag_edges.end());
  return result;
}

}  // namespace

bool SccDecomposition::reaches_directly(std::size_t from, std::size_t to) const {
  return std::binary_search(dag_edges.begin(), dag_edges.end(), std::pair{from, to});
}

std::vector<std::size_t> SccDecomposition::sinks() const {
  std::vector<char> has_out(components.size(), 0);
  for (const auto& [from, to] : dag_edges) has_out[from] = 1;
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (!has_out[c]) out.push_back(c);
  }
  return out;
}

SccDecomposition scc_decompose(const Dcsa& a) { return tarjan(a); }
SccDecomposition scc_decompose(const Pdfa& b) { return tarjan(b); }

Pdfa product(const Pdfa& b1, const Pdfa& b2) {
  if (!(b1.alphabet() == b2.alphabet())) {
    throw AlphabetMismatch("product: automata are over different alphabets");
  }
  const std::size_t k = b1.letters();
  const auto key = [&](State p, State q) { return std::uint64_t{p} * b2.size() + q; };

  std::unordered_map<std::uint64_t, State> id;
  std::vector<std::pair<State, State>> pairs;
  std::vector<State> table;
  std::vector<State> finals;

  auto intern = [&](State p, State q) {
    auto [it, inserted] = id.try_emplace(key(p, q), static_cast<State>(pairs.size()));
    if (inserted) pairs.emplace_back(p, q);
    return it->second;
  };

  intern(b1.start(), b2.start());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    if (b1.is_final(p) && b2.is_final(q)) finals.push_back(static_cast<State>(i));
    for (Letter x = 0; x < k; ++x) {
      const State p2 = b1.next(p, x);
      const State q2 = b2.next(q, x);
      table.push_back(p2 == kNoState || q2 == kNoState ? kNoState : intern(p2, q2));
    }
  }
  return Pdfa(b1.alphabet(), pairs.size(), std::move(table), 0, std::move(finals));
}

std::vector<bool> reachable_from(const Pdfa& b, State from) {
  std::vector<bool> seen(b.size(), false);
  std::vector<State> todo{from};
  seen[from] = true;
  while (!todo.empty()) {
    const State p = todo.back();
    todo.pop_back();
    for (Letter x = 0; x < b.letters(); ++x) {
      const State t = b.next(p, x);
      if (t != kNoState && !seen[t]) {
        seen[t] = true;
        todo.push_back(t);
      }
    }
  }
  return seen;
}

bool is_empty(const Pdfa& b) {
  const auto seen = reachable_from(b, b.start());
  for (State p = 0; p < b.size(); ++p) {
    if (seen[p] && b.is_final(p)) return false;
  }
  return true;
}

std::optional<Word> shortest_word_to_final(const Pdfa& b, State from) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(b.size(), kNone);
  std::vector<Letter> via(b.size(), 0);
  std::deque<State> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    const State p = queue.front();
    queue.pop_front();
    if (b.is_final(p)) {
      Word w;
      for (State s = p; s != from; s = static_cast<State>(parent[s])) w.push_back(via[s]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (Letter x = 0; x < b.letters(); ++x) {
      const State t = b.next(p, x);
      if (t != kNoState && parent[t] == kNone) {
        parent[t] = p;
        via[t] = x;
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

std::optional<Word> shortest_accepted_word(const Pdfa& b) {
  return shortest_word_to_final(b, b.start());
}

Pdfa trim(const Pdfa& b) {
  const std::size_t n = b.size();
  const std::size_t k = b.letters();
  const auto reachable = reachable_from(b, b.start());

  // co-reachability by backward propagation
  std::vector<std::vector<State>> preds(n);
  for (State p = 0; p < n; ++p) {
    for (Letter x = 0; x < k; ++x) {
      const State t = b.next(p, x);
      if (t != kNoState) preds[t].push_back(p);
    }
  }
  std::vector<bool> useful(n, false);
  std::vector<State> todo;
  for (State p = 0; p < n; ++p) {
    if (b.is_final(p)) {
      useful[p] = true;
      todo.push_back(p);
    }
  }
  while (!todo.empty()) {
    const State p = todo.back();
    todo.pop_back();
    for (State s : preds[p]) {
      if (!useful[s]) {
        useful[s] = true;
        todo.push_back(s);
      }
    }
  }
  if (!useful[b.start()]) return Pdfa::empty_language(b.alphabet());

  auto keep = [&](State p) { return reachable[p] && useful[p]; };
  std::vector<State> renumber(n, kNoState);
  std::vector<State> order{b.start()};
  renumber[b.start()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Letter x = 0; x < k; ++x) {
      const State t = b.next(order[i], x);
      if (t != kNoState && keep(t) && renumber[t] == kNoState) {
        renumber[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  }
  std::vector<State> table;
  table.reserve(order.size() * k);
  std::vector<State> finals;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (b.is_final(order[i])) finals.push_back(static_cast<State>(i));
    for (Letter x = 0; x < k; ++x) {
      const State t = b.next(order[i], x);
      table.push_back(t != kNoState && keep(t) ? renumber[t] : kNoState);
    }
  }
  return Pdfa(b.alphabet(), order.size(), std::move(table), 0, std::move(finals));
}

}  // namespace csync
