#pragma once

// Independent brute-force references and random instance generators
// shared by the property tests and the acceptance binary.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "achem/causal.hpp"
#include "achem/chemistry.hpp"
#include "achem/engine.hpp"
#include "achem/multiset.hpp"

namespace oracle {

using namespace achem;

// Every causal path from `from` to `to` with 1..max_len steps anchored at
// strictly increasing states in [first, last], by exhaustive recursion.
inline std::vector<CausalPath> brute_paths(const Trace& trace, const ChemistrySpec& spec, const Symbol& from,
                                           const Symbol& to, std::size_t max_len, std::size_t first, std::size_t last,
                                           Feasibility mode = Feasibility::standard) {
  std::vector<CausalPath> out;
  CausalPath cur;
  cur.waypoints.push_back(from);
  auto rec = [&](auto&& self, std::size_t min_state) -> void {
    if (cur.steps.size() == max_len) return;
    for (std::size_t i = min_state; i <= last && i < trace.states.size(); ++i) {
      for (const auto& r : spec.reactions) {
        if (!is_feasible(r, trace.states[i], mode)) continue;
        if (!r.input.in_support(cur.waypoints.back())) continue;
        for (const auto& [t, n] : r.output) {
          cur.steps.steps.push_back({r.name, i});
          cur.waypoints.push_back(t);
          if (t == to) out.push_back(cur);
          self(self, i + 1);
          cur.steps.steps.pop_back();
          cur.waypoints.pop_back();
        }
      }
    }
  };
  rec(rec, first);
  std::sort(out.begin(), out.end());
  return out;
}

inline Count brute_pairwise(const Trace& trace, const ChemistrySpec& spec, const std::set<Symbol>& from,
                            const std::set<Symbol>& to, std::size_t max_len, std::size_t first, std::size_t last) {
  Count total = 0;
  for (const auto& a : from)
    for (const auto& b : to) total += brute_paths(trace, spec, a, b, max_len, first, last).size();
  return total;
}

// Smallest l, then smallest n, such that states repeat with period l from
// n+1 to the end and at least two periods are recorded. Compares states
// directly, O(T^2 * l).
inline std::optional<CycleWitness> brute_cycle(const Trace& trace) {
  if (trace.states.empty()) return std::nullopt;
  const std::size_t last = trace.states.size() - 1;
  for (std::size_t l = 1; 2 * l <= last; ++l) {
    for (std::size_t n = 0; n + 2 * l <= last; ++n) {
      bool ok = true;
      for (std::size_t i = n + 1; i + l <= last && ok; ++i) ok = trace.states[i] == trace.states[i + l];
      if (ok) return CycleWitness{n, l};
    }
  }
  return std::nullopt;
}

inline Symbol sym(std::size_t i) { return "m" + std::to_string(i); }

inline Multiset random_multiset(std::mt19937& rng, std::size_t alphabet, std::size_t max_distinct, Count max_count) {
  Multiset m;
  std::uniform_int_distribution<std::size_t> pick(0, alphabet - 1), k(0, max_distinct);
  std::uniform_int_distribution<Count> c(1, max_count);
  for (std::size_t i = k(rng); i > 0; --i) m.add(sym(pick(rng)), c(rng));
  return m;
}

// Up to 6 molecules and 4 reactions with non-empty inputs and outputs.
inline ChemistrySpec random_spec(std::mt19937& rng) {
  ChemistrySpec spec;
  std::uniform_int_distribution<std::size_t> nm(2, 6), nr(1, 4);
  const std::size_t molecules = nm(rng), reactions = nr(rng);
  for (std::size_t i = 0; i < molecules; ++i) spec.molecules.push_back(sym(i));
  for (std::size_t r = 0; r < reactions; ++r) {
    Reaction rx{"r" + std::to_string(r + 1), {}, {}};
    while (rx.input.empty()) rx.input = random_multiset(rng, molecules, 2, 2);
    while (rx.output.empty()) rx.output = random_multiset(rng, molecules, 3, 2);
    spec.reactions.push_back(rx);
  }
  while (spec.initial.empty()) spec.initial = random_multiset(rng, molecules, molecules, 3);
  return spec;
}

// A trace of at most 8 states.
inline Trace random_trace(std::mt19937& rng, const ChemistrySpec& spec) {
  std::uniform_int_distribution<std::size_t> steps(1, 7);
  auto policy = rng() % 2 ? SchedulerPolicy::round_robin : SchedulerPolicy::first_declared;
  return simulate(spec, steps(rng), policy);
}

// Eventually periodic state ids with random noise, at most 64 states.
inline Trace random_cycle_trace(std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> len(1, 64), period(1, 6), pre(0, 10), id(0, 5), coin(0, 9);
  const std::size_t T = len(rng), l = period(rng), n = pre(rng);
  std::vector<std::size_t> ids(T);
  std::vector<std::size_t> pattern(l);
  for (auto& p : pattern) p = id(rng);
  for (std::size_t i = 0; i < T; ++i) ids[i] = i <= n ? id(rng) : pattern[(i - n) % l];
  if (coin(rng) < 3 && T > 1) ids[std::uniform_int_distribution<std::size_t>(0, T - 1)(rng)] = id(rng);
  Trace t;
  for (auto i : ids) t.states.push_back(Multiset{{"s", i + 1}});
  t.executed.assign(T - 1, "r");
  return t;
}

}  // namespace oracle
