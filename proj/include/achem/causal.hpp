#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "achem/chemistry.hpp"
#include "achem/engine.hpp"
#include "achem/error.hpp"
#include "achem/multiset.hpp"

namespace achem {

// g1 =>_r g2: g1 is consumed and g2 produced by a reaction feasible at
// state_index.
struct CausalEdge {
  Symbol source;
  Symbol target;
  std::string via;
  std::size_t state_index = 0;

  friend bool operator==(const CausalEdge&, const CausalEdge&) = default;
};

/**
 * Potential reaction multigraph of one state. Parallel edges with
 * different reaction labels are kept. Nodes are the support of the state
 * plus any symbol that only appears as the output of a feasible reaction;
 * the latter are also listed in output_only.
 */
struct ReactionGraph {
  std::size_t state_index = 0;
  std::set<Symbol> nodes;
  std::set<Symbol> output_only;
  std::vector<CausalEdge> edges;
};

// Edges in reaction declaration order, then source, then target.
inline std::vector<CausalEdge> causal_edges(const Multiset& state, const ChemistrySpec& spec, std::size_t state_index,
                                            Feasibility mode = Feasibility::standard) {
  std::vector<CausalEdge> edges;
  for (const auto& r : spec.reactions) {
    if (!is_feasible(r, state, mode)) continue;
    for (const auto& [src, n_in] : r.input)
      for (const auto& [dst, n_out] : r.output) edges.push_back({src, dst, r.name, state_index});
  }
  return edges;
}

inline ReactionGraph reaction_graph(const Multiset& state, const ChemistrySpec& spec, std::size_t state_index,
                                    Feasibility mode = Feasibility::standard) {
  ReactionGraph g;
  g.state_index = state_index;
  g.nodes = state.support();
  g.edges = causal_edges(state, spec, state_index, mode);
  for (const auto& e : g.edges) {
    if (!g.nodes.count(e.target)) g.output_only.insert(e.target);
    if (!g.nodes.count(e.source)) g.output_only.insert(e.source);
  }
  g.nodes.insert(g.output_only.begin(), g.output_only.end());
  return g;
}

// g_0 =>_{r_1} g_1 => ... =>_{r_n} g_n with r_i anchored at strictly
// increasing trace states.
struct CausalPath {
  std::vector<Symbol> waypoints;
  ReactionSeq steps;

  friend bool operator==(const CausalPath&, const CausalPath&) = default;
  friend auto operator<=>(const CausalPath&, const CausalPath&) = default;

  std::size_t length() const { return steps.size(); }
  const Symbol& source() const { return waypoints.front(); }
  const Symbol& target() const { return waypoints.back(); }
};

inline constexpr std::size_t default_path_budget = 10000;

struct PathOptions {
  std::size_t max_len = 4;
  Feasibility mode = Feasibility::standard;
  // Anchors are restricted to this window; whole trace when unset.
  std::optional<IndexWindow> window;
  // Enumeration stops with BudgetExceeded past this many paths.
  std::size_t budget = default_path_budget;
};

/**
 * The reaction steps a causal path may be built from, grouped by state.
 *
 * Either every reaction feasible at every state of a window, or an
 * explicit list of anchored steps (for example the steps of a meta
 * reaction).
 */
class StepPool {
public:
  struct Candidate {
    std::size_t reaction;  // index into spec.reactions
    std::vector<std::size_t> inputs;
    std::vector<std::size_t> outputs;
  };
  struct Group {
    std::size_t state;
    std::vector<Candidate> candidates;
  };

  static StepPool feasible_in(const Trace& trace, const ChemistrySpec& spec, IndexWindow window, Feasibility mode) {
    StepPool pool(spec);
    if (trace.states.empty()) return pool;
    window.last = std::min(window.last, trace.last_index());
    for (std::size_t i = window.first; i <= window.last && window.first <= window.last; ++i) {
      Group g{i, {}};
      for (std::size_t r = 0; r < spec.reactions.size(); ++r)
        if (is_feasible(spec.reactions[r], trace.states[i], mode)) g.candidates.push_back(pool.candidate(r));
      if (!g.candidates.empty()) pool.groups_.push_back(std::move(g));
    }
    return pool;
  }

  // Steps must be feasible at their anchors; duplicates are merged.
  static StepPool from_steps(const std::vector<Step>& steps, const Trace& trace, const ChemistrySpec& spec,
                             Feasibility mode) {
    StepPool pool(spec);
    std::map<std::size_t, std::set<std::size_t>> by_state;
    for (const auto& s : steps) {
      auto idx = spec.reaction_index(s.reaction);
      if (!idx) throw UnknownReaction(s.reaction);
      if (!is_feasible(spec.reactions[*idx], trace.at(s.state), mode))
        throw WitnessMismatch("step " + s.reaction + "@" + std::to_string(s.state) + " is not feasible");
      by_state[s.state].insert(*idx);
    }
    for (const auto& [state, reactions] : by_state) {
      Group g{state, {}};
      for (auto r : reactions) g.candidates.push_back(pool.candidate(r));
      pool.groups_.push_back(std::move(g));
    }
    return pool;
  }

  const std::vector<Group>& groups() const { return groups_; }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  std::optional<std::size_t> symbol_id(const Symbol& s) const {
    auto it = ids_.find(s);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const ChemistrySpec& spec() const { return *spec_; }

private:
  explicit StepPool(const ChemistrySpec& spec) : spec_(&spec) {
    auto intern = [&](const Symbol& s) {
      if (ids_.emplace(s, symbols_.size()).second) symbols_.push_back(s);
    };
    for (const auto& m : spec.molecules) intern(m);
    for (const auto& r : spec.reactions) {
      for (const auto& [s, n] : r.input) intern(s);
      for (const auto& [s, n] : r.output) intern(s);
    }
  }

  Candidate candidate(std::size_t r) const {
    Candidate c{r, {}, {}};
    // Multiset iteration is in symbol order, which fixes the enumeration order.
    for (const auto& [s, n] : spec_->reactions[r].input) c.inputs.push_back(ids_.at(s));
    for (const auto& [s, n] : spec_->reactions[r].output) c.outputs.push_back(ids_.at(s));
    return c;
  }

  const ChemistrySpec* spec_;
  std::vector<Symbol> symbols_;
  std::map<Symbol, std::size_t> ids_;
  std::vector<Group> groups_;
};

namespace detail {

inline Count saturating_add(Count a, Count b) {
  return a > std::numeric_limits<Count>::max() - b ? std::numeric_limits<Count>::max() : a + b;
}

// table[m][g][s]: number of paths of exactly m steps from waypoint s
// using only groups g.. that end on `target`. Row m = 0 is all zeros.
inline std::vector<std::vector<std::vector<Count>>> count_table(const StepPool& pool, std::size_t target,
                                                                std::size_t max_len) {
  const std::size_t G = pool.groups().size(), S = pool.symbols().size();
  std::vector<std::vector<std::vector<Count>>> table(
      max_len + 1, std::vector<std::vector<Count>>(G + 1, std::vector<Count>(S, 0)));
  for (std::size_t m = 1; m <= max_len; ++m) {
    for (std::size_t g = G; g-- > 0;) {
      auto& row = table[m][g];
      row = table[m][g + 1];
      for (const auto& c : pool.groups()[g].candidates) {
        Count via = 0;
        for (auto t : c.outputs) via = saturating_add(via, m == 1 ? Count(t == target) : table[m - 1][g + 1][t]);
        for (auto s : c.inputs) row[s] = saturating_add(row[s], via);
      }
    }
  }
  return table;
}

}  // namespace detail

/**
 * Visit every causal path from `from` to `to` with at most max_len steps
 * drawn from `pool`, in a fixed order: shorter paths first, then earlier
 * anchors, then reaction declaration order, then target symbol order.
 * Returns false if the visitor stopped the walk early.
 */
inline bool for_each_causal_path(const StepPool& pool, const Symbol& from, const Symbol& to, std::size_t max_len,
                                 const std::function<bool(const CausalPath&)>& visit) {
  auto src = pool.symbol_id(from);
  auto dst = pool.symbol_id(to);
  if (!src || !dst || max_len == 0) return true;
  const auto table = detail::count_table(pool, *dst, max_len);
  const auto& groups = pool.groups();
  const auto& spec = pool.spec();

  CausalPath path;
  path.waypoints.push_back(from);
  bool keep_going = true;

  // Depth-first over paths of exactly `remaining` more steps.
  std::function<void(std::size_t, std::size_t, std::size_t)> walk = [&](std::size_t sym, std::size_t first_group,
                                                                        std::size_t remaining) {
    for (std::size_t g = first_group; g < groups.size() && keep_going; ++g) {
      if (table[remaining][g][sym] == 0) return;  // nothing reachable from here on
      for (const auto& c : groups[g].candidates) {
        if (std::find(c.inputs.begin(), c.inputs.end(), sym) == c.inputs.end()) continue;
        for (auto t : c.outputs) {
          if (remaining == 1 ? t != *dst : table[remaining - 1][g + 1][t] == 0) continue;
          path.steps.steps.push_back({spec.reactions[c.reaction].name, groups[g].state});
          path.waypoints.push_back(pool.symbols()[t]);
          if (remaining == 1)
            keep_going = visit(path);
          else
            walk(t, g + 1, remaining - 1);
          path.steps.steps.pop_back();
          path.waypoints.pop_back();
          if (!keep_going) return;
        }
      }
    }
  };
  for (std::size_t len = 1; len <= max_len && keep_going; ++len) walk(*src, 0, len);
  return keep_going;
}

// All causal paths from g to g2; throws BudgetExceeded past opts.budget.
inline std::vector<CausalPath> causal_paths(const Trace& trace, const ChemistrySpec& spec, const Symbol& from,
                                            const Symbol& to, const PathOptions& opts = {}) {
  if (opts.max_len == 0) throw std::invalid_argument("max_len must be at least 1");
  auto pool = StepPool::feasible_in(trace, spec, opts.window.value_or(IndexWindow::whole(trace)), opts.mode);
  std::vector<CausalPath> out;
  for_each_causal_path(pool, from, to, opts.max_len, [&](const CausalPath& p) {
    if (out.size() == opts.budget) throw BudgetExceeded("causal path enumeration", opts.budget);
    out.push_back(p);
    return true;
  });
  return out;
}

// Number of causal paths (a, b) with a in `from`, b in `to`, using at
// most max_len steps drawn from `pool`. Computed by dynamic programming,
// so no enumeration budget applies.
inline Count count_pairwise_paths(const StepPool& pool, const std::set<Symbol>& from, const std::set<Symbol>& to,
                                  std::size_t max_len) {
  if (max_len == 0 || from.empty() || to.empty()) return 0;
  Count total = 0;
  for (const auto& b : to) {
    auto dst = pool.symbol_id(b);
    if (!dst) continue;
    auto table = detail::count_table(pool, *dst, max_len);
    for (const auto& a : from)
      if (auto src = pool.symbol_id(a))
        for (std::size_t m = 1; m <= max_len; ++m) total = detail::saturating_add(total, table[m][0][*src]);
  }
  return total;
}

inline Count count_pairwise_paths(const Trace& trace, const ChemistrySpec& spec, const std::set<Symbol>& from,
                                  const std::set<Symbol>& to, IndexWindow window, std::size_t max_len,
                                  Feasibility mode = Feasibility::standard) {
  if (window.last > trace.last_index()) throw IndexOutOfRange(window.last, trace.states.size());
  return count_pairwise_paths(StepPool::feasible_in(trace, spec, window, mode), from, to, max_len);
}

// Paths restricted to the given anchored steps (for example the steps of a
// level-1 causal path).
inline Count count_pairwise_paths(const Trace& trace, const ChemistrySpec& spec, const std::set<Symbol>& from,
                                  const std::set<Symbol>& to, const std::vector<Step>& steps, std::size_t max_len,
                                  Feasibility mode = Feasibility::standard) {
  return count_pairwise_paths(StepPool::from_steps(steps, trace, spec, mode), from, to, max_len);
}

}  // namespace achem
