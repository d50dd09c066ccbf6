#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "achem/chemistry.hpp"
#include "achem/error.hpp"
#include "achem/multiset.hpp"

namespace achem {

// Feasibility inequality. `standard` requires P(g) >= input(g); `strict`
// requires P(g) > input(g), so a reaction can never use up the whole
// stock of one of its inputs.
enum class Feasibility { standard, strict };

enum class SchedulerPolicy { first_declared, round_robin };

// Why a simulation stopped.
enum class Halt { terminated, budget_exhausted };

inline const char* to_string(Feasibility mode) { return mode == Feasibility::strict ? "strict" : "standard"; }

inline const char* to_string(SchedulerPolicy policy) {
  return policy == SchedulerPolicy::round_robin ? "round-robin" : "first-declared";
}

inline const char* to_string(Halt halt) { return halt == Halt::terminated ? "terminated" : "budget-exhausted"; }

/**
 * Recorded run: states P_0..P_n and the reaction executed between
 * consecutive states. executed[i] turned states[i] into states[i+1].
 */
struct Trace {
  std::vector<Multiset> states;
  std::vector<std::string> executed;
  Halt halt = Halt::terminated;

  friend bool operator==(const Trace&, const Trace&) = default;

  std::size_t last_index() const { return states.size() - 1; }

  const Multiset& at(std::size_t i) const {
    if (i >= states.size()) throw IndexOutOfRange(i, states.size());
    return states[i];
  }
};

// Inclusive range of state indices.
struct IndexWindow {
  std::size_t first = 0;
  std::size_t last = 0;

  bool contains(std::size_t i) const { return first <= i && i <= last; }
  std::size_t length() const { return last >= first ? last - first + 1 : 0; }

  static IndexWindow whole(const Trace& t) { return {0, t.last_index()}; }

  friend bool operator==(const IndexWindow&, const IndexWindow&) = default;
};

inline bool is_feasible(const Reaction& r, const Multiset& state, Feasibility mode = Feasibility::standard) {
  if (state.empty()) return false;
  for (const auto& [sym, need] : r.input) {
    Count have = state.count(sym);
    if (mode == Feasibility::strict ? have <= need : have < need) return false;
  }
  return true;
}

// Each step's reaction must be feasible in the state it is anchored to.
inline bool is_feasible_seq(const ReactionSeq& seq, const Trace& trace, const ChemistrySpec& spec,
                            Feasibility mode = Feasibility::standard) {
  for (const auto& step : seq) trace.at(step.state);
  for (const auto& step : seq)
    if (!is_feasible(spec.reaction(step.reaction), trace.states[step.state], mode)) return false;
  return true;
}

// (P - input_r) + output_r
inline Multiset apply(const Reaction& r, const Multiset& state, Feasibility mode = Feasibility::standard) {
  if (!is_feasible(r, state, mode)) throw InfeasibleReaction(r.name);
  return additive_union(subtract(state, r.input), r.output);
}

/**
 * Pick the next reaction to execute, or nullopt when nothing is feasible.
 *
 * first_declared returns the feasible reaction with the lowest
 * declaration index. round_robin starts searching just after
 * `previous` and wraps around, so the previously executed reaction is
 * considered last.
 */
inline std::optional<std::size_t> schedule(const Multiset& state, const ChemistrySpec& spec, SchedulerPolicy policy,
                                           std::optional<std::size_t> previous = std::nullopt,
                                           Feasibility mode = Feasibility::standard) {
  const std::size_t n = spec.reactions.size();
  if (n == 0) return std::nullopt;
  std::size_t start = 0;
  if (policy == SchedulerPolicy::round_robin && previous) start = (*previous + 1) % n;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t idx = (start + k) % n;
    if (is_feasible(spec.reactions[idx], state, mode)) return idx;
  }
  return std::nullopt;
}

// Sequential simulation from an arbitrary starting state: one reaction per
// transition, at most max_steps transitions.
inline Trace simulate_from(const ChemistrySpec& spec, const Multiset& start, std::size_t max_steps,
                           SchedulerPolicy policy = SchedulerPolicy::first_declared,
                           Feasibility mode = Feasibility::standard,
                           std::optional<std::size_t> previous = std::nullopt) {
  if (max_steps == 0) throw std::invalid_argument("max_steps must be at least 1");
  Trace trace;
  trace.states.push_back(start);
  for (std::size_t step = 0; step < max_steps; ++step) {
    auto next = schedule(trace.states.back(), spec, policy, previous, mode);
    if (!next) {
      trace.halt = Halt::terminated;
      return trace;
    }
    const Reaction& r = spec.reactions[*next];
    trace.states.push_back(apply(r, trace.states.back(), mode));
    trace.executed.push_back(r.name);
    previous = next;
  }
  trace.halt = schedule(trace.states.back(), spec, policy, previous, mode) ? Halt::budget_exhausted
                                                                           : Halt::terminated;
  return trace;
}

inline Trace simulate(const ChemistrySpec& spec, std::size_t max_steps,
                      SchedulerPolicy policy = SchedulerPolicy::first_declared,
                      Feasibility mode = Feasibility::standard) {
  return simulate_from(spec, spec.initial, max_steps, policy, mode);
}

// Checks that every recorded transition is the declared reaction applied
// to the previous state. Throws WitnessMismatch on the first violation.
inline void validate_trace(const Trace& trace, const ChemistrySpec& spec, Feasibility mode = Feasibility::standard) {
  if (trace.states.empty()) throw WitnessMismatch("trace has no states");
  if (trace.executed.size() + 1 != trace.states.size())
    throw WitnessMismatch("trace has " + std::to_string(trace.states.size()) + " states but " +
                          std::to_string(trace.executed.size()) + " executed reactions");
  for (std::size_t i = 0; i < trace.executed.size(); ++i) {
    auto idx = spec.reaction_index(trace.executed[i]);
    if (!idx) throw UnknownReaction(trace.executed[i]);
    const Reaction& r = spec.reactions[*idx];
    if (!is_feasible(r, trace.states[i], mode) || apply(r, trace.states[i], mode) != trace.states[i + 1])
      throw WitnessMismatch("transition " + std::to_string(i) + " -> " + std::to_string(i + 1) +
                            " is not an application of " + r.name);
  }
}

// Eventually periodic run: states[n + k*l + r] == states[n + r] for all
// k >= 1 and 0 < r <= l that fall inside the recorded trace.
struct CycleWitness {
  std::size_t prefix_len = 0;
  std::size_t cycle_len = 1;

  friend bool operator==(const CycleWitness&, const CycleWitness&) = default;
};

namespace detail {

// Dense ids for states so comparisons are integer compares.
inline std::vector<std::size_t> state_ids(const Trace& trace) {
  std::unordered_map<std::string, std::size_t> seen;
  std::vector<std::size_t> ids;
  ids.reserve(trace.states.size());
  for (const auto& s : trace.states) ids.push_back(seen.emplace(canonical_encode(s), seen.size()).first->second);
  return ids;
}

}  // namespace detail

// True iff the witness holds on every recorded state and the trace shows
// at least two full repetitions of the cycle.
inline bool confirms_cycle(const Trace& trace, const CycleWitness& w) {
  if (w.cycle_len == 0 || trace.states.empty()) return false;
  const std::size_t last = trace.last_index();
  const std::size_t n = w.prefix_len, l = w.cycle_len;
  if (n + 2 * l > last) return false;
  auto ids = detail::state_ids(trace);
  for (std::size_t i = n + 1; i + l <= last; ++i)
    if (ids[i + l] != ids[i]) return false;
  return true;
}

/**
 * Smallest cycle length l, then smallest prefix n, such that the whole
 * recorded tail from n+1 is l-periodic and at least two periods were
 * observed. nullopt means no cycle within the recorded horizon.
 */
inline std::optional<CycleWitness> detect_cycle(const Trace& trace) {
  if (trace.states.size() < 3) return std::nullopt;
  const std::size_t last = trace.last_index();
  auto ids = detail::state_ids(trace);
  for (std::size_t l = 1; 2 * l <= last; ++l) {
    // n must sit at or after the last index i >= 1 where the period breaks.
    std::size_t n = 0;
    for (std::size_t i = last - l; i >= 1; --i) {
      if (ids[i + l] != ids[i]) {
        n = i;
        break;
      }
    }
    if (n + 2 * l <= last) return CycleWitness{n, l};
  }
  return std::nullopt;
}

}  // namespace achem
