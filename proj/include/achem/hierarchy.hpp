#pragma once

// Level-1 machinery: meta reactions, the level-1 causal relation, temporal
// precedence between meta reactions, the non-triviality constraint and the
// level-1 self-reproduction detector.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "achem/causal.hpp"
#include "achem/chemistry.hpp"
#include "achem/engine.hpp"
#include "achem/entity.hpp"
#include "achem/error.hpp"
#include "achem/matching.hpp"
#include "achem/selfrep.hpp"

namespace achem {

// A level-1 reaction: a feasible level-0 sequence with time progression.
struct MetaReaction {
  ReactionSeq steps;

  friend bool operator==(const MetaReaction&, const MetaReaction&) = default;

  std::size_t first_index() const { return steps.first_index(); }
  std::size_t last_index() const { return steps.last_index(); }
};

// Checks anchors are strictly increasing and every step is feasible.
inline MetaReaction make_meta_reaction(ReactionSeq steps, const Trace& trace, const ChemistrySpec& spec,
                                       Feasibility mode = Feasibility::standard) {
  if (steps.empty()) throw WitnessMismatch("a meta reaction needs at least one step");
  if (!steps.strictly_increasing()) throw WitnessMismatch("meta reaction anchors must be strictly increasing");
  if (!is_feasible_seq(steps, trace, spec, mode)) throw WitnessMismatch("meta reaction is not feasible on the trace");
  return MetaReaction{std::move(steps)};
}

namespace detail {

inline const std::set<Symbol> level1_members(const Entity& z) {
  if (z.level() != 1) throw MalformedEntity("expected a level-1 entity, got " + to_string(z));
  return z.symbols();
}

inline bool meets(const Multiset& m, const std::set<Symbol>& members) {
  return std::any_of(m.begin(), m.end(), [&](const auto& e) { return members.count(e.first) != 0; });
}

inline bool takes_part(const std::set<Symbol>& members, const ReactionSeq& steps, const ChemistrySpec& spec) {
  return std::all_of(steps.begin(), steps.end(),
                     [&](const Step& s) { return meets(spec.reaction(s.reaction).input, members); });
}

// Support of Output(R) - Input(R).
inline std::set<Symbol> net_products(const ReactionSeq& steps, const ChemistrySpec& spec) {
  return subtract(seq_output(steps, spec), seq_input(steps, spec)).support();
}

inline bool subset(const std::set<Symbol>& a, const std::set<Symbol>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace detail

// Every step's input meets z.
inline bool takes_part(const Entity& z, const MetaReaction& r, const ChemistrySpec& spec) {
  return detail::takes_part(detail::level1_members(z), r.steps, spec);
}

// z =>^1_R z2: z takes part in R and z2 lies in the support of
// Output(R) - Input(R).
inline bool level1_causal(const Entity& z, const MetaReaction& r, const Entity& z2, const ChemistrySpec& spec) {
  auto target = detail::level1_members(z2);
  return takes_part(z, r, spec) && detail::subset(target, detail::net_products(r.steps, spec));
}

/**
 * R temporally precedes S: R starts before S starts and ends before S
 * ends. The combined anchor set spans k states with
 * max(|R|, |S|) <= k <= |R| + |S|; interleaving is allowed.
 */
inline bool temporally_precedes(const MetaReaction& r, const MetaReaction& s) {
  if (r.steps.empty() || s.steps.empty()) return false;
  if (!(r.first_index() < s.first_index() && r.last_index() < s.last_index())) return false;
  std::set<std::size_t> anchors;
  for (const auto& st : r.steps) anchors.insert(st.state);
  for (const auto& st : s.steps) anchors.insert(st.state);
  const std::size_t k = anchors.size();
  return std::max(r.steps.size(), s.steps.size()) <= k && k <= r.steps.size() + s.steps.size();
}

inline bool temporally_precedes(const MetaReaction& r, const MetaReaction& s, const Trace& trace) {
  for (const auto& st : r.steps) trace.at(st.state);
  for (const auto& st : s.steps) trace.at(st.state);
  return temporally_precedes(r, s);
}

struct NonTriviality {
  bool holds = false;
  Count counted = 0;
  std::size_t threshold = 0;
};

// All anchored level-0 steps of a level-1 causal path.
inline std::vector<Step> chain_steps(const std::vector<MetaReaction>& rs) {
  std::vector<Step> out;
  for (const auto& r : rs) out.insert(out.end(), r.steps.begin(), r.steps.end());
  return out;
}

/**
 * Counts level-0 causal paths from members of z to members of z2 built
 * from the steps of the meta reactions, with at most max_len steps each.
 * The level-1 path is non-trivial when the count exceeds |z2|: some
 * member of z2 then depends on more than one member of z.
 */
inline NonTriviality is_nontrivial(const Entity& z, const Entity& z2, const std::vector<MetaReaction>& rs,
                                   const Trace& trace, const ChemistrySpec& spec, std::size_t max_len,
                                   Feasibility mode = Feasibility::standard) {
  auto from = detail::level1_members(z);
  auto to = detail::level1_members(z2);
  NonTriviality nt;
  nt.threshold = to.size();
  nt.counted = count_pairwise_paths(trace, spec, from, to, chain_steps(rs), max_len, mode);
  nt.holds = nt.counted > nt.threshold;
  return nt;
}

// Whole copies of a level-1 entity present in a state.
inline Count copy_count(const std::set<Symbol>& members, const Multiset& state) {
  Count c = std::numeric_limits<Count>::max();
  for (const auto& m : members) c = std::min(c, state.count(m));
  return members.empty() ? 0 : c;
}

// ~^1: a one-to-one pairing of members under ~.
inline std::optional<std::vector<std::pair<Symbol, Symbol>>> level1_equivalent(const Entity& z, const Entity& z2,
                                                                               const Equivalence& eq) {
  auto a = detail::level1_members(z);
  auto b = detail::level1_members(z2);
  return perfect_matching(std::vector<Symbol>(a.begin(), a.end()), std::vector<Symbol>(b.begin(), b.end()), eq);
}

enum class StepSource { executed, feasible };

inline const char* to_string(StepSource s) { return s == StepSource::feasible ? "feasible" : "executed"; }

struct Level1Options {
  std::size_t max_len = 4;      // level-0 path length in the non-triviality count
  std::size_t meta_len = 3;     // steps per meta reaction
  std::size_t chain_len = 2;    // meta reactions per level-1 path
  std::size_t span = 8;         // states covered by a whole level-1 path
  std::size_t candidates = 10000;
  std::size_t budget = 100000;  // level-1 paths examined
  std::optional<IndexWindow> window;
  Feasibility mode = Feasibility::standard;
  StepSource source = StepSource::executed;
  MaterialQuantifier quantifier = MaterialQuantifier::some;
};

struct Level1Verdict {
  Entity subject;
  Status status = Status::rejected;
  Rejection reason = Rejection::none;
  std::vector<MetaReaction> witness;      // level-1 C_p
  std::vector<Entity> intermediates;      // zeta_1 .. zeta_{n-1}
  std::optional<Entity> partner;          // zeta'
  std::vector<std::pair<Symbol, Symbol>> matching;
  Count counted = 0;                      // non-triviality margin
  std::size_t threshold = 0;
  Count copies_before = 0;
  Count copies_after = 0;
  std::set<Symbol> decreased;
  IndexWindow window;
  std::size_t candidates_considered = 0;
  std::size_t paths_examined = 0;
  bool search_complete = true;
  Level1Options options;
};

namespace detail {

struct Level1Candidate {
  std::set<Symbol> members;
  std::vector<std::pair<Symbol, Symbol>> matching;
};

// Same-size sets drawn from `pool` that match z one-to-one under eq.
inline std::vector<Level1Candidate> level1_candidates(const std::set<Symbol>& z, const std::vector<Symbol>& pool,
                                                      const Equivalence& eq, std::size_t cap) {
  std::vector<Level1Candidate> out;
  const std::size_t k = z.size(), n = pool.size();
  if (k > n) return out;
  const std::vector<Symbol> left(z.begin(), z.end());
  std::size_t tried = 0;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (++tried > cap) throw BudgetExceeded("level-1 candidate enumeration", cap);
    std::vector<Symbol> right;
    for (auto i : idx) right.push_back(pool[i]);
    if (auto m = perfect_matching(left, right, eq))
      out.push_back({std::set<Symbol>(right.begin(), right.end()), std::move(*m)});
    std::size_t i = k;
    while (i-- > 0 && idx[i] == n - k + i) {
    }
    if (i == static_cast<std::size_t>(-1)) break;
    ++idx[i];
    for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace detail

/**
 * Bounded check of potential self-reproduction for a level-1 entity z.
 *
 * Searches level-1 causal paths z =>^1 ... =>^1 z' where consecutive meta
 * reactions temporally precede each other, z' matches z one-to-one under
 * the molecule equivalence, the path is non-trivial, and the material
 * basis holds: the number of whole copies of z rises between the first
 * anchor and the state after the last step while some other input of the
 * path falls.
 */
inline Level1Verdict detect_selfrep1(const Trace& trace, const ChemistrySpec& spec, const Entity& z,
                                     const Equivalence& eq, const Level1Options& opts = {}) {
  const auto members = detail::level1_members(z);
  for (const auto& m : members)
    if (!spec.declares(m)) throw UnknownSymbol(m);
  if (trace.states.empty()) throw WitnessMismatch("trace has no states");
  if (opts.max_len == 0 || opts.meta_len == 0 || opts.chain_len == 0 || opts.span == 0)
    throw std::invalid_argument("level-1 search caps must be positive");

  Level1Verdict v;
  v.subject = z;
  v.options = opts;
  v.window = opts.window.value_or(IndexWindow::whole(trace));
  if (v.window.last > trace.last_index()) throw IndexOutOfRange(v.window.last, trace.states.size());

  // Candidate anchored steps; each needs a successor state.
  std::vector<Step> steps;
  std::vector<std::size_t> step_reaction;
  const std::size_t last_anchor = std::min(v.window.last, trace.last_index() == 0 ? 0 : trace.last_index() - 1);
  if (trace.last_index() > 0) {
    for (std::size_t i = v.window.first; i <= last_anchor; ++i) {
      if (opts.source == StepSource::executed) {
        auto r = spec.reaction_index(trace.executed[i]);
        if (!r) throw UnknownReaction(trace.executed[i]);
        if (is_feasible(spec.reactions[*r], trace.states[i], opts.mode)) {
          steps.push_back({trace.executed[i], i});
          step_reaction.push_back(*r);
        }
      } else {
        for (std::size_t r = 0; r < spec.reactions.size(); ++r)
          if (is_feasible(spec.reactions[r], trace.states[i], opts.mode)) {
            steps.push_back({spec.reactions[r].name, i});
            step_reaction.push_back(r);
          }
      }
    }
  }

  // Candidate partners z'.
  std::set<Symbol> seen;
  for (std::size_t i = v.window.first; i <= v.window.last; ++i)
    for (const auto& [s, n] : trace.states[i]) seen.insert(s);
  for (auto r : step_reaction)
    for (const auto& [s, n] : spec.reactions[r].output) seen.insert(s);
  std::vector<Symbol> pool;
  for (const auto& s : seen)
    if (std::any_of(members.begin(), members.end(), [&](const Symbol& m) { return eq(m, s); })) pool.push_back(s);

  std::vector<detail::Level1Candidate> candidates;
  try {
    candidates = detail::level1_candidates(members, pool, eq, opts.candidates);
  } catch (const BudgetExceeded&) {
    v.status = Status::inconclusive;
    v.search_complete = false;
    return v;
  }
  v.candidates_considered = candidates.size();
  if (candidates.empty()) {
    v.reason = Rejection::no_equivalent_product;
    return v;
  }

  bool reached = false, budget_hit = false, done = false;
  std::optional<Level1Verdict> passing, trivial_example, failing_example;
  std::vector<MetaReaction> chain;

  // Evaluate the current chain against every candidate z' it reaches.
  auto evaluate = [&](const std::set<Symbol>& products) {
    for (const auto& cand : candidates) {
      if (!detail::subset(cand.members, products)) continue;
      reached = true;
      Level1Verdict r = v;
      r.witness = chain;
      for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        r.intermediates.push_back(Entity::of_symbols(detail::net_products(chain[i].steps, spec)));
      r.partner = Entity::of_symbols(cand.members);
      r.matching = cand.matching;
      const ReactionSeq all_steps{chain_steps(chain)};
      r.threshold = cand.members.size();
      r.counted = count_pairwise_paths(StepPool::from_steps(all_steps.steps, trace, spec, opts.mode), members,
                                       cand.members, opts.max_len);
      if (r.counted <= r.threshold) {
        if (!trivial_example) trivial_example = std::move(r);
        continue;
      }
      const std::size_t from = chain.front().first_index();
      const std::size_t to = chain.back().last_index() + 1;
      r.copies_before = copy_count(members, trace.states[from]);
      r.copies_after = copy_count(members, trace.states[to]);
      for (const auto& [s, n] : seq_input(all_steps, spec))
        if (!members.count(s) && trace.states[to].count(s) < trace.states[from].count(s)) r.decreased.insert(s);
      if (r.copies_after > r.copies_before && !r.decreased.empty()) {
        if (!passing) passing = std::move(r);
        if (opts.quantifier == MaterialQuantifier::some) done = true;
      } else {
        if (!failing_example) failing_example = std::move(r);
        if (opts.quantifier == MaterialQuantifier::every) done = true;
      }
      if (done) return;
    }
  };

  // Meta reactions are subsequences of `steps` whose every step meets
  // `takes`. After the first meta reaction each one must be temporally
  // preceded by the previous one, and the whole chain stays within `span`
  // states of its first anchor.
  std::function<void(const std::set<Symbol>&)> extend;
  auto visit = [&](const MetaReaction& meta) {
    if (v.paths_examined == opts.budget) {
      budget_hit = done = true;
      return;
    }
    ++v.paths_examined;
    chain.push_back(meta);
    auto products = detail::net_products(meta.steps, spec);
    evaluate(products);
    if (!done && chain.size() < opts.chain_len && products.size() >= 2) extend(products);
    chain.pop_back();
  };

  std::function<void(const std::set<Symbol>&, ReactionSeq&, std::size_t, std::size_t)> grow =
      [&](const std::set<Symbol>& takes, ReactionSeq& seq, std::size_t next, std::size_t span_end) {
        for (std::size_t j = next; j < steps.size() && !done; ++j) {
          if (steps[j].state > span_end) break;
          if (steps[j].state <= seq.last_index()) continue;
          if (!detail::meets(spec.reactions[step_reaction[j]].input, takes)) continue;
          seq.steps.push_back(steps[j]);
          MetaReaction meta{seq};
          if (chain.empty() || temporally_precedes(chain.back(), meta)) visit(meta);
          if (!done && seq.size() < opts.meta_len) grow(takes, seq, j + 1, span_end);
          seq.steps.pop_back();
        }
      };

  extend = [&](const std::set<Symbol>& takes) {
    const std::size_t after = chain.back().first_index();
    const std::size_t span_end = chain.front().first_index() + opts.span - 1;
    for (std::size_t j = 0; j < steps.size() && !done; ++j) {
      if (steps[j].state <= after) continue;
      if (steps[j].state > span_end) break;
      if (!detail::meets(spec.reactions[step_reaction[j]].input, takes)) continue;
      ReactionSeq seq{{steps[j]}};
      MetaReaction meta{seq};
      if (temporally_precedes(chain.back(), meta)) visit(meta);
      if (!done && opts.meta_len > 1) grow(takes, seq, j + 1, span_end);
    }
  };

  for (std::size_t j = 0; j < steps.size() && !done; ++j) {
    if (!detail::meets(spec.reactions[step_reaction[j]].input, members)) continue;
    ReactionSeq seq{{steps[j]}};
    visit(MetaReaction{seq});
    if (!done && opts.meta_len > 1) grow(members, seq, j + 1, steps[j].state + opts.span - 1);
  }

  const std::size_t examined = v.paths_examined;
  auto finish = [&](Level1Verdict r, Status s, Rejection why) {
    r.status = s;
    r.reason = why;
    r.paths_examined = examined;
    r.candidates_considered = v.candidates_considered;
    r.search_complete = !budget_hit;
    return r;
  };
  if (failing_example && opts.quantifier == MaterialQuantifier::every)
    return finish(*failing_example, Status::rejected, Rejection::material_basis_violated);
  if (passing && (opts.quantifier == MaterialQuantifier::some || !budget_hit))
    return finish(*passing, Status::potentially_self_reproducing, Rejection::none);
  if (budget_hit) return finish(v, Status::inconclusive, Rejection::none);
  if (failing_example) return finish(*failing_example, Status::rejected, Rejection::material_basis_violated);
  if (trivial_example) return finish(*trivial_example, Status::rejected, Rejection::trivial_causality);
  return finish(v, Status::rejected, reached ? Rejection::trivial_causality : Rejection::no_causal_path);
}

}  // namespace achem
