#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "achem/causal.hpp"
#include "achem/chemistry.hpp"
#include "achem/engine.hpp"
#include "achem/error.hpp"

namespace achem {

/**
 * Observational equivalence between molecules.
 *
 * Symbols are equivalent when they are identical or declared in the
 * same class. Classes are disjoint, so this is an equivalence relation.
 */
class Equivalence {
public:
  Equivalence() = default;

  explicit Equivalence(const std::vector<EquivClass>& classes) {
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (const auto& sym : classes[c].members) class_of_.emplace(sym, c);
  }

  static Equivalence of(const ChemistrySpec& spec) { return Equivalence(spec.equivalences); }

  bool operator()(const Symbol& a, const Symbol& b) const {
    if (a == b) return true;
    auto ia = class_of_.find(a);
    auto ib = class_of_.find(b);
    return ia != class_of_.end() && ib != class_of_.end() && ia->second == ib->second;
  }

private:
  std::map<Symbol, std::size_t> class_of_;
};

inline bool equivalent(const Symbol& a, const Symbol& b, const Equivalence& eq) { return eq(a, b); }

enum class Status { potentially_self_reproducing, actually_self_reproducing, rejected, inconclusive };

enum class Rejection {
  none,
  no_equivalent_product,
  no_causal_path,
  material_basis_violated,
  trivial_causality,
};

inline const char* to_string(Status s) {
  switch (s) {
    case Status::potentially_self_reproducing: return "potentially-self-reproducing";
    case Status::actually_self_reproducing: return "actually-self-reproducing";
    case Status::rejected: return "rejected";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

inline const char* to_string(Rejection r) {
  switch (r) {
    case Rejection::none: return "none";
    case Rejection::no_equivalent_product: return "no-equivalent-product";
    case Rejection::no_causal_path: return "no-causal-path";
    case Rejection::material_basis_violated: return "material-basis-violated";
    case Rejection::trivial_causality: return "trivial-causality";
  }
  return "?";
}

inline bool is_positive(Status s) {
  return s == Status::potentially_self_reproducing || s == Status::actually_self_reproducing;
}

// How the material-basis condition ranges over the causal paths found:
// `some` needs one passing path, `every` needs all of them to pass.
enum class MaterialQuantifier { some, every };

inline const char* to_string(MaterialQuantifier q) { return q == MaterialQuantifier::every ? "every" : "some"; }

struct MaterialBasis {
  bool holds = false;
  std::set<Symbol> consumed;  // X
  std::size_t from_state = 0;
  std::size_t to_state = 0;
};

/**
 * Material basis of one causal path for subject g.
 *
 * Compares the state at the first anchor with the state right after the
 * last step. g must strictly increase and X, the symbols of Input(p)
 * other than g that strictly decrease, must be non-empty. A path whose
 * last step is anchored on the final recorded state cannot be certified.
 */
inline MaterialBasis check_material_basis(const CausalPath& path, const Trace& trace, const ChemistrySpec& spec,
                                          const Symbol& g) {
  MaterialBasis mb;
  if (path.steps.empty()) return mb;
  for (const auto& s : path.steps) trace.at(s.state);
  mb.from_state = path.steps.first_index();
  mb.to_state = path.steps.last_index() + 1;
  if (mb.to_state > trace.last_index()) return mb;
  const Multiset& before = trace.states[mb.from_state];
  const Multiset& after = trace.states[mb.to_state];
  if (after.count(g) <= before.count(g)) return mb;
  for (const auto& [sym, n] : seq_input(path.steps, spec))
    if (sym != g && after.count(sym) < before.count(sym)) mb.consumed.insert(sym);
  mb.holds = !mb.consumed.empty();
  if (!mb.holds) mb.consumed.clear();
  return mb;
}

struct SelfrepOptions {
  std::size_t max_len = 4;
  Feasibility mode = Feasibility::standard;
  std::optional<IndexWindow> window;
  std::size_t budget = default_path_budget;
  MaterialQuantifier quantifier = MaterialQuantifier::some;
};

struct Level0Verdict {
  Symbol subject;
  Status status = Status::rejected;
  Rejection reason = Rejection::none;
  std::vector<CausalPath> witness_paths;  // C_p
  std::optional<Symbol> partner;          // g'
  std::set<Symbol> consumed;              // union of X over the witnesses
  std::optional<CausalPath> offending_path;
  // Bounds the claim was made under.
  std::size_t max_len = 0;
  IndexWindow window;
  std::size_t paths_examined = 0;
  bool search_complete = true;
  MaterialQuantifier quantifier = MaterialQuantifier::some;
  std::optional<CycleWitness> cycle;
};

/**
 * Bounded check of potential self-reproduction for molecule g on one
 * trace: an equivalent product g', a causal path g => g' of at most
 * max_len steps, and a material basis for the path.
 *
 * Path search stops after opts.budget paths. The verdict is then
 * inconclusive unless the paths already seen settle it.
 */
inline Level0Verdict detect_selfrep(const Trace& trace, const ChemistrySpec& spec, const Symbol& g,
                                    const Equivalence& eq, const SelfrepOptions& opts = {}) {
  if (!spec.declares(g)) throw UnknownSymbol(g);
  if (opts.max_len == 0) throw std::invalid_argument("max_len must be at least 1");
  if (trace.states.empty()) throw WitnessMismatch("trace has no states");

  Level0Verdict v;
  v.subject = g;
  v.max_len = opts.max_len;
  v.quantifier = opts.quantifier;
  v.window = opts.window.value_or(IndexWindow::whole(trace));
  if (v.window.last > trace.last_index()) throw IndexOutOfRange(v.window.last, trace.states.size());

  std::vector<Symbol> partners;
  for (const auto& m : spec.molecules) {
    if (!eq(g, m)) continue;
    for (std::size_t i = v.window.first; i <= v.window.last; ++i)
      if (trace.states[i].in_support(m)) {
        partners.push_back(m);
        break;
      }
  }
  if (partners.empty()) {
    v.reason = Rejection::no_equivalent_product;
    return v;
  }

  // The last anchor needs a successor state to observe the outcome.
  std::optional<StepPool> pool;
  if (v.window.first < trace.last_index()) {
    IndexWindow anchors{v.window.first, std::min(v.window.last, trace.last_index() - 1)};
    pool = StepPool::feasible_in(trace, spec, anchors, opts.mode);
  }

  bool budget_hit = false;
  bool violated = false;
  if (pool) {
    for (const auto& partner : partners) {
      bool go_on = for_each_causal_path(*pool, g, partner, opts.max_len, [&](const CausalPath& p) {
        if (v.paths_examined == opts.budget) {
          budget_hit = true;
          return false;
        }
        ++v.paths_examined;
        MaterialBasis mb = check_material_basis(p, trace, spec, g);
        if (mb.holds) {
          v.witness_paths.push_back(p);
          v.consumed.insert(mb.consumed.begin(), mb.consumed.end());
          if (!v.partner) v.partner = partner;
        } else {
          if (!v.offending_path) v.offending_path = p;
          if (opts.quantifier == MaterialQuantifier::every) {
            violated = true;
            return false;
          }
        }
        return true;
      });
      if (!go_on) break;
    }
  }
  v.search_complete = !budget_hit;

  if (opts.quantifier == MaterialQuantifier::every) {
    if (violated) {
      v.status = Status::rejected;
      v.reason = Rejection::material_basis_violated;
      v.witness_paths.clear();
      v.consumed.clear();
      v.partner.reset();
      return v;
    }
    if (budget_hit) {
      v.status = Status::inconclusive;
      return v;
    }
  } else if (v.witness_paths.empty() && budget_hit) {
    v.status = Status::inconclusive;
    return v;
  }

  if (!v.witness_paths.empty()) {
    v.status = Status::potentially_self_reproducing;
    v.offending_path.reset();
  } else if (v.paths_examined == 0) {
    v.reason = Rejection::no_causal_path;
  } else {
    v.reason = Rejection::material_basis_violated;
  }
  return v;
}

/**
 * Upgrade potential self-reproduction to actual self-reproduction on a
 * cyclic run under sequential scheduling.
 *
 * The cycle is examined unrolled over two periods (anchors n+1..n+2l) so
 * paths may wrap around the period boundary. A witness counts when every
 * one of its reactions is executed within one period,
 * executed[n+1 .. n+l].
 */
inline Level0Verdict verify_theorem1(const Trace& trace, const ChemistrySpec& spec, const CycleWitness& cycle,
                                     const Symbol& g, const Equivalence& eq, SelfrepOptions opts = {}) {
  if (!confirms_cycle(trace, cycle))
    throw WitnessMismatch("cycle witness (n=" + std::to_string(cycle.prefix_len) +
                          ", l=" + std::to_string(cycle.cycle_len) + ") does not hold on the trace");
  const std::size_t n = cycle.prefix_len, l = cycle.cycle_len;
  opts.window = IndexWindow{n + 1, n + 2 * l};
  Level0Verdict v = detect_selfrep(trace, spec, g, eq, opts);
  v.cycle = cycle;
  if (v.status != Status::potentially_self_reproducing) return v;

  std::set<std::string> in_period(trace.executed.begin() + static_cast<std::ptrdiff_t>(n + 1),
                                  trace.executed.begin() + static_cast<std::ptrdiff_t>(n + l + 1));
  std::vector<CausalPath> executed, merely_feasible;
  for (auto& p : v.witness_paths) {
    bool runs = std::all_of(p.steps.begin(), p.steps.end(),
                            [&](const Step& s) { return in_period.count(s.reaction) != 0; });
    (runs ? executed : merely_feasible).push_back(std::move(p));
  }
  if (executed.empty()) {
    v.witness_paths = std::move(merely_feasible);
    return v;
  }
  v.status = Status::actually_self_reproducing;
  v.witness_paths = std::move(executed);
  v.partner = v.witness_paths.front().target();
  v.consumed.clear();
  for (const auto& p : v.witness_paths) {
    auto mb = check_material_basis(p, trace, spec, g);
    v.consumed.insert(mb.consumed.begin(), mb.consumed.end());
  }
  return v;
}

// detect_selfrep, upgraded through verify_theorem1 when the trace is cyclic.
inline Level0Verdict analyse_molecule(const Trace& trace, const ChemistrySpec& spec, const Symbol& g,
                                      const Equivalence& eq, const SelfrepOptions& opts = {}) {
  Level0Verdict v = detect_selfrep(trace, spec, g, eq, opts);
  if (v.status != Status::potentially_self_reproducing || opts.window) return v;
  if (auto cycle = detect_cycle(trace)) {
    Level0Verdict actual = verify_theorem1(trace, spec, *cycle, g, eq, opts);
    if (actual.status == Status::actually_self_reproducing) return actual;
    v.cycle = cycle;
  }
  return v;
}

// One verdict per declared molecule, in declaration order. Molecules are
// analysed concurrently; results are merged in declaration order.
inline std::vector<Level0Verdict> sweep_selfrep(const Trace& trace, const ChemistrySpec& spec, const Equivalence& eq,
                                                const SelfrepOptions& opts = {}) {
  std::vector<std::future<Level0Verdict>> jobs;
  jobs.reserve(spec.molecules.size());
  for (const auto& m : spec.molecules)
    jobs.push_back(std::async(std::launch::async, [&, m] { return analyse_molecule(trace, spec, m, eq, opts); }));
  std::vector<Level0Verdict> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

/**
 * Approximates "there exists a run" by simulating once per scheduler
 * policy and analysing each run. Returns one (policy, verdict) pair per
 * policy, first-declared first.
 */
inline std::vector<std::pair<SchedulerPolicy, Level0Verdict>> selfrep_over_policies(const ChemistrySpec& spec,
                                                                                     const Symbol& g,
                                                                                     std::size_t max_steps,
                                                                                     const Equivalence& eq,
                                                                                     const SelfrepOptions& opts = {}) {
  std::vector<std::pair<SchedulerPolicy, Level0Verdict>> out;
  for (auto policy : {SchedulerPolicy::first_declared, SchedulerPolicy::round_robin}) {
    Trace t = simulate(spec, max_steps, policy, opts.mode);
    out.emplace_back(policy, analyse_molecule(t, spec, g, eq, opts));
  }
  return out;
}

}  // namespace achem
