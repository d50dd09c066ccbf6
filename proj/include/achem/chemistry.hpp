#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "achem/error.hpp"
#include "achem/multiset.hpp"

namespace achem {

// A named deterministic rule: input multiset -> output multiset.
struct Reaction {
  std::string name;
  Multiset input;
  Multiset output;

  friend bool operator==(const Reaction&, const Reaction&) = default;
};

// A designer-declared observational equivalence class.
struct EquivClass {
  std::string name;
  std::vector<Symbol> members;

  friend bool operator==(const EquivClass&, const EquivClass&) = default;
};

/**
 * The declared chemistry: molecule universe, reactions, initial
 * population and optional equivalence classes.
 *
 * Reaction declaration order is meaningful: it is the default
 * scheduling priority.
 */
struct ChemistrySpec {
  std::vector<Symbol> molecules;
  std::vector<Reaction> reactions;
  Multiset initial;
  std::vector<EquivClass> equivalences;

  friend bool operator==(const ChemistrySpec&, const ChemistrySpec&) = default;

  bool declares(const Symbol& sym) const {
    for (const auto& m : molecules)
      if (m == sym) return true;
    return false;
  }

  std::optional<std::size_t> reaction_index(const std::string& name) const {
    for (std::size_t i = 0; i < reactions.size(); ++i)
      if (reactions[i].name == name) return i;
    return std::nullopt;
  }

  const Reaction& reaction(const std::string& name) const {
    auto idx = reaction_index(name);
    if (!idx) throw UnknownReaction(name);
    return reactions[*idx];
  }

  // Throws SpecError on the first violated declaration invariant.
  void validate() const {
    using K = SpecError::Kind;
    std::set<Symbol> declared;
    for (const auto& m : molecules)
      if (!declared.insert(m).second) throw SpecError(K::duplicate_molecule, "duplicate molecule: " + m);

    auto check = [&](const Multiset& ms, const std::string& where) {
      for (const auto& [sym, n] : ms)
        if (!declared.count(sym))
          throw SpecError(K::undeclared_symbol, "undeclared symbol " + sym + " in " + where);
    };

    std::set<std::string> names;
    for (const auto& r : reactions) {
      if (!names.insert(r.name).second)
        throw SpecError(K::duplicate_reaction, "duplicate reaction name: " + r.name);
      if (r.input.empty()) throw SpecError(K::empty_input, "reaction " + r.name + " has an empty input");
      check(r.input, "reaction " + r.name);
      check(r.output, "reaction " + r.name);
    }
    check(initial, "init");

    std::set<std::string> class_names;
    std::set<Symbol> classed;
    for (const auto& c : equivalences) {
      if (!class_names.insert(c.name).second)
        throw SpecError(K::duplicate_class, "duplicate equivalence class: " + c.name);
      for (const auto& sym : c.members) {
        if (!declared.count(sym))
          throw SpecError(K::undeclared_symbol, "undeclared symbol " + sym + " in equiv " + c.name);
        if (!classed.insert(sym).second)
          throw SpecError(K::overlapping_classes, "symbol " + sym + " belongs to two equivalence classes");
      }
    }
  }
};

// One step of a reaction sequence, anchored to the trace state in which
// the reaction is feasible.
struct Step {
  std::string reaction;
  std::size_t state = 0;

  friend bool operator==(const Step&, const Step&) = default;
  friend auto operator<=>(const Step&, const Step&) = default;
};

/**
 * Ordered reaction sequence anchored to strictly increasing state
 * indices. Consecutive anchors describe a partial run; gaps describe a
 * state subsequence.
 */
struct ReactionSeq {
  std::vector<Step> steps;

  friend bool operator==(const ReactionSeq&, const ReactionSeq&) = default;
  friend auto operator<=>(const ReactionSeq&, const ReactionSeq&) = default;

  bool empty() const { return steps.empty(); }
  std::size_t size() const { return steps.size(); }
  auto begin() const { return steps.begin(); }
  auto end() const { return steps.end(); }

  std::size_t first_index() const { return steps.front().state; }
  std::size_t last_index() const { return steps.back().state; }

  bool strictly_increasing() const {
    for (std::size_t i = 1; i < steps.size(); ++i)
      if (steps[i].state <= steps[i - 1].state) return false;
    return true;
  }

  ReactionSeq concat(const ReactionSeq& other) const {
    ReactionSeq out = *this;
    out.steps.insert(out.steps.end(), other.steps.begin(), other.steps.end());
    return out;
  }
};

// Input(R): additive union of every step's input multiset.
inline Multiset seq_input(const ReactionSeq& seq, const ChemistrySpec& spec) {
  Multiset out;
  for (const auto& step : seq) out = additive_union(out, spec.reaction(step.reaction).input);
  return out;
}

// Output(R): additive union of every step's output multiset.
inline Multiset seq_output(const ReactionSeq& seq, const ChemistrySpec& spec) {
  Multiset out;
  for (const auto& step : seq) out = additive_union(out, spec.reaction(step.reaction).output);
  return out;
}

}  // namespace achem
