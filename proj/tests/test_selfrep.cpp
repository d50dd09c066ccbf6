#include <catch_amalgamated.hpp>

#include "achem/dsl.hpp"
#include "achem/selfrep.hpp"
#include "support.hpp"

using namespace achem;

TEST_CASE("equivalence is identity plus declared classes") {
  auto spec = parse_chemistry("molecules: a, a_mut, b\nequiv A: a, a_mut\n");
  auto eq = Equivalence::of(spec);
  CHECK(equivalent("a", "a", eq));
  CHECK(equivalent("a", "a_mut", eq));
  CHECK(equivalent("a_mut", "a", eq));
  CHECK_FALSE(equivalent("a", "b", eq));
  CHECK_FALSE(equivalent("a", "b", Equivalence{}));
}

TEST_CASE("material basis of a single replication step") {
  auto spec = support::sample("autocatalytic.chem");
  Trace t = simulate(spec, 4);
  CausalPath p{{"a", "a"}, ReactionSeq{{{"r1", 0}}}};
  auto mb = check_material_basis(p, t, spec, "a");
  CHECK(mb.holds);
  CHECK(mb.consumed == std::set<Symbol>{"f"});
  CHECK(mb.from_state == 0);
  CHECK(mb.to_state == 1);

  CausalPath decay{{"a", "a"}, ReactionSeq{{{"r2", 1}}}};
  auto no = check_material_basis(decay, t, spec, "a");
  CHECK_FALSE(no.holds);
  CHECK(no.consumed.empty());

  CausalPath round{{"a", "a", "a"}, ReactionSeq{{{"r1", 0}, {"r2", 1}}}};
  CHECK_FALSE(check_material_basis(round, t, spec, "a").holds);

  CausalPath at_end{{"a", "a"}, ReactionSeq{{{"r1", 4}}}};
  CHECK_FALSE(check_material_basis(at_end, t, spec, "a").holds);
}

TEST_CASE("replenished inputs do not count as consumed") {
  auto spec = parse_chemistry(R"(
molecules: a, f, b
reaction r1: a + f -> 2 a
reaction r2: a + b -> a + b + f
init: 1 a, 1 f, 1 b
)");
  Trace t = simulate_from(spec, spec.initial, 1);
  Trace full;
  full.states = {spec.initial, Multiset{{"a", 2}, {"b", 1}}, Multiset{{"a", 2}, {"b", 1}, {"f", 1}}};
  full.executed = {"r1", "r2"};
  REQUIRE_NOTHROW(validate_trace(full, spec));
  CausalPath p{{"a", "a", "a"}, ReactionSeq{{{"r1", 0}, {"r2", 1}}}};
  auto mb = check_material_basis(p, full, spec, "a");
  CHECK_FALSE(mb.holds);
  CHECK(mb.consumed.empty());
}

TEST_CASE("the toy replicator is potentially self-reproducing") {
  auto spec = support::sample("autocatalytic.chem");
  Trace t = simulate(spec, 4);
  auto v = detect_selfrep(t, spec, "a", Equivalence::of(spec));
  CHECK(v.status == Status::potentially_self_reproducing);
  CHECK(v.reason == Rejection::none);
  REQUIRE_FALSE(v.witness_paths.empty());
  CHECK(v.witness_paths[0].steps == ReactionSeq{{{"r1", 0}}});
  CHECK(v.partner == Symbol("a"));
  CHECK(v.consumed == std::set<Symbol>{"f"});
  CHECK(v.search_complete);
  CHECK(v.window == IndexWindow{0, 4});
}

TEST_CASE("every-path quantifier rejects the toy replicator") {
  auto spec = support::sample("autocatalytic.chem");
  Trace t = simulate(spec, 4);
  SelfrepOptions so;
  so.quantifier = MaterialQuantifier::every;
  auto v = detect_selfrep(t, spec, "a", Equivalence::of(spec), so);
  CHECK(v.status == Status::rejected);
  CHECK(v.reason == Rejection::material_basis_violated);
  CHECK(v.offending_path.has_value());
  CHECK(v.witness_paths.empty());
}

TEST_CASE("every-path quantifier accepts when all paths pass") {
  auto spec = parse_chemistry("molecules: a, f\nreaction r1: a + f -> 2 a\ninit: 1 a, 3 f\n");
  Trace t = simulate(spec, 10);
  SelfrepOptions so;
  so.quantifier = MaterialQuantifier::every;
  auto v = detect_selfrep(t, spec, "a", Equivalence::of(spec), so);
  CHECK(v.status == Status::potentially_self_reproducing);
  CHECK(v.consumed == std::set<Symbol>{"f"});
}

TEST_CASE("inert chemistry has no causal path") {
  auto spec = parse_chemistry("molecules: a\ninit: 1 a\n");
  Trace t = simulate(spec, 5);
  auto v = detect_selfrep(t, spec, "a", Equivalence::of(spec));
  CHECK(v.status == Status::rejected);
  CHECK(v.reason == Rejection::no_causal_path);
}

TEST_CASE("spontaneous emergence is not reflexive autocatalysis") {
  auto spec = parse_chemistry("molecules: a, f\nreaction r: f -> a\ninit: 2 f\n");
  Trace t = simulate(spec, 5);
  auto v = detect_selfrep(t, spec, "a", Equivalence::of(spec));
  CHECK(v.status == Status::rejected);
  CHECK(v.reason == Rejection::no_causal_path);
}

TEST_CASE("absent subject has no equivalent product") {
  auto spec = parse_chemistry("molecules: a, f\nreaction r: a + f -> 2 a\ninit: 2 f\n");
  Trace t = simulate(spec, 5);
  auto v = detect_selfrep(t, spec, "a", Equivalence::of(spec));
  CHECK(v.reason == Rejection::no_equivalent_product);
}

TEST_CASE("mutant products count through the equivalence") {
  auto spec = parse_chemistry(R"(
molecules: a_mut, a, f
reaction r1: a + f -> 2 a + a_mut
init: 1 a, 2 f
equiv A: a, a_mut
)");
  Trace t = simulate(spec, 5);
  auto v = detect_selfrep(t, spec, "a", Equivalence::of(spec));
  CHECK(v.status == Status::potentially_self_reproducing);
  CHECK(v.partner == Symbol("a_mut"));
  CHECK(v.witness_paths.front().target() == "a_mut");

  auto plain = detect_selfrep(t, spec, "a", Equivalence{});
  CHECK(plain.partner == Symbol("a"));
}

TEST_CASE("argument errors") {
  auto spec = support::sample("autocatalytic.chem");
  Trace t = simulate(spec, 4);
  auto eq = Equivalence::of(spec);
  CHECK_THROWS_AS(detect_selfrep(t, spec, "zz", eq), UnknownSymbol);
  SelfrepOptions so;
  so.window = IndexWindow{0, 10};
  CHECK_THROWS_AS(detect_selfrep(t, spec, "a", eq, so), IndexOutOfRange);
  so.window.reset();
  so.max_len = 0;
  CHECK_THROWS_AS(detect_selfrep(t, spec, "a", eq, so), std::invalid_argument);
}

TEST_CASE("budget exhaustion") {
  auto spec = support::sample("autocatalytic.chem");
  Trace t = simulate(spec, 40);
  auto eq = Equivalence::of(spec);
  SelfrepOptions so;
  so.budget = 1;
  auto some = detect_selfrep(t, spec, "a", eq, so);
  CHECK(some.status == Status::potentially_self_reproducing);
  CHECK_FALSE(some.search_complete);
  so.quantifier = MaterialQuantifier::every;
  so.window = IndexWindow{0, 0};
  auto every = detect_selfrep(t, spec, "a", eq, so);
  CHECK(every.status == Status::potentially_self_reproducing);

  auto swap = support::sample("swap.chem");
  Trace ts = simulate(swap, 40);
  SelfrepOptions tight;
  tight.budget = 1;
  auto v = detect_selfrep(ts, swap, "a", Equivalence::of(swap), tight);
  CHECK(v.status == Status::inconclusive);
  CHECK_FALSE(v.search_complete);
}

TEST_CASE("cyclic runs upgrade to actual self-reproduction") {
  auto spec = support::sample("autocatalytic.chem");
  Trace t = simulate(spec, 10);
  auto eq = Equivalence::of(spec);
  auto v = verify_theorem1(t, spec, CycleWitness{0, 2}, "a", eq);
  CHECK(v.status == Status::actually_self_reproducing);
  CHECK(v.cycle == CycleWitness{0, 2});
  CHECK(v.consumed == std::set<Symbol>{"f"});
  for (const auto& p : v.witness_paths) CHECK(p.steps.first_index() >= 1);

  auto a = analyse_molecule(t, spec, "a", eq);
  CHECK(a.status == Status::actually_self_reproducing);
  auto f = analyse_molecule(t, spec, "f", eq);
  CHECK_FALSE(is_positive(f.status));
}

TEST_CASE("a fabricated cycle witness is refused") {
  auto spec = support::sample("hypercycle.chem");
  Trace t = simulate(spec, 10);
  CHECK_THROWS_AS(verify_theorem1(t, spec, CycleWitness{0, 1}, "x", Equivalence::of(spec)), WitnessMismatch);
}

TEST_CASE("conversion cycle fails the material basis") {
  auto spec = support::sample("swap.chem");
  Trace t = simulate(spec, 12);
  auto cycle = detect_cycle(t);
  REQUIRE(cycle);
  auto v = verify_theorem1(t, spec, *cycle, "a", Equivalence::of(spec));
  CHECK(v.status == Status::rejected);
  CHECK(v.reason == Rejection::material_basis_violated);
}

TEST_CASE("sweep keeps declaration order and matches single analyses") {
  auto spec = support::sample("network20.chem");
  Trace t = simulate(spec, 200, SchedulerPolicy::round_robin);
  auto eq = Equivalence::of(spec);
  auto all = sweep_selfrep(t, spec, eq);
  REQUIRE(all.size() == spec.molecules.size());
  for (std::size_t i = 0; i < all.size(); i += 5) {
    CHECK(all[i].subject == spec.molecules[i]);
    auto single = analyse_molecule(t, spec, spec.molecules[i], eq);
    CHECK(single.status == all[i].status);
    CHECK(single.witness_paths == all[i].witness_paths);
  }
}

TEST_CASE("runs under every scheduler policy") {
  auto spec = support::sample("autocatalytic.chem");
  auto results = selfrep_over_policies(spec, "a", 10, Equivalence::of(spec));
  REQUIRE(results.size() == 2);
  CHECK(results[0].first == SchedulerPolicy::first_declared);
  CHECK(results[1].first == SchedulerPolicy::round_robin);
  for (const auto& [policy, v] : results) CHECK(is_positive(v.status));
}

TEST_CASE("strict feasibility changes the verdict") {
  auto spec = parse_chemistry("molecules: a, f\nreaction r1: a + f -> 2 a\ninit: 2 a, 3 f\n");
  auto eq = Equivalence::of(spec);
  SelfrepOptions strict;
  strict.mode = Feasibility::strict;
  Trace ts = simulate(spec, 10, SchedulerPolicy::first_declared, Feasibility::strict);
  CHECK(ts.executed.size() == 2);
  CHECK(is_positive(detect_selfrep(ts, spec, "a", eq, strict).status));
  Trace tn = simulate(spec, 10);
  CHECK(tn.executed.size() == 3);
}

TEST_CASE("short witnesses are found within the budget on long cyclic runs") {
  auto spec = support::sample("network20.chem");
  Trace t = simulate(spec, 1000, SchedulerPolicy::round_robin);
  auto cycle = detect_cycle(t);
  REQUIRE(cycle);
  CHECK(cycle->cycle_len == 12);
  auto v = verify_theorem1(t, spec, *cycle, "a", Equivalence::of(spec));
  CHECK(v.status == Status::actually_self_reproducing);
  REQUIRE_FALSE(v.witness_paths.empty());
  CHECK(v.witness_paths.front().length() == 1);
}
