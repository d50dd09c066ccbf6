#include <catch_amalgamated.hpp>

#include "achem/dsl.hpp"
#include "support.hpp"

using namespace achem;

namespace {

SpecError::Kind spec_error_kind(const std::string& text) {
  try {
    parse_chemistry(text);
  } catch (const SpecError& e) {
    return e.kind();
  }
  FAIL("no SpecError for: " << text);
  return SpecError::Kind::empty_input;
}

}  // namespace

TEST_CASE("parses the toy autocatalytic chemistry") {
  auto spec = parse_chemistry(R"(
# toy
molecules: a, f
reaction r1: a + f -> 2 a
reaction r2: 2 a -> a + f   # decay
init: 1 a, 1 f
)");
  CHECK(spec.molecules == std::vector<Symbol>{"a", "f"});
  REQUIRE(spec.reactions.size() == 2);
  CHECK(spec.reactions[0] == Reaction{"r1", {{"a", 1}, {"f", 1}}, {{"a", 2}}});
  CHECK(spec.reactions[1] == Reaction{"r2", {{"a", 2}}, {{"a", 1}, {"f", 1}}});
  CHECK(spec.initial == Multiset{{"a", 1}, {"f", 1}});
  CHECK(spec.equivalences.empty());
}

TEST_CASE("statements may come in any order") {
  auto spec = parse_chemistry("init: 2 x\nreaction r: x -> y\nmolecules: x, y\n");
  CHECK(spec.initial == Multiset{{"x", 2}});
}

TEST_CASE("repeated terms accumulate") {
  auto spec = parse_chemistry("molecules: a\nreaction r: a + a -> 3 a\n");
  CHECK(spec.reactions[0].input == Multiset{{"a", 2}});
  CHECK(spec.reactions[0].output == Multiset{{"a", 3}});
}

TEST_CASE("primes and unicode bytes are symbol characters") {
  auto spec = parse_chemistry("molecules: a, a', \xce\xb6\nreaction r: a -> a' + \xce\xb6\n");
  CHECK(spec.molecules[1] == "a'");
  CHECK(spec.molecules[2] == "\xce\xb6");
}

TEST_CASE("keywords do not split identifiers") {
  auto spec = parse_chemistry("molecules: initx, reactionary\nreaction r: initx -> reactionary\n");
  CHECK(spec.declares("initx"));
}

TEST_CASE("equivalence classes") {
  auto spec = support::sample("parallel.chem");
  REQUIRE(spec.equivalences.size() == 3);
  CHECK(spec.equivalences[0] == EquivClass{"A", {"a", "a'"}});
}

TEST_CASE("undeclared symbols are reported with their position") {
  try {
    parse_chemistry("molecules: a\nreaction r1: a + b -> a\n");
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(e.kind() == SpecError::Kind::undeclared_symbol);
    CHECK(e.line() == 2);
    CHECK(e.column() == 18);
  }
}

TEST_CASE("declaration violations") {
  using K = SpecError::Kind;
  CHECK(spec_error_kind("molecules: a, a\n") == K::duplicate_molecule);
  CHECK(spec_error_kind("molecules: a\nreaction r: a -> a\nreaction r: a -> a\n") == K::duplicate_reaction);
  CHECK(spec_error_kind("molecules: a\nreaction r1: -> a\n") == K::empty_input);
  CHECK(spec_error_kind("molecules: a\ninit: 1 a\ninit: 2 a\n") == K::duplicate_init);
  CHECK(spec_error_kind("molecules: a, b\nequiv e: a, b\nequiv e: a\n") == K::duplicate_class);
  CHECK(spec_error_kind("molecules: a, b, c\nequiv e: a, b\nequiv g: b, c\n") == K::overlapping_classes);
  CHECK(spec_error_kind("molecules: a\nequiv e: a, z\n") == K::undeclared_symbol);
  CHECK(spec_error_kind("molecules: a\ninit: 1 q\n") == K::undeclared_symbol);
}

TEST_CASE("syntax errors carry line and column") {
  auto where = [](const std::string& text) {
    try {
      parse_chemistry(text);
    } catch (const ParseError& e) {
      return std::pair{e.line(), e.column()};
    }
    return std::pair<std::size_t, std::size_t>{0, 0};
  };
  CHECK(where("molecules: a\nreaction r1 a -> a\n") == std::pair<std::size_t, std::size_t>{2, 13});
  CHECK(where("molecules: a\nreaction r1: 0 a -> a\n") == std::pair<std::size_t, std::size_t>{2, 14});
  CHECK(where("molecules: a\nreaction r1: a => a\n") == std::pair<std::size_t, std::size_t>{2, 16});
  CHECK(where("molecule: a\n").first == 1);
  CHECK(where("molecules: a b\n") == std::pair<std::size_t, std::size_t>{1, 14});
  CHECK(where("molecules: a\nreaction r1: a -> 99999999999999999999999 a\n").first == 2);
}

TEST_CASE("printing round-trips") {
  for (auto name : {"autocatalytic.chem", "hypercycle.chem", "parallel.chem", "network20.chem", "merge.chem"}) {
    auto spec = support::sample(name);
    CHECK(parse_chemistry(to_dsl(spec)) == spec);
  }
  ChemistrySpec empty_init = parse_chemistry("molecules: a\nreaction r: a -> 2 a\n");
  CHECK(to_dsl(empty_init) == "molecules: a\nreaction r: a -> 2 a\n");
}

TEST_CASE("specs built in code are validated too") {
  ChemistrySpec spec;
  spec.molecules = {"a"};
  spec.reactions = {Reaction{"r", {{"b", 1}}, {{"a", 1}}}};
  CHECK_THROWS_AS(spec.validate(), SpecError);
  CHECK_THROWS_AS(spec.reaction("nope"), UnknownReaction);
  CHECK(spec.reaction_index("r") == 0u);
}
