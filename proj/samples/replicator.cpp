// Simulate the toy replicator, find its cycle and check self-reproduction
// of every molecule.

#include <iostream>

#include "achem/dsl.hpp"
#include "achem/engine.hpp"
#include "achem/selfrep.hpp"

int main() {
  auto spec = achem::parse_chemistry(R"(
molecules: a, f
reaction r1: a + f -> 2 a
reaction r2: 2 a -> a + f
init: 1 a, 1 f
)");
  auto trace = achem::simulate(spec, 10);
  for (std::size_t i = 0; i < trace.states.size(); ++i) std::cout << i << ": " << trace.states[i] << "\n";

  if (auto cycle = achem::detect_cycle(trace))
    std::cout << "cycle n=" << cycle->prefix_len << " l=" << cycle->cycle_len << "\n";

  for (const auto& v : achem::sweep_selfrep(trace, spec, achem::Equivalence::of(spec))) {
    std::cout << v.subject << ": " << achem::to_string(v.status);
    if (v.reason != achem::Rejection::none) std::cout << " (" << achem::to_string(v.reason) << ")";
    std::cout << "\n";
  }
}
