#ifndef INFINIALG_FREE_CLONE_HPP
#define INFINIALG_FREE_CLONE_HPP

#include <map>
#include <memory>

#include "infinialg/clone.hpp"
#include "infinialg/term.hpp"

namespace infinialg {

struct SaturationReport {
  bool saturated = false;
  std::map<int, int> sizes;  // arity -> class count
  int depth_used = 0;
  // arity -> canonical representative -> class members seen in the universe
  std::map<int, std::map<std::string, std::vector<std::string>>> class_reps;
};

struct FreeCloneResult {
  ClonePtr clone;
  SaturationReport report;
};

// O(n) = term classes over n variables under the congruence generated by the
// equations, computed by breadth-first term enumeration with ground
// congruence closure over the growing universe. A saturation round applies
// every symbol to all tuples of current representatives, instantiates every
// equation over them, and closes under congruence; saturated means a round
// neither adds nor merges classes. Throws NotSaturated when class counts are
// still moving after depth_bound rounds; no partial clone is returned.
FreeCloneResult free_clone(const Presentation& p, int n_max, int depth_bound);

// One function symbol per operation of c, equations = every ground instance
// of the substitution tables plus the projection identities over indices
// <= n_max. free_clone of the result is isomorphic to c.
Presentation theory_of_clone(const Clone& c, const SearchBudget& budget = {});

}  // namespace infinialg

#endif
