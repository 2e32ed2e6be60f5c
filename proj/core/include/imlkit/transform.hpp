#pragma once

#include <vector>

#include "imlkit/structures.hpp"

namespace imlkit {

// Where a state of a constructed model comes from. `state` is the original
// state (-1 for a fresh root), `copy` the 0/1 tag of the doubling
// constructions, `partner` the second member of the pair {t,u} in
// partitionize, and `component` the input model (1 or 2) in rooted_join.
struct Origin {
  int state = -1;
  int copy = 0;
  int partner = -1;
  int component = 1;
};
using StateMap = std::vector<Origin>;

struct Constructed {
  Model model;
  StateMap map;
};

struct Joined {
  Model model;
  StateMap map;
  int root = -1;
};

Model intersectional_update(const Model& m);
Constructed double_strict(const Model& m);
Constructed double_reflexive(const Model& m);  // throws NotReflexive
Constructed partitionize(const Model& m);      // throws PreconditionFailed
Joined rooted_join(const Model& m1, int s1, const Model& m2, int s2);

}  // namespace imlkit
