#pragma once

#include <string>
#include <vector>

#include "weylcover/config.hpp"
#include "weylcover/ensemble.hpp"

namespace weylcover {

// A chosen representative g_i of one K-coset in N, with the induced action
// on slice coordinates.
struct CosetRep {
  int index = 0;
  DenseMatrix matrix;
  std::string slice_action;
};

struct WeylData {
  std::string instance_id;
  std::vector<CosetRep> reps;
  int order = 0;
};

// The compiled list of N/K representatives, verified on construction: group
// membership, probe-slice preservation within tolerance, pairwise
// K-inequivalence, identity at index 0. Raises CatalogCorrupt on any breach.
WeylData coset_reps(const Ensemble& e, const Tolerances& tols = default_tolerances());

// Slice coordinates of act(rep.matrix^{-1}, embed(y)).
SlicePoint weyl_act(const Ensemble& e, const CosetRep& rep, const SlicePoint& y);

// {weyl_act(rep, y)} deduplicated; exactly d points for regular y.
std::vector<SlicePoint> weyl_orbit(const Ensemble& e, const SlicePoint& y,
                                   const Tolerances& tols = default_tolerances());

}  // namespace weylcover
