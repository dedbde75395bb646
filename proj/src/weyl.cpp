#include "weylcover/weyl.hpp"

#include <cmath>

#include "weylcover/errors.hpp"
#include "weylcover/linalg.hpp"

namespace weylcover {

WeylData coset_reps(const Ensemble& e, const Tolerances& tols) {
  std::vector<DenseMatrix> mats = e.weyl_rep_matrices();
  std::vector<std::string> labels = e.weyl_rep_labels();
  if (mats.empty() || labels.size() != mats.size())
    throw CatalogCorrupt(e.id() + ": malformed Weyl representative list");

  SlicePoint probe = e.probe_slice();
  AmbientPoint emb = e.embed(probe);
  WeylData data;
  data.instance_id = e.id();
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (e.group_residual(mats[i]) > tols.structural)
      throw CatalogCorrupt(e.id() + ": representative " + std::to_string(i) +
                           " fails group membership");
    AmbientPoint image = e.act(mats[i], emb);
    if (e.slice_distance(image) > tols.weyl_slice_residual)
      throw CatalogCorrupt(e.id() + ": representative " + std::to_string(i) +
                           " does not preserve the slice");
    data.reps.push_back({static_cast<int>(i), mats[i], labels[i]});
  }
  if (e.coset_distance(data.reps[0].matrix,
                       DenseMatrix::identity(data.reps[0].matrix.field(),
                                             data.reps[0].matrix.rows())) > tols.coset_separation)
    throw CatalogCorrupt(e.id() + ": representative 0 is not the identity coset");
  for (std::size_t i = 0; i < data.reps.size(); ++i)
    for (std::size_t j = i + 1; j < data.reps.size(); ++j)
      if (e.coset_distance(data.reps[i].matrix, data.reps[j].matrix) <= tols.coset_separation)
        throw CatalogCorrupt(e.id() + ": representatives " + std::to_string(i) + " and " +
                             std::to_string(j) + " share a K-coset");
  data.order = static_cast<int>(data.reps.size());
  return data;
}

SlicePoint weyl_act(const Ensemble& e, const CosetRep& rep, const SlicePoint& y) {
  AmbientPoint image = e.act(inverse(rep.matrix), e.embed(y));
  return e.slice_coords(image);
}

std::vector<SlicePoint> weyl_orbit(const Ensemble& e, const SlicePoint& y,
                                   const Tolerances& tols) {
  if (e.regularity_gap(y) <= tols.degeneracy_gap)
    throw NotRegular(e.id() + ": slice point is not regular");
  WeylData data = coset_reps(e, tols);
  std::vector<SlicePoint> orbit;
  for (const CosetRep& rep : data.reps) {
    SlicePoint image = weyl_act(e, rep, y);
    bool dup = false;
    for (const SlicePoint& seen : orbit) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < image.coords.size(); ++k) {
        double diff = image.coords[k] - seen.coords[k];
        d2 += diff * diff;
      }
      if (std::sqrt(d2) <= tols.dedupe) {
        dup = true;
        break;
      }
    }
    if (!dup) orbit.push_back(image);
  }
  return orbit;
}

}  // namespace weylcover
