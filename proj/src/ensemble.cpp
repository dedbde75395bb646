#include "weylcover/ensemble.hpp"

#include <cmath>

#include "weylcover/errors.hpp"
#include "weylcover/linalg.hpp"

namespace weylcover {

const char* ensemble_class_name(EnsembleClass c) {
  switch (c) {
    case EnsembleClass::linear: return "linear";
    case EnsembleClass::nonlinear_noncompact: return "nonlinear-noncompact";
    case EnsembleClass::compact: return "compact";
    case EnsembleClass::group_compact: return "group-compact";
    case EnsembleClass::algebra_compact: return "algebra-compact";
    case EnsembleClass::group_complex: return "group-complex";
    case EnsembleClass::algebra_complex: return "algebra-complex";
    case EnsembleClass::pseudo_group: return "pseudo-group";
    case EnsembleClass::pseudo_algebra: return "pseudo-algebra";
  }
  return "unknown";
}

double Ensemble::root_product_value(const SlicePoint&) const {
  throw BadInput(id() + " declares no root product");
}

std::vector<std::string> Ensemble::test_function_ids() const { return {}; }

double Ensemble::eval_test_function(const std::string& f_id, const AmbientPoint&) const {
  throw BadInput(id() + " has no test function \"" + f_id + "\"");
}

std::vector<double> tangent_coordinates(const Ensemble& e, const AmbientPoint& y,
                                        const DenseMatrix& tangent) {
  std::vector<DenseMatrix> frame = e.ambient_frame(y);
  std::vector<double> coords(frame.size());
  for (std::size_t k = 0; k < frame.size(); ++k) coords[k] = re_tr_inner(frame[k], tangent);
  return coords;
}

std::vector<DenseMatrix> lie_complement_basis(const Ensemble& e) {
  std::vector<DenseMatrix> basis = e.lie_basis();
  std::vector<DenseMatrix> k = e.lie_k_basis();
  std::vector<DenseMatrix> comp;
  for (const DenseMatrix& b : basis) {
    DenseMatrix v = b;
    for (const DenseMatrix& kb : k) v -= scale(Cplx{e.lie_inner(kb, v)}, kb);
    for (const DenseMatrix& cb : comp) v -= scale(Cplx{e.lie_inner(cb, v)}, cb);
    double norm = std::sqrt(e.lie_inner(v, v));
    if (norm > 1e-8) comp.push_back(scale(Cplx{1.0 / norm}, v));
  }
  int expected = static_cast<int>(basis.size()) - static_cast<int>(k.size());
  if (static_cast<int>(comp.size()) != expected)
    throw CatalogCorrupt(e.id() + ": Lie(K) complement has the wrong dimension");
  return comp;
}

std::vector<std::vector<double>> orbit_tangent_basis(const Ensemble& e, const SlicePoint& y,
                                                     const Tolerances& tols) {
  if (e.regularity_gap(y) <= tols.degeneracy_gap)
    throw NotRegular(e.id() + ": slice point is not regular");
  AmbientPoint emb = e.embed(y);
  std::vector<std::vector<double>> out;
  for (const DenseMatrix& xi : lie_complement_basis(e))
    out.push_back(tangent_coordinates(e, emb, e.action_differential(xi, emb)));
  return out;
}

std::vector<std::vector<double>> slice_tangent_basis(const Ensemble& e, const SlicePoint& y,
                                                     const Tolerances& tols) {
  if (e.regularity_gap(y) <= tols.degeneracy_gap)
    throw NotRegular(e.id() + ": slice point is not regular");
  AmbientPoint emb = e.embed(y);
  std::vector<std::vector<double>> out;
  for (const DenseMatrix& v : e.slice_tangent_ambient(y))
    out.push_back(tangent_coordinates(e, emb, v));
  return out;
}

}  // namespace weylcover
