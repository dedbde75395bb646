#pragma once

// Negative-control fixture: a registered instance presented with a wrong
// compiled covering degree, proving the checker can fail.

#include "weylcover/ensemble.hpp"

namespace weylcover::testing {

class CorruptDegreeFixture final : public Ensemble {
public:
  CorruptDegreeFixture(const Ensemble& inner, int wrong_degree)
      : Ensemble(corrupt(inner, wrong_degree)), inner_(inner) {}

  AmbientPoint sample_ambient(RngStream& rng) const override { return inner_.sample_ambient(rng); }
  DenseMatrix sample_group(RngStream& rng) const override { return inner_.sample_group(rng); }
  SlicePoint sample_slice(RngStream& rng) const override { return inner_.sample_slice(rng); }
  SlicePoint probe_slice() const override { return inner_.probe_slice(); }
  AmbientPoint act(const DenseMatrix& g, const AmbientPoint& x) const override {
    return inner_.act(g, x);
  }
  std::pair<DenseMatrix, SlicePoint> decompose(const AmbientPoint& x) const override {
    return inner_.decompose(x);
  }
  AmbientPoint embed(const SlicePoint& y) const override { return inner_.embed(y); }
  SlicePoint slice_coords(const AmbientPoint& x) const override { return inner_.slice_coords(x); }
  double regularity_gap(const AmbientPoint& x) const override { return inner_.regularity_gap(x); }
  double regularity_gap(const SlicePoint& y) const override { return inner_.regularity_gap(y); }
  double ambient_residual(const AmbientPoint& x) const override {
    return inner_.ambient_residual(x);
  }
  double group_residual(const DenseMatrix& g) const override { return inner_.group_residual(g); }
  double coset_distance(const DenseMatrix& g, const DenseMatrix& h) const override {
    return inner_.coset_distance(g, h);
  }
  double slice_distance(const AmbientPoint& x) const override { return inner_.slice_distance(x); }
  double density_at(const AmbientPoint& x) const override { return inner_.density_at(x); }
  std::vector<DenseMatrix> lie_basis() const override { return inner_.lie_basis(); }
  std::vector<DenseMatrix> lie_k_basis() const override { return inner_.lie_k_basis(); }
  DenseMatrix action_differential(const DenseMatrix& xi, const AmbientPoint& y) const override {
    return inner_.action_differential(xi, y);
  }
  std::vector<DenseMatrix> ambient_frame(const AmbientPoint& y) const override {
    return inner_.ambient_frame(y);
  }
  std::vector<DenseMatrix> slice_tangent_ambient(const SlicePoint& y) const override {
    return inner_.slice_tangent_ambient(y);
  }
  std::vector<DenseMatrix> weyl_rep_matrices() const override {
    return inner_.weyl_rep_matrices();
  }
  std::vector<std::string> weyl_rep_labels() const override { return inner_.weyl_rep_labels(); }
  std::optional<RootProduct> root_product() const override { return inner_.root_product(); }
  double root_product_value(const SlicePoint& y) const override {
    return inner_.root_product_value(y);
  }
  std::vector<std::string> test_function_ids() const override {
    return inner_.test_function_ids();
  }
  double eval_test_function(const std::string& f_id, const AmbientPoint& x) const override {
    return inner_.eval_test_function(f_id, x);
  }

private:
  static EnsembleInfo corrupt(const Ensemble& inner, int wrong_degree) {
    EnsembleInfo info = inner.info();
    info.expected_degree = wrong_degree;
    return info;
  }
  const Ensemble& inner_;
};

}  // namespace weylcover::testing
