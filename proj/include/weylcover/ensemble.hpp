#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weylcover/config.hpp"
#include "weylcover/matrix.hpp"
#include "weylcover/rng.hpp"

namespace weylcover {

enum class EnsembleClass {
  linear,
  nonlinear_noncompact,
  compact,
  group_compact,
  algebra_compact,
  group_complex,
  algebra_complex,
  pseudo_group,
  pseudo_algebra,
};

const char* ensemble_class_name(EnsembleClass c);

enum class Branch { split, rotation };

// Static descriptor of one registered system (G, sigma, X, p dx, Y, dy).
struct EnsembleInfo {
  std::string id;
  EnsembleClass ensemble_class;
  int n = 0;                       // rank
  std::optional<Branch> branch;    // pseudo classes only
  int ambient_dim = 0;             // dim X as a real manifold
  int slice_dim = 0;               // dim Y
  int stabilizer_dim = 0;          // dim K
  int expected_degree = 0;         // d = |N/K|
  std::optional<double> beta;      // root multiplicity, when V is declared
  bool harness_eligible = false;   // compact G and normalizable p
};

// Point of the slice Y in instance coordinates (eigenvalues; phases;
// meridian angle; (a,b) for the rotation branch; (Re, Im) pairs for the
// complex classes). canonical == true iff the coordinates lie in the chosen
// fundamental chamber.
struct SlicePoint {
  std::string instance_id;
  std::vector<double> coords;
  bool canonical = false;
};

struct AmbientPoint {
  std::string instance_id;
  DenseMatrix value;  // 3x1 vector for the sphere instance
};

// Declared Vandermonde-type factor: product over the instance's root
// functions with multiplicity beta.
struct RootProduct {
  double beta = 1.0;
  std::string description;
};

// One registered matrix-group action with its slice. Operations are pure;
// instances are immutable after registration.
class Ensemble {
public:
  explicit Ensemble(EnsembleInfo info) : info_(std::move(info)) {}
  virtual ~Ensemble() = default;

  const EnsembleInfo& info() const { return info_; }
  const std::string& id() const { return info_.id; }

  // --- sampling -----------------------------------------------------------
  // x ~ p(x)dx for harness-eligible instances; for the complex/pseudo
  // classes a Gaussian draw conditioned on regularity (fiber tests only).
  virtual AmbientPoint sample_ambient(RngStream& rng) const = 0;
  // random group element: Haar for compact G, a Gaussian-derived regular
  // element otherwise (used only as a screen).
  virtual DenseMatrix sample_group(RngStream& rng) const = 0;
  // random regular slice point for probe loops.
  virtual SlicePoint sample_slice(RngStream& rng) const = 0;
  // fixed regular slice point used for compiled-catalog verification.
  virtual SlicePoint probe_slice() const = 0;

  // --- the action ---------------------------------------------------------
  virtual AmbientPoint act(const DenseMatrix& g, const AmbientPoint& x) const = 0;
  virtual std::pair<DenseMatrix, SlicePoint> decompose(const AmbientPoint& x) const = 0;
  virtual AmbientPoint embed(const SlicePoint& y) const = 0;
  // coordinates of an ambient point that lies on Y (no canonicalization).
  virtual SlicePoint slice_coords(const AmbientPoint& on_slice) const = 0;

  // --- regularity and membership ------------------------------------------
  virtual double regularity_gap(const AmbientPoint& x) const = 0;
  virtual double regularity_gap(const SlicePoint& y) const = 0;
  virtual double ambient_residual(const AmbientPoint& x) const = 0;
  virtual double group_residual(const DenseMatrix& g) const = 0;
  // distance of g^{-1} h to K; 0 iff [g] = [h].
  virtual double coset_distance(const DenseMatrix& g, const DenseMatrix& h) const = 0;
  // distance of an ambient point to the slice Y.
  virtual double slice_distance(const AmbientPoint& x) const = 0;

  // --- density --------------------------------------------------------
  virtual double density_at(const AmbientPoint& x) const = 0;

  // --- tangent machinery ----------------------------------------------
  // orthonormal basis of Lie(G); matrix groups use <xi,eta> = Re tr(xi^H eta),
  // the sphere's SO(2) uses the rotation-angle metric (unit angular speed).
  virtual std::vector<DenseMatrix> lie_basis() const = 0;
  // the inner product the basis above is orthonormal under
  virtual double lie_inner(const DenseMatrix& a, const DenseMatrix& b) const {
    return re_tr_inner(a, b);
  }
  virtual std::vector<DenseMatrix> lie_k_basis() const = 0;
  // d/dt|_0 act(exp(t xi), y) as an ambient displacement.
  virtual DenseMatrix action_differential(const DenseMatrix& xi, const AmbientPoint& y) const = 0;
  // orthonormal basis of T_y X (ambient frame at a slice point's embedding).
  virtual std::vector<DenseMatrix> ambient_frame(const AmbientPoint& y) const = 0;
  // orthonormal basis of T_y Y as ambient displacements.
  virtual std::vector<DenseMatrix> slice_tangent_ambient(const SlicePoint& y) const = 0;

  // --- Weyl data --------------------------------------------------------
  virtual std::vector<DenseMatrix> weyl_rep_matrices() const = 0;
  virtual std::vector<std::string> weyl_rep_labels() const = 0;

  // --- harness support --------------------------------------------------
  virtual std::optional<RootProduct> root_product() const { return std::nullopt; }
  virtual double root_product_value(const SlicePoint& y) const;
  virtual std::vector<std::string> test_function_ids() const;
  virtual double eval_test_function(const std::string& f_id, const AmbientPoint& x) const;

protected:
  EnsembleInfo info_;
};

// --- registry ---------------------------------------------------------

// Compiled catalog lookup; throws UnknownInstance.
const Ensemble& instance_lookup(const std::string& id);
std::vector<std::string> instance_ids();

// --- registry-level operations (generic over instances) -----------------

// Coordinates (length ambient_dim) of an ambient displacement in the
// orthonormal frame at y.
std::vector<double> tangent_coordinates(const Ensemble& e, const AmbientPoint& y,
                                        const DenseMatrix& tangent);

// Images under the action differential of an orthonormal basis of the
// orthogonal complement of Lie(K) in Lie(G), in frame coordinates.
std::vector<std::vector<double>> orbit_tangent_basis(const Ensemble& e, const SlicePoint& y,
                                                     const Tolerances& tols = default_tolerances());

// Orthonormal basis of T_y Y in the same frame coordinates.
std::vector<std::vector<double>> slice_tangent_basis(const Ensemble& e, const SlicePoint& y,
                                                     const Tolerances& tols = default_tolerances());

// Orthonormal basis of Lie(G) - Lie(K) (the complement used above), as
// Lie-algebra matrices.
std::vector<DenseMatrix> lie_complement_basis(const Ensemble& e);

}  // namespace weylcover
