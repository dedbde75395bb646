#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weylcover/config.hpp"
#include "weylcover/ensemble.hpp"
#include "weylcover/rng.hpp"
#include "weylcover/weyl.hpp"

namespace weylcover {

struct FiberEntry {
  int coset_index = 0;
  SlicePoint y;
  DenseMatrix g;
  double residual = 0.0;
};

// Enumerated preimages of x under phi, one per N/K coset.
struct FiberReport {
  std::string instance_id;
  AmbientPoint x;
  std::vector<FiberEntry> entries;
  int count = 0;
  bool pass = false;
  std::string defect;  // empty when pass
};

struct EscapeReport {
  std::vector<double> slopes;        // one per coset rep
  bool slope_ok = false;
  bool floor_ok = false;             // D(eps) >= floor * eps * sigma_min
  double sigma_min = 0.0;
  int screen_hits = 0;               // near-slice hits in the global screen
  int screen_matched = 0;            // hits whose coset matches a Weyl rep
  bool screen_ok = false;
};

// Aggregated verdict for conditions (a)-(d), the regularity of phi, and the
// covering-degree fiber counts.
struct ConditionReport {
  std::string instance_id;
  int probes = 0;
  std::uint64_t seed = 0;
  std::optional<double> invariance_fraction;  // empty = skipped by policy
  bool invariance_ok = true;
  int max_transversality_defect = 0;
  double max_orthogonality = 0.0;
  int isotropy_min = 0, isotropy_max = 0;
  bool isotropy_ok = true;
  double min_abs_det = 0.0;
  double max_det_fd_rel_err = 0.0;
  double min_escape_slope = 0.0, max_escape_slope = 0.0;
  bool escape_ok = true;
  bool screen_ok = true;
  int fiber_pass = 0, fiber_total = 0;
  int fiber_count_min = 0, fiber_count_max = 0;  // observed preimage counts
  int expected_degree = 0;
  bool pass = false;
  std::vector<std::string> errors;
  Tolerances tols;
};

// Shared |det dphi| kernel: determinant of [orbit basis | slice basis] in the
// orthonormal ambient frame at ([e], y).
double phi_jacobian(const Ensemble& e, const SlicePoint& y,
                    const Tolerances& tols = default_tolerances());
// Same determinant with the orbit columns recomputed by central differences
// of act(exp(h xi), y).
double phi_jacobian_fd(const Ensemble& e, const SlicePoint& y,
                       const Tolerances& tols = default_tolerances());

FiberReport fiber(const Ensemble& e, const AmbientPoint& x,
                  const Tolerances& tols = default_tolerances());

// Fraction of ambient draws that decompose cleanly; contract >= 1 - 1e-3.
double check_invariance(const Ensemble& e, int samples, RngStream rng,
                        const Tolerances& tols = default_tolerances());

// ambient_dim minus the numerical rank of [orbit | slice]; contract 0.
int check_transversality(const Ensemble& e, const SlicePoint& y,
                         const Tolerances& tols = default_tolerances());

// max |<v, w>| over unit-normalized orbit/slice basis pairs; contract < 1e-8.
double check_orthogonality(const Ensemble& e, const SlicePoint& y,
                           const Tolerances& tols = default_tolerances());

// kernel dimension of xi -> d/dt act(exp(t xi), y) over all of Lie(G);
// contract: equals stabilizer_dim.
int check_isotropy_dim(const Ensemble& e, const SlicePoint& y,
                       const Tolerances& tols = default_tolerances());

// |det dphi| at ([e], y); contract > 1e-10.
double check_phi_regular(const Ensemble& e, const SlicePoint& y,
                         const Tolerances& tols = default_tolerances());

// First-order slice-escape test plus a global random screen (N_y = N
// surrogate).
EscapeReport check_slice_escape(const Ensemble& e, const SlicePoint& y,
                                const std::vector<double>& eps_sweep, RngStream rng,
                                int screen_draws = 1000,
                                const Tolerances& tols = default_tolerances());

ConditionReport run_conditions(const Ensemble& e, int probes, RngStream rng,
                               const Tolerances& tols = default_tolerances());

}  // namespace weylcover
