#pragma once

#include <cstddef>

namespace weylcover {

// Every threshold used by the checks lives here so reports can embed the
// values they actually ran with.
struct Tolerances {
  double structural = 1e-8;       // membership / self-adjointness gate
  double degeneracy_gap = 1e-10;  // spectral ties below this are not regular
  double recon_self_adjoint = 1e-10;  // relative to the input Frobenius norm
  double recon_unitary = 1e-9;
  double haar_membership = 1e-12;
  double spd_round_trip = 1e-9;
  double fiber_residual = 1e-8;
  double coset_separation = 1e-4;
  double rank_rtol = 1e-8;        // singular values below rtol*sigma_max count as zero
  double det_floor = 1e-10;       // min |det dphi| accepted as regular
  double fd_step = 1e-5;          // central-difference step for Jacobian cross-checks
  double fd_rel = 1e-6;           // analytic vs finite-difference agreement
  double root_scan_rel = 1e-6;
  double slice_escape_slope_lo = 0.9;
  double slice_escape_slope_hi = 1.1;
  double slice_escape_floor = 0.1;   // D(eps) >= floor * eps * sigma_min
  double screen_slice_dist = 1e-6;   // global screen: "near the slice" cutoff
  double screen_coset_match = 1e-4;
  double weyl_slice_residual = 1e-10;
  double dedupe = 1e-9;
  double equivariance = 1e-8;
  double measure_zero_fraction = 1e-3;  // allowed decompose-failure fraction
  double stat_multiplier = 4.0;         // verify_eq1 gate width in combined SEs
  double density_invariance_rel = 1e-10;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tols{};
  return tols;
}

// Worker count: WEYLCOVER_THREADS, 0 or unset = hardware concurrency.
std::size_t configured_thread_count();

}  // namespace weylcover
