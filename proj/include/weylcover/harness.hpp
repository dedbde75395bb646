#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weylcover/config.hpp"
#include "weylcover/ensemble.hpp"
#include "weylcover/rng.hpp"

namespace weylcover {

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::string f_id;
};

struct JacobianSample {
  SlicePoint y;
  double jacobian = 0.0;
  double root_product = 0.0;
  double ratio = 0.0;
};

struct Eq1Verdict {
  MCEstimate lhs;
  MCEstimate rhs;
  double gap = 0.0;
  double combined_se = 0.0;
  bool pass = false;
};

struct HistogramComparison {
  std::vector<double> edges;       // bins + 1
  std::vector<std::uint64_t> observed;
  std::vector<double> expected;    // probabilities, sum to 1
  std::vector<int> retained;       // bin indices entering the chi^2
  double chi2 = 0.0;
  int dof = 0;
  bool pass = false;
  std::uint64_t samples = 0;
  std::string coordinate;
};

// |det dphi| at ([e], y); same kernel as check_phi_regular.
double radial_jacobian(const Ensemble& e, const SlicePoint& y,
                       const Tolerances& tols = default_tolerances());
// Central-difference recomputation (cross-check within fd_rel).
double radial_jacobian_fd(const Ensemble& e, const SlicePoint& y,
                          const Tolerances& tols = default_tolerances());

// J(y) against the declared V(y) on random regular probes.
std::vector<JacobianSample> jacobian_samples(const Ensemble& e, int probes, RngStream rng,
                                             const Tolerances& tols = default_tolerances());

// max_i |ratio_i / ratio_0 - 1| over random regular probes, where
// ratio = J(y) / V(y); contract < root_scan_rel.
double jacobian_root_scan(const Ensemble& e, int probes, RngStream rng,
                          const Tolerances& tols = default_tolerances());

MCEstimate mc_lhs(const Ensemble& e, const std::string& f_id, std::uint64_t samples,
                  RngStream rng);
MCEstimate mc_rhs(const Ensemble& e, const std::string& f_id, std::uint64_t samples,
                  RngStream rng);

Eq1Verdict verify_eq1(const Ensemble& e, const std::string& f_id, std::uint64_t samples,
                      RngStream rng, const Tolerances& tols = default_tolerances());

HistogramComparison density_histogram(const Ensemble& e, std::uint64_t samples, int bins,
                                      RngStream rng,
                                      const Tolerances& tols = default_tolerances());

}  // namespace weylcover
