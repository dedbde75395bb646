#include "weylcover/checker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weylcover/errors.hpp"
#include "weylcover/linalg.hpp"
#include "weylcover/parallel.hpp"

namespace weylcover {

namespace {

std::vector<std::vector<double>> assembled_columns(const Ensemble& e, const SlicePoint& y,
                                                   const Tolerances& tols) {
  std::vector<std::vector<double>> cols = orbit_tangent_basis(e, y, tols);
  for (auto& c : slice_tangent_basis(e, y, tols)) cols.push_back(std::move(c));
  return cols;
}

// random unit element (instance metric) of the complement of Lie(K) in Lie(G)
DenseMatrix random_transversal_direction(const Ensemble& e, RngStream& rng) {
  std::vector<DenseMatrix> comp = lie_complement_basis(e);
  std::vector<double> w(comp.size());
  double norm = 0.0;
  while (norm < 1e-6) {
    norm = 0.0;
    for (double& v : w) {
      v = rng.next_gaussian();
      norm += v * v;
    }
    norm = std::sqrt(norm);
  }
  DenseMatrix xi = scale(Cplx{w[0] / norm}, comp[0]);
  for (std::size_t k = 1; k < comp.size(); ++k) xi += scale(Cplx{w[k] / norm}, comp[k]);
  return xi;
}

double fit_log_slope(const std::vector<double>& eps, const std::vector<double>& d) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = eps.size();
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::log(eps[i]), y = std::log(std::max(d[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

double phi_jacobian(const Ensemble& e, const SlicePoint& y, const Tolerances& tols) {
  std::vector<std::vector<double>> cols = assembled_columns(e, y, tols);
  if (static_cast<int>(cols.size()) != e.info().ambient_dim)
    throw CatalogCorrupt(e.id() + ": dimension bookkeeping violated");
  return abs_determinant(cols);
}

double phi_jacobian_fd(const Ensemble& e, const SlicePoint& y, const Tolerances& tols) {
  if (e.regularity_gap(y) <= tols.degeneracy_gap)
    throw NotRegular(e.id() + ": slice point is not regular");
  AmbientPoint emb = e.embed(y);
  double h = tols.fd_step;
  std::vector<std::vector<double>> cols;
  for (const DenseMatrix& xi : lie_complement_basis(e)) {
    DenseMatrix fwd = e.act(matrix_exp(scale(Cplx{h}, xi)), emb).value;
    DenseMatrix bwd = e.act(matrix_exp(scale(Cplx{-h}, xi)), emb).value;
    DenseMatrix diff = scale(Cplx{1.0 / (2.0 * h)}, fwd - bwd);
    cols.push_back(tangent_coordinates(e, emb, diff));
  }
  for (auto& c : slice_tangent_basis(e, y, tols)) cols.push_back(std::move(c));
  return abs_determinant(cols);
}

FiberReport fiber(const Ensemble& e, const AmbientPoint& x, const Tolerances& tols) {
  FiberReport report;
  report.instance_id = e.id();
  report.x = x;
  if (e.regularity_gap(x) <= tols.degeneracy_gap)
    throw NotRegular(e.id() + ": fiber wants a regular point");
  auto [g, yc] = e.decompose(x);
  WeylData weyl = coset_reps(e, tols);
  for (const CosetRep& rep : weyl.reps) {
    FiberEntry entry;
    entry.coset_index = rep.index;
    entry.g = g * rep.matrix;
    entry.y = weyl_act(e, rep, yc);
    entry.residual = distance(e.act(entry.g, e.embed(entry.y)).value, x.value);
    report.entries.push_back(std::move(entry));
  }
  report.count = static_cast<int>(report.entries.size());

  report.pass = true;
  if (report.count != e.info().expected_degree) {
    report.pass = false;
    report.defect = "fiber count " + std::to_string(report.count) + " != expected degree " +
                    std::to_string(e.info().expected_degree);
  }
  for (const FiberEntry& entry : report.entries) {
    if (entry.residual >= tols.fiber_residual) {
      report.pass = false;
      report.defect = "reconstruction residual " + std::to_string(entry.residual) +
                      " at coset " + std::to_string(entry.coset_index);
      break;
    }
  }
  for (std::size_t i = 0; i < report.entries.size() && report.pass; ++i)
    for (std::size_t j = i + 1; j < report.entries.size(); ++j) {
      if (e.coset_distance(report.entries[i].g, report.entries[j].g) <= tols.coset_separation) {
        report.pass = false;
        report.defect = "cosets " + std::to_string(i) + " and " + std::to_string(j) +
                        " are not separated";
        break;
      }
    }
  return report;
}

double check_invariance(const Ensemble& e, int samples, RngStream rng, const Tolerances& tols) {
  int ok = 0;
  for (int i = 0; i < samples; ++i) {
    RngStream sub = rng.split(i);
    AmbientPoint x = e.sample_ambient(sub);
    try {
      auto [g, y] = e.decompose(x);
      double residual = distance(e.act(g, e.embed(y)).value, x.value);
      if (residual < tols.equivariance * std::max(1.0, x.value.frobenius_norm())) ++ok;
    } catch (const NotRegular&) {
      // measure-zero set; counted as a failure
    }
  }
  return static_cast<double>(ok) / samples;
}

int check_transversality(const Ensemble& e, const SlicePoint& y, const Tolerances& tols) {
  std::vector<std::vector<double>> cols = assembled_columns(e, y, tols);
  return e.info().ambient_dim - numerical_rank(cols, tols.rank_rtol);
}

double check_orthogonality(const Ensemble& e, const SlicePoint& y, const Tolerances& tols) {
  std::vector<std::vector<double>> orbit = orbit_tangent_basis(e, y, tols);
  std::vector<std::vector<double>> slice = slice_tangent_basis(e, y, tols);
  auto norm = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  };
  double worst = 0.0;
  for (const auto& v : orbit) {
    double nv = norm(v);
    for (const auto& w : slice) {
      double nw = norm(w);
      double dot = 0.0;
      for (std::size_t k = 0; k < v.size(); ++k) dot += v[k] * w[k];
      worst = std::max(worst, std::abs(dot) / (nv * nw));
    }
  }
  return worst;
}

int check_isotropy_dim(const Ensemble& e, const SlicePoint& y, const Tolerances& tols) {
  if (e.regularity_gap(y) <= tols.degeneracy_gap)
    throw NotRegular(e.id() + ": slice point is not regular");
  AmbientPoint emb = e.embed(y);
  std::vector<std::vector<double>> cols;
  for (const DenseMatrix& xi : e.lie_basis())
    cols.push_back(tangent_coordinates(e, emb, e.action_differential(xi, emb)));
  int rank = numerical_rank(cols, tols.rank_rtol);
  return static_cast<int>(cols.size()) - rank;
}

double check_phi_regular(const Ensemble& e, const SlicePoint& y, const Tolerances& tols) {
  return phi_jacobian(e, y, tols);
}

EscapeReport check_slice_escape(const Ensemble& e, const SlicePoint& y,
                                const std::vector<double>& eps_sweep, RngStream rng,
                                int screen_draws, const Tolerances& tols) {
  if (e.regularity_gap(y) <= tols.degeneracy_gap)
    throw NotRegular(e.id() + ": slice point is not regular");
  for (double eps : eps_sweep)
    if (eps <= 1e-6 || eps >= 1e-2)
      throw BadInput("escape sweep must lie in (1e-6, 1e-2)");

  AmbientPoint emb = e.embed(y);
  WeylData weyl = coset_reps(e, tols);

  // sigma_min of the orbit columns with their slice components removed
  std::vector<std::vector<double>> orbit = orbit_tangent_basis(e, y, tols);
  std::vector<std::vector<double>> slice = slice_tangent_basis(e, y, tols);
  for (auto& v : orbit) {
    for (const auto& w : slice) {
      double dot = 0.0;
      for (std::size_t k = 0; k < v.size(); ++k) dot += v[k] * w[k];
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= dot * w[k];
    }
  }
  std::vector<double> sigma = singular_values(orbit);
  double sigma_min = sigma.empty() ? 0.0 : sigma.back();

  EscapeReport report;
  report.sigma_min = sigma_min;
  report.slope_ok = true;
  report.floor_ok = true;
  for (const CosetRep& rep : weyl.reps) {
    RngStream sub = rng.split(rep.index);
    DenseMatrix xi = random_transversal_direction(e, sub);
    std::vector<double> dist;
    for (double eps : eps_sweep) {
      DenseMatrix gm = rep.matrix * matrix_exp(scale(Cplx{eps}, xi));
      double d = e.slice_distance(e.act(gm, emb));
      dist.push_back(d);
      if (d < tols.slice_escape_floor * eps * sigma_min) report.floor_ok = false;
    }
    double slope = fit_log_slope(eps_sweep, dist);
    report.slopes.push_back(slope);
    if (slope < tols.slice_escape_slope_lo || slope > tols.slice_escape_slope_hi)
      report.slope_ok = false;
  }

  // global screen: any slice-preserving group element must sit in a Weyl coset
  RngStream screen_rng = rng.split(0x5C4EE);
  report.screen_hits = 0;
  report.screen_matched = 0;
  for (int i = 0; i < screen_draws; ++i) {
    DenseMatrix g = e.sample_group(screen_rng);
    if (e.slice_distance(e.act(g, emb)) >= tols.screen_slice_dist) continue;
    ++report.screen_hits;
    for (const CosetRep& rep : weyl.reps) {
      if (e.coset_distance(g, rep.matrix) < tols.screen_coset_match) {
        ++report.screen_matched;
        break;
      }
    }
  }
  report.screen_ok = report.screen_hits == report.screen_matched;
  return report;
}

ConditionReport run_conditions(const Ensemble& e, int probes, RngStream rng,
                               const Tolerances& tols) {
  if (probes < 1) throw BadInput("run_conditions needs probes >= 1");
  ConditionReport report;
  report.instance_id = e.id();
  report.probes = probes;
  report.seed = rng.master_seed();
  report.tols = tols;
  report.expected_degree = e.info().expected_degree;

  struct ProbeRecord {
    int transversality = 0;
    double orthogonality = 0.0;
    int isotropy = 0;
    double abs_det = 0.0;
    double det_fd_rel = 0.0;
    double slope_min = 0.0, slope_max = 0.0;
    bool escape_ok = true;
    bool screen_ok = true;
    bool fiber_ok = false;
    int fiber_count = 0;
    std::string error;
  };
  std::vector<ProbeRecord> records(probes);

  const std::vector<double> sweep = {1e-5, 3e-5, 1e-4, 3e-4, 1e-3};
  parallel_for_indexed(static_cast<std::size_t>(probes), [&](std::size_t i) {
    ProbeRecord& rec = records[i];
    try {
      RngStream probe_rng = rng.split(0xB0B0 + i);
      SlicePoint y = e.sample_slice(probe_rng);
      rec.transversality = check_transversality(e, y, tols);
      rec.orthogonality = check_orthogonality(e, y, tols);
      rec.isotropy = check_isotropy_dim(e, y, tols);
      rec.abs_det = check_phi_regular(e, y, tols);
      double fd = phi_jacobian_fd(e, y, tols);
      rec.det_fd_rel = std::abs(fd - rec.abs_det) / std::max(rec.abs_det, 1e-300);
      EscapeReport esc = check_slice_escape(e, y, sweep, probe_rng.split(1), 1000, tols);
      rec.slope_min = *std::min_element(esc.slopes.begin(), esc.slopes.end());
      rec.slope_max = *std::max_element(esc.slopes.begin(), esc.slopes.end());
      rec.escape_ok = esc.slope_ok && esc.floor_ok;
      rec.screen_ok = esc.screen_ok;
      RngStream fiber_rng = probe_rng.split(2);
      AmbientPoint x = e.sample_ambient(fiber_rng);
      FiberReport fr = fiber(e, x, tols);
      rec.fiber_ok = fr.pass;
      rec.fiber_count = fr.count;
      if (!fr.pass) rec.error = "FiberDefect: " + fr.defect;
    } catch (const Error& err) {
      rec.error = err.name() + std::string(": ") + err.what();
      rec.escape_ok = false;
      rec.fiber_ok = false;
    }
  });

  report.max_transversality_defect = 0;
  report.max_orthogonality = 0.0;
  report.isotropy_min = e.info().stabilizer_dim;
  report.isotropy_max = e.info().stabilizer_dim;
  report.min_abs_det = std::numeric_limits<double>::infinity();
  report.max_det_fd_rel_err = 0.0;
  report.min_escape_slope = std::numeric_limits<double>::infinity();
  report.max_escape_slope = -std::numeric_limits<double>::infinity();
  report.fiber_count_min = records.empty() ? 0 : records[0].fiber_count;
  report.fiber_count_max = report.fiber_count_min;
  for (const ProbeRecord& rec : records) {
    if (!rec.error.empty()) report.errors.push_back(rec.error);
    report.max_transversality_defect = std::max(report.max_transversality_defect, rec.transversality);
    report.max_orthogonality = std::max(report.max_orthogonality, rec.orthogonality);
    report.isotropy_min = std::min(report.isotropy_min, rec.isotropy);
    report.isotropy_max = std::max(report.isotropy_max, rec.isotropy);
    report.min_abs_det = std::min(report.min_abs_det, rec.abs_det);
    report.max_det_fd_rel_err = std::max(report.max_det_fd_rel_err, rec.det_fd_rel);
    report.min_escape_slope = std::min(report.min_escape_slope, rec.slope_min);
    report.max_escape_slope = std::max(report.max_escape_slope, rec.slope_max);
    if (!rec.escape_ok) report.escape_ok = false;
    if (!rec.screen_ok) report.screen_ok = false;
    if (rec.fiber_ok) ++report.fiber_pass;
    report.fiber_count_min = std::min(report.fiber_count_min, rec.fiber_count);
    report.fiber_count_max = std::max(report.fiber_count_max, rec.fiber_count);
  }
  report.fiber_total = probes;
  report.isotropy_ok = report.isotropy_min == e.info().stabilizer_dim &&
                       report.isotropy_max == e.info().stabilizer_dim;

  if (e.info().harness_eligible) {
    double fraction = check_invariance(e, 10000, rng.split(0x1A1A), tols);
    report.invariance_fraction = fraction;
    report.invariance_ok = fraction >= 1.0 - tols.measure_zero_fraction;
  }

  report.pass = report.errors.empty() && report.invariance_ok &&
                report.max_transversality_defect == 0 &&
                report.max_orthogonality < tols.structural && report.isotropy_ok &&
                report.min_abs_det > tols.det_floor &&
                report.max_det_fd_rel_err < tols.fd_rel && report.escape_ok &&
                report.screen_ok && report.fiber_pass == report.fiber_total;
  return report;
}

}  // namespace weylcover
