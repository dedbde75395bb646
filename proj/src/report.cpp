#include "weylcover/report.hpp"

#include <chrono>
#include <sstream>

#include "json.hpp"

namespace weylcover {

namespace {

using nlohmann::json;

json tolerances_json(const Tolerances& t) {
  json j;
  j["structural"] = t.structural;
  j["degeneracy_gap"] = t.degeneracy_gap;
  j["fiber_residual"] = t.fiber_residual;
  j["coset_separation"] = t.coset_separation;
  j["rank_rtol"] = t.rank_rtol;
  j["det_floor"] = t.det_floor;
  j["fd_rel"] = t.fd_rel;
  j["root_scan_rel"] = t.root_scan_rel;
  j["slice_escape_slope"] = {t.slice_escape_slope_lo, t.slice_escape_slope_hi};
  j["screen_slice_dist"] = t.screen_slice_dist;
  j["screen_coset_match"] = t.screen_coset_match;
  j["measure_zero_fraction"] = t.measure_zero_fraction;
  j["stat_multiplier"] = t.stat_multiplier;
  return j;
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["instances"] = cfg.instance_ids;
  j["seed"] = cfg.seed;
  j["probes"] = cfg.probes;
  j["samples"] = cfg.samples;
  j["bins"] = cfg.bins;
  j["format"] = cfg.format;
  j["tolerances"] = tolerances_json(cfg.tols);
  return j;
}

void maybe_timestamp(json& j, const RunConfig& cfg) {
  if (!cfg.timestamp) return;
  auto now = std::chrono::system_clock::now();
  j["generated_at_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
}

json slice_point_json(const SlicePoint& y) {
  json j;
  j["coords"] = y.coords;
  j["canonical"] = y.canonical;
  return j;
}

json matrix_json(const DenseMatrix& m) { return json::parse(to_json_string(m)); }

json estimate_json(const MCEstimate& e) {
  json j;
  j["f"] = e.f_id;
  j["mean"] = e.mean;
  j["std_error"] = e.std_error;
  j["samples"] = e.samples;
  return j;
}

}  // namespace

std::string catalog_json() {
  json out = json::array();
  for (const std::string& id : instance_ids()) {
    const Ensemble& e = instance_lookup(id);
    const EnsembleInfo& info = e.info();
    json j;
    j["id"] = info.id;
    j["class"] = ensemble_class_name(info.ensemble_class);
    j["n"] = info.n;
    if (info.branch)
      j["branch"] = *info.branch == Branch::split ? "split" : "rotation";
    j["ambient_dim"] = info.ambient_dim;
    j["slice_dim"] = info.slice_dim;
    j["stabilizer_dim"] = info.stabilizer_dim;
    j["degree"] = info.expected_degree;
    if (info.beta) j["beta"] = *info.beta;
    j["harness_eligible"] = info.harness_eligible;
    out.push_back(std::move(j));
  }
  return out.dump(2);
}

std::string condition_report_json(const ConditionReport& r, const RunConfig& cfg) {
  json j;
  j["kind"] = "conditions";
  j["instance"] = r.instance_id;
  j["probes"] = r.probes;
  j["seed"] = r.seed;
  if (r.invariance_fraction)
    j["invariance_fraction"] = *r.invariance_fraction;
  else
    j["invariance"] = "skipped-by-policy (not harness-eligible)";
  j["invariance_ok"] = r.invariance_ok;
  j["max_transversality_defect"] = r.max_transversality_defect;
  j["max_orthogonality_gram"] = r.max_orthogonality;
  j["isotropy_observed"] = {r.isotropy_min, r.isotropy_max};
  j["isotropy_ok"] = r.isotropy_ok;
  j["min_abs_det_dphi"] = r.min_abs_det;
  j["max_det_fd_rel_err"] = r.max_det_fd_rel_err;
  j["escape_slope_range"] = {r.min_escape_slope, r.max_escape_slope};
  j["escape_ok"] = r.escape_ok;
  j["screen_ok"] = r.screen_ok;
  j["fiber_pass"] = r.fiber_pass;
  j["fiber_total"] = r.fiber_total;
  j["fiber_counts_observed"] = {r.fiber_count_min, r.fiber_count_max};
  j["expected_degree"] = r.expected_degree;
  j["errors"] = r.errors;
  j["pass"] = r.pass;
  j["config"] = config_to_json(cfg);
  maybe_timestamp(j, cfg);
  return j.dump(2);
}

std::string fiber_report_json(const FiberReport& r, const RunConfig& cfg) {
  json j;
  j["kind"] = "fiber";
  j["instance"] = r.instance_id;
  j["x"] = matrix_json(r.x.value);
  j["count"] = r.count;
  j["pass"] = r.pass;
  if (!r.defect.empty()) j["defect"] = r.defect;
  json entries = json::array();
  for (const FiberEntry& entry : r.entries) {
    json ej;
    ej["coset_index"] = entry.coset_index;
    ej["y"] = slice_point_json(entry.y);
    ej["g"] = matrix_json(entry.g);
    ej["residual"] = entry.residual;
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  j["config"] = config_to_json(cfg);
  maybe_timestamp(j, cfg);
  return j.dump(2);
}

std::string eq1_report_json(const std::string& instance_id,
                            const std::vector<Eq1Verdict>& verdicts, const RunConfig& cfg) {
  json j;
  j["kind"] = "integrate";
  j["instance"] = instance_id;
  json list = json::array();
  bool all = true;
  for (const Eq1Verdict& v : verdicts) {
    json vj;
    vj["lhs"] = estimate_json(v.lhs);
    vj["rhs"] = estimate_json(v.rhs);
    vj["gap"] = v.gap;
    vj["combined_se"] = v.combined_se;
    vj["pass"] = v.pass;
    all = all && v.pass;
    list.push_back(std::move(vj));
  }
  j["results"] = std::move(list);
  j["pass"] = all;
  j["config"] = config_to_json(cfg);
  maybe_timestamp(j, cfg);
  return j.dump(2);
}

std::string histogram_json(const std::string& instance_id, const HistogramComparison& h,
                           const RunConfig& cfg) {
  json j;
  j["kind"] = "density";
  j["instance"] = instance_id;
  j["coordinate"] = h.coordinate;
  j["edges"] = h.edges;
  j["observed"] = h.observed;
  j["expected_probability"] = h.expected;
  j["retained_bins"] = h.retained;
  j["chi2"] = h.chi2;
  j["dof"] = h.dof;
  j["samples"] = h.samples;
  j["pass"] = h.pass;
  j["config"] = config_to_json(cfg);
  maybe_timestamp(j, cfg);
  return j.dump(2);
}

std::string histogram_csv(const HistogramComparison& h) {
  std::ostringstream os;
  os << "bin_left,bin_right,observed,expected\n";
  os.precision(17);
  for (std::size_t b = 0; b + 1 < h.edges.size(); ++b) {
    double expected = h.expected[b] * static_cast<double>(h.samples);
    os << h.edges[b] << "," << h.edges[b + 1] << "," << h.observed[b] << "," << expected
       << "\n";
  }
  return os.str();
}

std::string estimates_csv(const std::vector<Eq1Verdict>& verdicts) {
  std::ostringstream os;
  os << "f,lhs_mean,lhs_se,rhs_mean,rhs_se,gap,combined_se,pass\n";
  os.precision(17);
  for (const Eq1Verdict& v : verdicts) {
    os << v.lhs.f_id << "," << v.lhs.mean << "," << v.lhs.std_error << "," << v.rhs.mean << ","
       << v.rhs.std_error << "," << v.gap << "," << v.combined_se << "," << (v.pass ? 1 : 0)
       << "\n";
  }
  return os.str();
}

}  // namespace weylcover
