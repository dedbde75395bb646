#include "weylcover/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "weylcover/checker.hpp"
#include "weylcover/errors.hpp"
#include "weylcover/parallel.hpp"
#include "weylcover/simd_kernels.hpp"
#include "weylcover/weyl.hpp"

namespace weylcover {

namespace {

constexpr std::uint64_t kBatch = 4096;
constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kPi = 3.14159265358979323846;

void require_function(const Ensemble& e, const std::string& f_id) {
  if (!e.info().harness_eligible)
    throw BadInput(e.id() + " is not harness-eligible (noncompact G or non-normalizable p)");
  auto ids = e.test_function_ids();
  if (std::find(ids.begin(), ids.end(), f_id) == ids.end())
    throw BadInput(e.id() + " has no test function \"" + f_id + "\"");
}

// batched mean/stderr with per-batch substreams and fixed-order pairwise
// reductions; byte-identical for a given seed regardless of worker count
MCEstimate run_mc(const std::string& f_id, std::uint64_t samples, RngStream rng,
                  const std::function<double(RngStream&)>& draw) {
  if (samples < 1000) throw BadInput("Monte Carlo estimates need samples >= 1000");
  std::uint64_t nbatches = (samples + kBatch - 1) / kBatch;
  std::vector<double> sums(nbatches), squares(nbatches);
  parallel_for_indexed(nbatches, [&](std::size_t b) {
    std::uint64_t count = std::min(kBatch, samples - b * kBatch);
    RngStream sub = rng.split(b);
    std::vector<double> vals(count), sqs(count);
    for (std::uint64_t i = 0; i < count; ++i) {
      double v = draw(sub);
      vals[i] = v;
      sqs[i] = v * v;
    }
    sums[b] = simd::pairwise_sum(vals.data(), count);
    squares[b] = simd::pairwise_sum(sqs.data(), count);
  });
  double total = simd::pairwise_sum(sums.data(), nbatches);
  double total_sq = simd::pairwise_sum(squares.data(), nbatches);
  MCEstimate est;
  est.f_id = f_id;
  est.samples = samples;
  est.mean = total / static_cast<double>(samples);
  double var = 0.0;
  if (samples > 1)
    var = std::max(0.0, (total_sq - samples * est.mean * est.mean) /
                            static_cast<double>(samples - 1));
  est.std_error = std::sqrt(var / static_cast<double>(samples));
  return est;
}

}  // namespace

double radial_jacobian(const Ensemble& e, const SlicePoint& y, const Tolerances& tols) {
  return phi_jacobian(e, y, tols);
}

double radial_jacobian_fd(const Ensemble& e, const SlicePoint& y, const Tolerances& tols) {
  return phi_jacobian_fd(e, y, tols);
}

std::vector<JacobianSample> jacobian_samples(const Ensemble& e, int probes, RngStream rng,
                                             const Tolerances& tols) {
  if (!e.root_product())
    throw BadInput(e.id() + " declares no root product");
  std::vector<JacobianSample> out;
  out.reserve(probes);
  for (int i = 0; i < probes; ++i) {
    RngStream sub = rng.split(i);
    JacobianSample s;
    s.y = e.sample_slice(sub);
    s.jacobian = radial_jacobian(e, s.y, tols);
    s.root_product = e.root_product_value(s.y);
    if (s.root_product <= 0.0) throw NotRegular(e.id() + ": vanishing root product at a probe");
    s.ratio = s.jacobian / s.root_product;
    out.push_back(std::move(s));
  }
  return out;
}

double jacobian_root_scan(const Ensemble& e, int probes, RngStream rng,
                          const Tolerances& tols) {
  std::vector<JacobianSample> samples = jacobian_samples(e, probes, rng, tols);
  double worst = 0.0;
  for (const JacobianSample& s : samples)
    worst = std::max(worst, std::abs(s.ratio / samples[0].ratio - 1.0));
  return worst;
}

MCEstimate mc_lhs(const Ensemble& e, const std::string& f_id, std::uint64_t samples,
                  RngStream rng) {
  require_function(e, f_id);
  return run_mc(f_id, samples, rng, [&](RngStream& sub) {
    AmbientPoint x = e.sample_ambient(sub);
    return e.eval_test_function(f_id, x);
  });
}

MCEstimate mc_rhs(const Ensemble& e, const std::string& f_id, std::uint64_t samples,
                  RngStream rng) {
  require_function(e, f_id);
  WeylData weyl = coset_reps(e);
  return run_mc(f_id, samples, rng, [&](RngStream& sub) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      AmbientPoint x = e.sample_ambient(sub);
      SlicePoint yc;
      try {
        yc = e.decompose(x).second;
      } catch (const NotRegular&) {
        continue;  // measure-zero draw
      }
      // uniform Weyl translate samples dnu/d from the canonical chamber
      const CosetRep& rep = weyl.reps[sub.next_below(weyl.reps.size())];
      SlicePoint y = weyl_act(e, rep, yc);
      DenseMatrix g = e.sample_group(sub);
      return e.eval_test_function(f_id, e.act(g, e.embed(y)));
    }
    throw RejectionOverflow(e.id() + ": decompose kept failing in mc_rhs");
  });
}

Eq1Verdict verify_eq1(const Ensemble& e, const std::string& f_id, std::uint64_t samples,
                      RngStream rng, const Tolerances& tols) {
  Eq1Verdict v;
  v.lhs = mc_lhs(e, f_id, samples, rng.split(0x11));
  v.rhs = mc_rhs(e, f_id, samples, rng.split(0x22));
  v.gap = std::abs(v.lhs.mean - v.rhs.mean);
  v.combined_se = std::hypot(v.lhs.std_error, v.rhs.std_error);
  v.pass = v.gap <= tols.stat_multiplier * v.combined_se;
  return v;
}

// ---------------------------------------------------------------------------
// density_histogram
// ---------------------------------------------------------------------------

namespace {

struct QuadSpec {
  int dim = 0;
  bool ascending = false;        // canonical chamber ordering
  bool gaussian_weight = false;  // w = exp(-|c|^2/2) vs 1
  double box = 0.0;              // coordinate box: [-box, box] or [0, box]
  double t_hi = 0.0;             // histogram coordinate range is (0, t_hi)
};

QuadSpec quad_spec_for(const Ensemble& e) {
  QuadSpec q;
  q.dim = e.info().slice_dim;
  switch (e.info().ensemble_class) {
    case EnsembleClass::compact:
      q.box = kPi;
      q.t_hi = kPi;
      break;
    case EnsembleClass::linear:
    case EnsembleClass::algebra_compact:
      // truncated at 8 standard widths of the coordinate Gaussian
      q.box = 8.0;
      q.gaussian_weight = true;
      q.t_hi = 16.0;
      break;
    case EnsembleClass::group_compact:
      q.box = kTwoPi;
      q.ascending = true;
      q.t_hi = kTwoPi;
      break;
    default:
      throw BadInput(e.id() + " has no histogram support");
  }
  return q;
}

// histogram coordinate: theta for the sphere, the first adjacent gap of the
// canonical coordinates otherwise
double hist_coordinate(const QuadSpec& q, const std::vector<double>& c) {
  if (q.dim == 1) return c[0];
  return q.ascending ? c[1] - c[0] : c[0] - c[1];
}

// composite trapezoid with >= 513 nodes on an exact interval
template <typename F>
double trapezoid(double lo, double hi, const F& f) {
  if (hi <= lo) return 0.0;
  const int n = 513;
  double h = (hi - lo) / (n - 1);
  double sum = 0.5 * (f(lo) + f(hi));
  for (int i = 1; i + 1 < n; ++i) sum += f(lo + i * h);
  return sum * h;
}

// mass of the chamber slice at fixed histogram coordinate t, i.e. the
// integrand of the t-marginal of V(y) w(y) over the canonical chamber in
// coordinates where t is an axis (unit-Jacobian change of variables)
double slice_mass(const Ensemble& e, const QuadSpec& q, double t) {
  if (t <= 0.0 && q.dim > 1) return 0.0;
  SlicePoint y{e.id(), std::vector<double>(static_cast<std::size_t>(q.dim)), true};
  switch (q.dim) {
    case 1:
      y.coords[0] = t;
      return e.root_product_value(y);
    case 2: {
      if (q.ascending) {
        // phases (m, m + t), m in (0, 2pi - t); V depends only on t
        y.coords = {0.0, t};
        return (kTwoPi - t) * e.root_product_value(y);
      }
      // eigenvalues (m + t/2, m - t/2), m in [-(box - t/2), box - t/2]
      double m_hi = q.box - 0.5 * t;
      return trapezoid(-m_hi, m_hi, [&](double m) {
        y.coords[0] = m + 0.5 * t;
        y.coords[1] = m - 0.5 * t;
        double f = e.root_product_value(y);
        return f * std::exp(-0.5 * (y.coords[0] * y.coords[0] + y.coords[1] * y.coords[1]));
      });
    }
    case 3: {
      if (q.ascending) {
        // phases (u, u + t, v): 0 < u, u + t < v < 2pi
        return trapezoid(0.0, kTwoPi - t, [&](double u) {
          return trapezoid(u + t, kTwoPi, [&](double v) {
            y.coords[0] = u;
            y.coords[1] = u + t;
            y.coords[2] = v;
            return e.root_product_value(y);
          });
        });
      }
      // eigenvalues (u + t, u, v): v < u, u + t <= box
      return trapezoid(-q.box, q.box - t, [&](double u) {
        return trapezoid(-q.box, u, [&](double v) {
          y.coords[0] = u + t;
          y.coords[1] = u;
          y.coords[2] = v;
          double f = e.root_product_value(y);
          return f * std::exp(-0.5 * (y.coords[0] * y.coords[0] + y.coords[1] * y.coords[1] +
                                      y.coords[2] * y.coords[2]));
        });
      });
    }
    default:
      throw BadInput("histogram supports slice_dim <= 3");
  }
}

}  // namespace

HistogramComparison density_histogram(const Ensemble& e, std::uint64_t samples, int bins,
                                      RngStream rng, const Tolerances& tols) {
  if (!e.info().harness_eligible)
    throw BadInput(e.id() + " is not harness-eligible");
  if (!e.root_product())
    throw BadInput(e.id() + " declares no root product");
  if (e.info().slice_dim > 3 || bins < 2)
    throw BadInput("histogram needs slice_dim <= 3 and bins >= 2");

  QuadSpec q = quad_spec_for(e);
  HistogramComparison h;
  h.samples = samples;
  h.coordinate = q.dim == 1 ? "theta" : "first canonical gap";
  h.edges.resize(bins + 1);
  double width = q.t_hi / bins;
  for (int b = 0; b <= bins; ++b) h.edges[b] = b * width;
  h.expected.assign(bins, 0.0);
  h.observed.assign(bins, 0);

  // expected bin masses: per-bin trapezoid of the chamber slice mass along
  // the histogram coordinate (bin-aligned nodes, exact inner intervals)
  std::vector<double> expected(bins, 0.0);
  parallel_for_indexed(static_cast<std::size_t>(bins), [&](std::size_t b) {
    const int sub = 16;  // t-nodes per bin; inner trapezoids use 513 nodes
    double lo = h.edges[b], step = width / sub;
    double acc = 0.5 * (slice_mass(e, q, lo) + slice_mass(e, q, lo + width));
    for (int i = 1; i < sub; ++i) acc += slice_mass(e, q, lo + i * step);
    expected[b] = acc * step;
  });
  double mass = 0.0;
  for (double v : expected) mass += v;
  if (mass <= 0.0) throw BadInput(e.id() + ": quadrature found no chamber mass");
  for (int b = 0; b < bins; ++b) h.expected[b] = expected[b] / mass;

  // observed law of the canonical slice point under x ~ p
  std::uint64_t nbatches = (samples + kBatch - 1) / kBatch;
  std::vector<std::vector<std::uint64_t>> counts(nbatches);
  parallel_for_indexed(nbatches, [&](std::size_t bidx) {
    std::uint64_t count = std::min(kBatch, samples - bidx * kBatch);
    RngStream sub = rng.split(bidx);
    std::vector<std::uint64_t> local(bins, 0);
    for (std::uint64_t i = 0; i < count; ++i) {
      for (int attempt = 0; attempt < 1000; ++attempt) {
        AmbientPoint x = e.sample_ambient(sub);
        SlicePoint y;
        try {
          y = e.decompose(x).second;
        } catch (const NotRegular&) {
          continue;
        }
        double t = hist_coordinate(q, y.coords);
        int b = static_cast<int>(t / width);
        if (b == bins) b = bins - 1;
        if (b >= 0 && b < bins) ++local[b];
        break;
      }
    }
    counts[bidx] = std::move(local);
  });
  for (const auto& local : counts)
    for (int b = 0; b < bins; ++b) h.observed[b] += local[b];

  for (int b = 0; b < bins; ++b)
    if (h.expected[b] * static_cast<double>(samples) >= 20.0) h.retained.push_back(b);
  if (static_cast<int>(h.retained.size()) < 5)
    throw InsufficientSamples(e.id() + ": fewer than 5 bins reach the expected-count floor");

  h.chi2 = 0.0;
  for (int b : h.retained) {
    double expect = h.expected[b] * static_cast<double>(samples);
    double diff = static_cast<double>(h.observed[b]) - expect;
    h.chi2 += diff * diff / expect;
  }
  h.dof = static_cast<int>(h.retained.size()) - 1;
  h.pass = h.chi2 <= h.dof + tols.stat_multiplier * std::sqrt(2.0 * h.dof);
  return h;
}

}  // namespace weylcover
