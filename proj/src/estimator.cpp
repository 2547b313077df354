#include "gqstate/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gqstate {

double shannon_entropy(const CoarseHistogram& histogram) {
  double h = 0.0;
  for (const auto& [key, p] : histogram.entries) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return std::max(0.0, h);
}

std::vector<std::uint32_t> dyadic_scales(int lo_exp, int hi_exp) {
  if (lo_exp < 0 || hi_exp < lo_exp || hi_exp > 31)
    throw InvalidInputError("dyadic_scales: bad exponent range");
  std::vector<std::uint32_t> out;
  out.reserve(static_cast<std::size_t>(hi_exp - lo_exp + 1));
  for (int e = lo_exp; e <= hi_exp; ++e) out.push_back(1u << e);
  return out;
}

ScalingCurve scaling_curve(const GeometricQuantumState& state,
                           const std::vector<std::uint32_t>& scales,
                           const CoarseGrainOptions& options) {
  if (scales.empty()) throw InvalidInputError("scaling_curve: no scales");
  for (std::size_t i = 1; i < scales.size(); ++i) {
    if (scales[i] <= scales[i - 1])
      throw InvalidInputError("scaling_curve: scales must be strictly increasing");
  }
  ScalingCurve curve;
  curve.dim_d = state_dim(state);
  curve.points.resize(scales.size());
  parallel_for(scales.size(), [&](std::size_t i) {
    const Partition partition(curve.dim_d, scales[i]);
    const CoarseHistogram hist = coarse_grain(state, partition, options);
    curve.points[i] = ScalingPoint{std::log(static_cast<double>(scales[i])),
                                   shannon_entropy(hist), hist.occupied(), scales[i]};
  });
  return curve;
}

IndexRange auto_fit_window(const ScalingCurve& curve, std::optional<std::uint64_t> sample_size,
                           const WindowConfig& config) {
  const auto& pts = curve.points;
  const std::size_t n = pts.size();
  if (n == 0) throw InsufficientDataError("auto_fit_window: empty curve");

  // Undersampling guard: occupied counts are nondecreasing in L, so the
  // guard trims a suffix of scales.
  std::size_t t = n;
  if (sample_size) {
    const double cap = static_cast<double>(*sample_size) / config.undersample_factor;
    t = 0;
    while (t < n && static_cast<double>(pts[t].occupied_cells) <= cap) ++t;
  }
  if (t < config.min_points)
    throw InsufficientDataError("auto_fit_window: undersampling guard leaves too few scales");

  // Saturated tail: all remaining increments below the threshold.
  std::size_t s = t - 1;
  while (s > 0 &&
         pts[s].entropy_nats - pts[s - 1].entropy_nats < config.saturation_increment) {
    --s;
  }
  if (s + 1 < t && t - s >= config.min_points) return IndexRange{s, t};

  // Leading ceiling trim, skipped when the last kept point still rides the
  // ceiling (an absolutely continuous state fills every cell).
  const double full_dim = 2.0 * (curve.dim_d - 1);
  auto riding = [&](std::size_t i) {
    const double ceiling = full_dim * pts[i].neg_log_eps;
    return ceiling > 0.0 && pts[i].entropy_nats > config.ceiling_fraction * ceiling;
  };
  std::size_t a = 0;
  if (!riding(t - 1)) {
    while (a < t && riding(a)) ++a;
  }
  if (t - a < config.min_points)
    throw InsufficientDataError("auto_fit_window: no admissible window");
  return IndexRange{a, t};
}

DimensionFit fit_dimension(const ScalingCurve& curve) {
  if (!curve.fit_window) throw InsufficientDataError("fit_dimension: fit window not set");
  const IndexRange w = *curve.fit_window;
  if (w.end > curve.points.size() || w.begin >= w.end)
    throw InvalidInputError("fit_dimension: window out of range");
  const std::size_t n = w.size();
  if (n < 3) throw InsufficientDataError("fit_dimension: need at least 3 points");

  double sx = 0.0, sy = 0.0;
  for (std::size_t i = w.begin; i < w.end; ++i) {
    sx += curve.points[i].neg_log_eps;
    sy += curve.points[i].entropy_nats;
  }
  const double xbar = sx / static_cast<double>(n);
  const double ybar = sy / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = w.begin; i < w.end; ++i) {
    const double dx = curve.points[i].neg_log_eps - xbar;
    sxx += dx * dx;
    sxy += dx * (curve.points[i].entropy_nats - ybar);
  }
  if (sxx <= 0.0) throw InvalidInputError("fit_dimension: degenerate abscissae");

  const double slope = sxy / sxx;
  const double intercept = ybar - slope * xbar;
  double ssr = 0.0;
  for (std::size_t i = w.begin; i < w.end; ++i) {
    const double r =
        curve.points[i].entropy_nats - (intercept + slope * curve.points[i].neg_log_eps);
    ssr += r * r;
  }
  const double sigma2 = ssr / static_cast<double>(n - 2);
  DimensionFit fit;
  fit.dimension = slope;
  fit.dimensional_entropy = intercept;
  fit.dim_stderr = std::sqrt(std::max(0.0, sigma2 / sxx));
  fit.ent_stderr = std::sqrt(std::max(
      0.0, sigma2 * (1.0 / static_cast<double>(n) + xbar * xbar / sxx)));
  fit.window = w;
  fit.n_points = n;
  return fit;
}

DimensionFit aggregate_fit(const std::vector<ScalingCurve>& curves) {
  if (curves.size() < 2) throw InsufficientDataError("aggregate_fit: need at least 2 curves");
  std::vector<double> xs, ys;
  for (const auto& curve : curves) {
    const DimensionFit own = fit_dimension(curve);
    for (std::size_t i = own.window.begin; i < own.window.end; ++i) {
      xs.push_back(curve.points[i].neg_log_eps);
      ys.push_back(curve.points[i].entropy_nats - own.dimensional_entropy);
    }
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  if (sxx <= 0.0) throw InvalidInputError("aggregate_fit: degenerate abscissae");
  const double slope = sxy / sxx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - slope * xs[i];
    ssr += r * r;
  }
  const double sigma2 = xs.size() > 1 ? ssr / static_cast<double>(xs.size() - 1) : 0.0;
  DimensionFit fit;
  fit.dimension = slope;
  fit.dim_stderr = std::sqrt(std::max(0.0, sigma2 / sxx));
  fit.dimensional_entropy = 0.0;  // removed before pooling
  fit.ent_stderr = 0.0;
  fit.window = IndexRange{0, xs.size()};
  fit.n_points = xs.size();
  return fit;
}

AepEstimate aep_entropy_estimate(const DensityGqs& state, std::uint64_t n_samples,
                                 std::uint64_t seed) {
  if (n_samples == 0) throw InvalidInputError("aep_entropy_estimate: need n_samples >= 1");
  if (!state.has_sampler())
    throw InvalidInputError("aep_entropy_estimate: state has no sampler");
  Rng rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t k = 0; k < n_samples; ++k) {
    const ProjectivePoint z = state.sampler(rng);
    const double q = state.eval(z);
    if (!(q > 0.0)) throw SingularDensityError("aep_entropy_estimate: density vanished at a draw");
    const double x = -std::log(q);
    sum += x;
    sum_sq += x * x;
  }
  AepEstimate est;
  est.n_samples = n_samples;
  est.mean = sum / static_cast<double>(n_samples);
  if (n_samples >= 2) {
    const double var =
        std::max(0.0, (sum_sq - static_cast<double>(n_samples) * est.mean * est.mean) /
                          static_cast<double>(n_samples - 1));
    est.std_error = std::sqrt(var / static_cast<double>(n_samples));
  } else {
    est.std_error = std::numeric_limits<double>::quiet_NaN();
  }
  return est;
}

double curve_entropy_h1(std::span<const BlochPoint> ordered_samples, std::size_t n_bins) {
  if (n_bins == 0) throw InvalidInputError("curve_entropy_h1: need n_bins >= 1");
  if (ordered_samples.size() < n_bins)
    throw InsufficientDataError("curve_entropy_h1: fewer samples than bins");

  const std::size_t n = ordered_samples.size();
  std::vector<double> arc(n, 0.0);  // cumulative FS arclength at each sample
  for (std::size_t i = 1; i < n; ++i)
    arc[i] = arc[i - 1] + fs_segment_length(ordered_samples[i - 1], ordered_samples[i]);
  const double length = arc.back();
  if (!(length > 0.0)) throw InvalidInputError("curve_entropy_h1: zero-length curve");

  std::vector<std::uint64_t> counts(n_bins, 0);
  const double inv_bin = static_cast<double>(n_bins) / length;
  for (std::size_t i = 0; i < n; ++i) {
    auto b = static_cast<std::size_t>(arc[i] * inv_bin);
    if (b >= n_bins) b = n_bins - 1;
    ++counts[b];
  }
  const double bin_length = length / static_cast<double>(n_bins);
  double h = 0.0;
  for (std::uint64_t c : counts) {
    if (c == 0) continue;
    const double mass = static_cast<double>(c) / static_cast<double>(n);
    h -= mass * std::log(mass / bin_length);
  }
  return h;
}

std::vector<BlochPoint> sorted_by_phase(std::span<const BlochPoint> samples) {
  std::vector<BlochPoint> out(samples.begin(), samples.end());
  std::sort(out.begin(), out.end(), [](const BlochPoint& a, const BlochPoint& b) {
    return a.phi < b.phi || (a.phi == b.phi && a.p < b.p);
  });
  return out;
}

}  // namespace gqstate
