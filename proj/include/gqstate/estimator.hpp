#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gqstate/gqs.hpp"

namespace gqstate {

// Discrete Shannon entropy of a coarse-grained state, in nats (0 ln 0 := 0).
double shannon_entropy(const CoarseHistogram& histogram);

struct ScalingPoint {
  double neg_log_eps = 0.0;       // ln L for the partition with L cells per axis
  double entropy_nats = 0.0;      // H(Z^eps)
  std::uint64_t occupied_cells = 0;
  std::uint32_t cells_per_axis = 0;
};

struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;  // half-open
  std::size_t size() const { return end - begin; }
};

// The entropy-versus-scale curve H(Z^eps) against -ln eps, one point per
// partition refinement, plus the window the dimension fit runs over.
struct ScalingCurve {
  int dim_d = 2;
  std::vector<ScalingPoint> points;
  std::optional<IndexRange> fit_window;
};

// L = 2^lo .. 2^hi.
std::vector<std::uint32_t> dyadic_scales(int lo_exp = 1, int hi_exp = 12);

// Coarse-grains the state at each scale (strictly increasing L values) and
// records entropies and occupied-cell counts.  Scales run in parallel.
ScalingCurve scaling_curve(const GeometricQuantumState& state,
                           const std::vector<std::uint32_t>& scales,
                           const CoarseGrainOptions& options = {});

struct WindowConfig {
  double saturation_increment = 1e-6;  // plateau detection on successive entropies
  double ceiling_fraction = 0.95;      // leading points riding ln(cell count)
  double undersample_factor = 10.0;    // drop scales with occupied > N / factor
  std::size_t min_points = 3;
};

// Picks the fit window.  Trailing scales in the undersampling regime are
// dropped first (when the sample size is known).  A saturated tail - all
// remaining entropy increments below the threshold - is itself the window
// (the dimension-0 regime).  Otherwise leading points riding the cell-count
// ceiling are trimmed, unless the whole curve rides it (a full-dimension
// state, where the ceiling is the signal).
IndexRange auto_fit_window(const ScalingCurve& curve,
                           std::optional<std::uint64_t> sample_size = std::nullopt,
                           const WindowConfig& config = {});

struct DimensionFit {
  double dimension = 0.0;            // slope of H against -ln eps
  double dim_stderr = 0.0;
  double dimensional_entropy = 0.0;  // intercept at -ln eps = 0, nats
  double ent_stderr = 0.0;
  IndexRange window;
  std::size_t n_points = 0;
};

// Ordinary least squares over the curve's fit window (>= 3 points).
DimensionFit fit_dimension(const ScalingCurve& curve);

// Pools several curves after removing each curve's own intercept, then
// regresses the collapsed points through the origin.
DimensionFit aggregate_fit(const std::vector<ScalingCurve>& curves);

struct AepEstimate {
  double mean = 0.0;       // average of -ln q over the draws
  double std_error = 0.0;  // sample sigma / sqrt(n); NaN for n = 1
  std::uint64_t n_samples = 0;
};

// Monte-Carlo estimate of the dimensional entropy of an absolutely
// continuous state: mean of -ln q(z_k) over n i.i.d. draws from its sampler.
AepEstimate aep_entropy_estimate(const DensityGqs& state, std::uint64_t n_samples,
                                 std::uint64_t seed);

// Entropy of a distribution supported on a 1D curve, estimated from an
// ordered sample: the polyline is split into n_bins arcs of equal FS length,
// the density per arc is count/(N * arc length), and the result is
// -sum f_i ln f_i * l_i.  Converges to ln(curve length) for uniform samples.
double curve_entropy_h1(std::span<const BlochPoint> ordered_samples, std::size_t n_bins);

// Orders qubit points by phase, for samples on phase-monotone curves.
std::vector<BlochPoint> sorted_by_phase(std::span<const BlochPoint> samples);

}  // namespace gqstate
