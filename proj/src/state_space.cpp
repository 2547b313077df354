#include "gqstate/state_space.hpp"

#include <algorithm>
#include <cmath>

namespace gqstate {

namespace {

constexpr double kProbSumTol = 1e-12;
constexpr double kPhaseWeightFloor = 1e-12;  // below this, a component phase is undefined

}  // namespace

ProjectivePoint::ProjectivePoint(std::vector<double> probs, std::vector<double> phases)
    : probs_(std::move(probs)), phases_(std::move(phases)) {
  if (probs_.size() < 2) throw InvalidInputError("ProjectivePoint: need dim >= 2");
  if (phases_.size() + 1 != probs_.size())
    throw InvalidInputError("ProjectivePoint: phases must have dim-1 entries");
  double sum = 0.0;
  for (double& p : probs_) {
    if (p < -kProbSumTol || p > 1.0 + kProbSumTol)
      throw InvalidInputError("ProjectivePoint: probability out of [0,1]");
    p = std::clamp(p, 0.0, 1.0);
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbSumTol)
    throw InvalidInputError("ProjectivePoint: probabilities must sum to 1");
  for (double& phi : phases_) phi = wrap_angle(phi);
}

ProjectivePoint ProjectivePoint::from_amplitudes(std::span<const std::complex<double>> amps) {
  if (amps.size() < 2) throw InvalidInputError("from_amplitudes: need dim >= 2");
  double norm2 = 0.0;
  for (const auto& z : amps) norm2 += std::norm(z);
  if (norm2 <= 0.0) throw InvalidInputError("from_amplitudes: zero vector");

  std::vector<double> probs(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) probs[i] = std::norm(amps[i]) / norm2;

  // Gauge reference: first component carrying weight.
  double ref = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (probs[i] >= kPhaseWeightFloor) {
      ref = std::arg(amps[i]);
      break;
    }
  }
  std::vector<double> phases(amps.size() - 1);
  for (std::size_t i = 1; i < amps.size(); ++i) {
    phases[i - 1] = probs[i] < kPhaseWeightFloor ? 0.0 : wrap_angle(std::arg(amps[i]) - ref);
  }
  return ProjectivePoint(std::move(probs), std::move(phases));
}

std::vector<std::complex<double>> ProjectivePoint::amplitudes() const {
  std::vector<std::complex<double>> out(probs_.size());
  out[0] = std::sqrt(probs_[0]);
  for (std::size_t i = 1; i < probs_.size(); ++i)
    out[i] = std::polar(std::sqrt(probs_[i]), phases_[i - 1]);
  return out;
}

BlochPoint::BlochPoint(double p_in, double phi_in) : p(p_in), phi(wrap_angle(phi_in)) {
  if (p < -kProbSumTol || p > 1.0 + kProbSumTol)
    throw InvalidInputError("BlochPoint: p out of [0,1]");
  p = std::clamp(p, 0.0, 1.0);
}

ProjectivePoint BlochPoint::to_projective() const {
  return ProjectivePoint({1.0 - p, p}, {phi});
}

std::array<std::complex<double>, 2> BlochPoint::amplitudes() const {
  return {std::complex<double>(std::sqrt(1.0 - p), 0.0), std::polar(std::sqrt(p), phi)};
}

Partition::Partition(int dim_d_in, std::uint32_t cells_per_axis_in)
    : dim_d(dim_d_in), cells_per_axis(cells_per_axis_in) {
  if (dim_d < 2) throw InvalidInputError("Partition: dim_d must be >= 2");
  if (cells_per_axis < 1) throw InvalidInputError("Partition: cells_per_axis must be >= 1");
  // Cell keys are packed into 64 bits.
  long double count = 1.0L;
  for (int a = 0; a < axes(); ++a) count *= static_cast<long double>(cells_per_axis);
  if (count > 9.2e18L) throw InvalidInputError("Partition: too many cells for 64-bit keys");
}

std::uint64_t Partition::cell_count() const {
  std::uint64_t count = 1;
  for (int a = 0; a < axes(); ++a) count *= cells_per_axis;
  return count;
}

double total_fs_volume(int dim_d) {
  if (dim_d < 2) throw InvalidInputError("total_fs_volume: dim_d must be >= 2");
  double v = 1.0;
  for (int k = 1; k <= dim_d - 1; ++k) v *= kPi / static_cast<double>(k);
  return v;
}

double fs_cell_measure(const Partition& partition) {
  double m = 1.0;
  const double eps = partition.epsilon();
  for (int a = 0; a < partition.axes(); ++a) m *= eps;
  return m;
}

namespace {

inline std::uint32_t bin_of(double x, double width_units, std::uint32_t L) {
  auto b = static_cast<std::int64_t>(std::floor(x * width_units));
  if (b < 0) b = 0;
  if (b >= static_cast<std::int64_t>(L)) b = static_cast<std::int64_t>(L) - 1;
  return static_cast<std::uint32_t>(b);
}

}  // namespace

std::vector<std::uint32_t> cell_index(const ProjectivePoint& point, const Partition& partition) {
  if (point.dim() != partition.dim_d)
    throw InvalidInputError("cell_index: point/partition dimension mismatch");
  const std::uint32_t L = partition.cells_per_axis;
  const int n = partition.dim_d - 1;
  std::vector<std::uint32_t> idx(2 * n);
  for (int a = 0; a < n; ++a)
    idx[a] = bin_of(point.probs()[a + 1], static_cast<double>(L), L);
  for (int a = 0; a < n; ++a)
    idx[n + a] = bin_of(point.phases()[a], static_cast<double>(L) / kTwoPi, L);
  return idx;
}

std::uint64_t pack_cell_index(std::span<const std::uint32_t> index, const Partition& partition) {
  if (static_cast<int>(index.size()) != partition.axes())
    throw InvalidInputError("pack_cell_index: wrong index length");
  std::uint64_t key = 0;
  for (std::uint32_t v : index) key = key * partition.cells_per_axis + v;
  return key;
}

std::uint64_t cell_key(const ProjectivePoint& point, const Partition& partition) {
  const auto idx = cell_index(point, partition);
  return pack_cell_index(idx, partition);
}

double fs_area_element(double p) {
  if (p <= 0.0 || p >= 1.0) throw InvalidInputError("fs_area_element: p must be in (0,1)");
  const double g_pp = 1.0 / (4.0 * p * (1.0 - p));
  const double g_phiphi = p * (1.0 - p);
  return std::sqrt(g_pp * g_phiphi);
}

double fs_segment_length(const BlochPoint& a, const BlochPoint& b) {
  const double dp = b.p - a.p;
  const double dphi = angle_diff(b.phi, a.phi);
  const double pm = 0.5 * (a.p + b.p);
  const double ga = a.p * (1.0 - a.p);
  const double gb = b.p * (1.0 - b.p);
  const double gm = pm * (1.0 - pm);
  if (std::min({ga, gb, gm}) > 1e-6) {
    return std::sqrt(dp * dp / (4.0 * gm) + gm * dphi * dphi);
  }
  // Pole region: the round-metric form stays finite.
  const double ta = 2.0 * std::asin(std::sqrt(std::clamp(a.p, 0.0, 1.0)));
  const double tb = 2.0 * std::asin(std::sqrt(std::clamp(b.p, 0.0, 1.0)));
  const double dth = tb - ta;
  const double s = std::sin(0.5 * (ta + tb));
  return 0.5 * std::sqrt(dth * dth + s * s * dphi * dphi);
}

double fs_curve_length(std::span<const BlochPoint> points) {
  if (points.empty()) throw InvalidInputError("fs_curve_length: empty point list");
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i)
    total += fs_segment_length(points[i - 1], points[i]);
  return total;
}

}  // namespace gqstate
