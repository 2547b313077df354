#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "gqstate/common.hpp"

namespace gqstate {

// A pure state of a D-level system in probability + phase coordinates on
// CP^{D-1}.  probs holds p_0..p_{D-1} (sum 1), phases holds phi_1..phi_{D-1}
// in [0, 2pi); the phase of component 0 is gauged to zero.
class ProjectivePoint {
 public:
  ProjectivePoint(std::vector<double> probs, std::vector<double> phases);

  // Builds the point from a (not necessarily normalized) amplitude vector.
  // Components with |z|^2 < 1e-12 get phase 0; the gauge reference is the
  // first component with non-negligible weight.
  static ProjectivePoint from_amplitudes(std::span<const std::complex<double>> amps);

  int dim() const { return static_cast<int>(probs_.size()); }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<double>& phases() const { return phases_; }

  std::vector<std::complex<double>> amplitudes() const;

 private:
  std::vector<double> probs_;
  std::vector<double> phases_;
};

// Qubit pure state on the Bloch square: |psi> = sqrt(1-p)|0> + sqrt(p) e^{i phi}|1>.
struct BlochPoint {
  double p = 0.0;
  double phi = 0.0;

  BlochPoint() = default;
  BlochPoint(double p_in, double phi_in);

  ProjectivePoint to_projective() const;
  std::array<std::complex<double>, 2> amplitudes() const;
};

// Uniform product partition of CP^{D-1}: L bins per simplex axis (p_1..p_{D-1})
// and L bins per torus axis (phi_1..phi_{D-1}), giving L^{2(D-1)} cells of
// scale epsilon = 1/L.
struct Partition {
  Partition(int dim_d, std::uint32_t cells_per_axis);

  int dim_d;
  std::uint32_t cells_per_axis;

  double epsilon() const { return 1.0 / static_cast<double>(cells_per_axis); }
  int axes() const { return 2 * (dim_d - 1); }
  std::uint64_t cell_count() const;
};

// Total Fubini-Study volume of CP^{D-1}: pi^{D-1} / (D-1)!.
double total_fs_volume(int dim_d);

// Normalized FS measure of one partition cell; exact for D = 2 (1/L^2),
// nominal cell volume for D > 2 where simplex-boundary cells are clipped.
double fs_cell_measure(const Partition& partition);

// Multi-index (j_1..j_{D-1}, k_1..k_{D-1}) of the cell containing the point.
// Bins are half-open [a, b) with the top boundary clamped into the last bin.
std::vector<std::uint32_t> cell_index(const ProjectivePoint& point, const Partition& partition);

// Mixed-radix packing of cell_index into a single key (row-major, j's first).
std::uint64_t cell_key(const ProjectivePoint& point, const Partition& partition);
std::uint64_t pack_cell_index(std::span<const std::uint32_t> index, const Partition& partition);

// D = 2 fast path: key = j * L + k.
inline std::uint64_t cell_key_bloch(double p, double phi, std::uint32_t cells_per_axis) {
  const auto L = static_cast<std::uint64_t>(cells_per_axis);
  auto j = static_cast<std::int64_t>(std::floor(p * static_cast<double>(L)));
  auto k = static_cast<std::int64_t>(std::floor(phi * static_cast<double>(L) / kTwoPi));
  if (j < 0) j = 0;
  if (j >= static_cast<std::int64_t>(L)) j = static_cast<std::int64_t>(L) - 1;
  if (k < 0) k = 0;
  if (k >= static_cast<std::int64_t>(L)) k = static_cast<std::int64_t>(L) - 1;
  return static_cast<std::uint64_t>(j) * L + static_cast<std::uint64_t>(k);
}

// sqrt(det g_FS) in (p, phi) coordinates, defined on p in (0, 1).  The qubit
// FS metric is ds^2 = dp^2 / (4p(1-p)) + p(1-p) dphi^2, so this equals 1/2.
double fs_area_element(double p);

// FS length of one polyline segment, midpoint-evaluated; falls back to the
// theta parametrization (p = sin^2(theta/2)) for segments at or through poles.
double fs_segment_length(const BlochPoint& a, const BlochPoint& b);

// Polyline Fubini-Study arclength of an ordered list of qubit states.
double fs_curve_length(std::span<const BlochPoint> points);

}  // namespace gqstate
