#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gqstate/common.hpp"
#include "gqstate/state_space.hpp"

namespace gqstate {

struct WeightedAtom {
  double weight;
  ProjectivePoint point;
};

// A geometric quantum state with finite support: weighted pure-state atoms.
// Atoms with weight < 1e-15 are dropped at construction and the remaining
// weights renormalized to sum exactly to 1.
class DiracMixture {
 public:
  explicit DiracMixture(std::vector<WeightedAtom> atoms);

  const std::vector<WeightedAtom>& atoms() const { return atoms_; }
  int dim() const { return atoms_.front().point.dim(); }
  std::size_t size() const { return atoms_.size(); }

 private:
  std::vector<WeightedAtom> atoms_;
};

// Equal-weight point sample of a geometric quantum state (i.i.d. draws or a
// trajectory).  Stored flat: 2(D-1) coordinates per row, p_1..p_{D-1} then
// phi_1..phi_{D-1}.
class EmpiricalSample {
 public:
  explicit EmpiricalSample(int dim_d = 2);

  void add(const BlochPoint& point);
  void add(const ProjectivePoint& point);
  void reserve(std::size_t n) { coords_.reserve(n * static_cast<std::size_t>(stride_)); }

  int dim() const { return dim_d_; }
  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(stride_); }
  bool empty() const { return coords_.empty(); }

  ProjectivePoint point(std::size_t i) const;
  BlochPoint bloch(std::size_t i) const;
  std::span<const double> row(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(stride_),
            static_cast<std::size_t>(stride_)};
  }

 private:
  int dim_d_;
  int stride_;
  std::vector<double> coords_;
};

// Absolutely continuous geometric quantum state given by a density with
// respect to the normalized Fubini-Study measure, optionally with an exact
// sampler.  bloch_density is a D = 2 fast path used by the coarse-graining
// quadrature; ref_name/ref_params make the density serializable by reference.
struct DensityGqs {
  int dim_d = 2;
  std::function<double(const ProjectivePoint&)> density;
  std::function<ProjectivePoint(Rng&)> sampler;
  std::function<double(double p, double phi)> bloch_density;
  std::string ref_name;
  std::map<std::string, double> ref_params;

  int dim() const { return dim_d; }
  bool has_sampler() const { return static_cast<bool>(sampler); }
  double eval(const ProjectivePoint& z) const { return density(z); }
};

// Uniform measure on CP^{D-1} (density identically 1); sampler provided for D = 2.
DensityGqs uniform_density(int dim_d = 2);

using GeometricQuantumState = std::variant<DiracMixture, DensityGqs, EmpiricalSample>;

int state_dim(const GeometricQuantumState& state);

// Coarse-grained state: probability per occupied partition cell, entries
// sorted by packed cell key so downstream reductions are order-deterministic.
struct CoarseHistogram {
  Partition partition;
  std::vector<std::pair<std::uint64_t, double>> entries;

  double total() const;
  std::size_t occupied() const { return entries.size(); }
};

struct CoarseGrainOptions {
  int density_subgrid = 4;           // midpoint sub-grid per cell and axis (D = 2 quadrature)
  std::uint64_t mc_samples = 0;      // > 0 forces Monte Carlo via the sampler
  std::uint64_t mc_seed = 0x9e3779b97f4a7c15ULL;
};

CoarseHistogram coarse_grain(const DiracMixture& state, const Partition& partition,
                             const CoarseGrainOptions& options = {});
CoarseHistogram coarse_grain(const EmpiricalSample& state, const Partition& partition,
                             const CoarseGrainOptions& options = {});
CoarseHistogram coarse_grain(const DensityGqs& state, const Partition& partition,
                             const CoarseGrainOptions& options = {});
CoarseHistogram coarse_grain(const GeometricQuantumState& state, const Partition& partition,
                             const CoarseGrainOptions& options = {});

// rho = sum_a w_a |chi_a><chi_a|; Hermitian, unit trace, PSD.
Eigen::MatrixXcd reduced_density_matrix(const DiracMixture& state);

// -sum lambda ln lambda over the eigenvalues of rho, in nats.  Throws
// InvalidStateError if rho is non-Hermitian, non-unit-trace, or not PSD
// within 1e-8.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

}  // namespace gqstate
