#include "gqstate/gqs.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace gqstate {

namespace {

constexpr double kAtomWeightFloor = 1e-15;
constexpr double kWeightSumTol = 1e-10;

std::vector<std::pair<std::uint64_t, double>> sorted_entries(
    std::unordered_map<std::uint64_t, double>&& acc) {
  std::vector<std::pair<std::uint64_t, double>> entries(acc.begin(), acc.end());
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return entries;
}

}  // namespace

DiracMixture::DiracMixture(std::vector<WeightedAtom> atoms) {
  if (atoms.empty()) throw InvalidInputError("DiracMixture: no atoms");
  const int d = atoms.front().point.dim();
  double sum = 0.0;
  for (const auto& a : atoms) {
    if (a.weight < 0.0) throw InvalidInputError("DiracMixture: negative weight");
    if (a.point.dim() != d) throw InvalidInputError("DiracMixture: mixed dimensions");
    sum += a.weight;
  }
  if (std::abs(sum - 1.0) > kWeightSumTol)
    throw InvalidInputError("DiracMixture: weights must sum to 1");

  atoms_.reserve(atoms.size());
  double kept = 0.0;
  for (auto& a : atoms) {
    if (a.weight < kAtomWeightFloor) continue;
    kept += a.weight;
    atoms_.push_back(std::move(a));
  }
  if (atoms_.empty()) throw InvalidInputError("DiracMixture: all atoms below weight floor");
  for (auto& a : atoms_) a.weight /= kept;
}

EmpiricalSample::EmpiricalSample(int dim_d) : dim_d_(dim_d), stride_(2 * (dim_d - 1)) {
  if (dim_d < 2) throw InvalidInputError("EmpiricalSample: dim_d must be >= 2");
}

void EmpiricalSample::add(const BlochPoint& point) {
  if (dim_d_ != 2) throw InvalidInputError("EmpiricalSample: BlochPoint needs dim 2");
  coords_.push_back(point.p);
  coords_.push_back(point.phi);
}

void EmpiricalSample::add(const ProjectivePoint& point) {
  if (point.dim() != dim_d_) throw InvalidInputError("EmpiricalSample: dimension mismatch");
  for (int a = 1; a < dim_d_; ++a) coords_.push_back(point.probs()[a]);
  for (int a = 0; a < dim_d_ - 1; ++a) coords_.push_back(point.phases()[a]);
}

ProjectivePoint EmpiricalSample::point(std::size_t i) const {
  const auto r = row(i);
  const int n = dim_d_ - 1;
  std::vector<double> probs(static_cast<std::size_t>(dim_d_));
  double rest = 0.0;
  for (int a = 0; a < n; ++a) {
    probs[static_cast<std::size_t>(a) + 1] = r[static_cast<std::size_t>(a)];
    rest += r[static_cast<std::size_t>(a)];
  }
  probs[0] = 1.0 - rest;
  std::vector<double> phases(r.begin() + n, r.end());
  return ProjectivePoint(std::move(probs), std::move(phases));
}

BlochPoint EmpiricalSample::bloch(std::size_t i) const {
  if (dim_d_ != 2) throw InvalidInputError("EmpiricalSample: bloch() needs dim 2");
  const auto r = row(i);
  return BlochPoint(r[0], r[1]);
}

DensityGqs uniform_density(int dim_d) {
  if (dim_d < 2) throw InvalidInputError("uniform_density: dim_d must be >= 2");
  DensityGqs out;
  out.dim_d = dim_d;
  out.density = [](const ProjectivePoint&) { return 1.0; };
  out.ref_name = "uniform";
  if (dim_d == 2) {
    out.bloch_density = [](double, double) { return 1.0; };
    out.sampler = [](Rng& rng) {
      std::uniform_real_distribution<double> up(0.0, 1.0);
      std::uniform_real_distribution<double> uphi(0.0, kTwoPi);
      return BlochPoint(up(rng), uphi(rng)).to_projective();
    };
  }
  return out;
}

int state_dim(const GeometricQuantumState& state) {
  return std::visit([](const auto& s) { return s.dim(); }, state);
}

double CoarseHistogram::total() const {
  double t = 0.0;
  for (const auto& [key, p] : entries) t += p;
  return t;
}

CoarseHistogram coarse_grain(const DiracMixture& state, const Partition& partition,
                             const CoarseGrainOptions&) {
  if (state.dim() != partition.dim_d)
    throw InvalidInputError("coarse_grain: state/partition dimension mismatch");
  std::unordered_map<std::uint64_t, double> acc;
  acc.reserve(state.size());
  for (const auto& atom : state.atoms()) acc[cell_key(atom.point, partition)] += atom.weight;
  return CoarseHistogram{partition, sorted_entries(std::move(acc))};
}

CoarseHistogram coarse_grain(const EmpiricalSample& state, const Partition& partition,
                             const CoarseGrainOptions&) {
  if (state.dim() != partition.dim_d)
    throw InvalidInputError("coarse_grain: state/partition dimension mismatch");
  if (state.empty()) throw InvalidInputError("coarse_grain: empty sample");
  const std::size_t n = state.size();
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  if (partition.dim_d == 2) {
    const std::uint32_t L = partition.cells_per_axis;
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = state.row(i);
      ++counts[cell_key_bloch(r[0], r[1], L)];
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) ++counts[cell_key(state.point(i), partition)];
  }
  std::vector<std::pair<std::uint64_t, double>> entries;
  entries.reserve(counts.size());
  const double inv_n = 1.0 / static_cast<double>(n);
  for (const auto& [key, c] : counts) entries.emplace_back(key, static_cast<double>(c) * inv_n);
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return CoarseHistogram{partition, std::move(entries)};
}

namespace {

CoarseHistogram coarse_grain_mc(const DensityGqs& state, const Partition& partition,
                                std::uint64_t n_samples, std::uint64_t seed) {
  Rng rng(seed);
  EmpiricalSample sample(partition.dim_d);
  sample.reserve(n_samples);
  for (std::uint64_t i = 0; i < n_samples; ++i) sample.add(state.sampler(rng));
  return coarse_grain(sample, partition, {});
}

}  // namespace

CoarseHistogram coarse_grain(const DensityGqs& state, const Partition& partition,
                             const CoarseGrainOptions& options) {
  if (state.dim_d != partition.dim_d)
    throw InvalidInputError("coarse_grain: state/partition dimension mismatch");
  if (!state.density) throw InvalidInputError("coarse_grain: density not set");

  if (options.mc_samples > 0) {
    if (!state.has_sampler())
      throw UnsupportedIntegrationError("coarse_grain: Monte Carlo requested without sampler");
    return coarse_grain_mc(state, partition, options.mc_samples, options.mc_seed);
  }
  if (partition.dim_d != 2) {
    if (state.has_sampler()) return coarse_grain_mc(state, partition, 1'000'000, options.mc_seed);
    throw UnsupportedIntegrationError(
        "coarse_grain: density quadrature only implemented for dim 2 (provide a sampler)");
  }

  const std::uint32_t L = partition.cells_per_axis;
  const int s = std::max(1, options.density_subgrid);
  const double cell_p = 1.0 / static_cast<double>(L);
  const double cell_phi = kTwoPi / static_cast<double>(L);
  const double sub_p = cell_p / static_cast<double>(s);
  const double sub_phi = cell_phi / static_cast<double>(s);
  // Normalized FS measure of one sub-cell: (sub_p * sub_phi) / 2pi.
  const double sub_measure = sub_p * sub_phi / kTwoPi;

  const bool fast = static_cast<bool>(state.bloch_density);
  std::vector<std::pair<std::uint64_t, double>> entries;
  entries.reserve(std::min<std::uint64_t>(partition.cell_count(), 1u << 20));
  double total = 0.0;
  for (std::uint32_t j = 0; j < L; ++j) {
    for (std::uint32_t k = 0; k < L; ++k) {
      double mass = 0.0;
      for (int a = 0; a < s; ++a) {
        const double p = (static_cast<double>(j) * static_cast<double>(s) + a + 0.5) * sub_p;
        for (int b = 0; b < s; ++b) {
          const double phi =
              (static_cast<double>(k) * static_cast<double>(s) + b + 0.5) * sub_phi;
          const double q =
              fast ? state.bloch_density(p, phi) : state.density(BlochPoint(p, phi).to_projective());
          if (q > 0.0) mass += q;
        }
      }
      mass *= sub_measure;
      if (mass > 0.0) {
        entries.emplace_back(static_cast<std::uint64_t>(j) * L + k, mass);
        total += mass;
      }
    }
  }
  if (total <= 0.0) throw InvalidInputError("coarse_grain: density vanishes on the partition");
  for (auto& [key, p] : entries) p /= total;
  return CoarseHistogram{partition, std::move(entries)};
}

CoarseHistogram coarse_grain(const GeometricQuantumState& state, const Partition& partition,
                             const CoarseGrainOptions& options) {
  return std::visit([&](const auto& s) { return coarse_grain(s, partition, options); }, state);
}

Eigen::MatrixXcd reduced_density_matrix(const DiracMixture& state) {
  const int d = state.dim();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& atom : state.atoms()) {
    const auto amps = atom.point.amplitudes();
    Eigen::VectorXcd v(d);
    for (int i = 0; i < d; ++i) v(i) = amps[static_cast<std::size_t>(i)];
    rho.noalias() += atom.weight * v * v.adjoint();
  }
  return rho;
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  constexpr double tol = 1e-8;
  if (rho.rows() != rho.cols()) throw InvalidStateError("von_neumann_entropy: not square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw InvalidStateError("von_neumann_entropy: not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
    throw InvalidStateError("von_neumann_entropy: trace must be 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (lambda < -tol) throw InvalidStateError("von_neumann_entropy: negative eigenvalue");
    if (lambda > 0.0) h -= lambda * std::log(lambda);
  }
  return std::max(0.0, h);
}

}  // namespace gqstate
