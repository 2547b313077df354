#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gqstate/estimator.hpp"
#include "gqstate/finite_env.hpp"

namespace gqstate {

// Defect Heisenberg chain: one system qubit coupled to an open chain of N_E
// environment qubits,
//   H = B.tau + sum_{k=1}^{N_E-1} (J sigma_k.sigma_{k+1} + B.sigma_k) + J tau.sigma_1.
// The field sum stops at N_E-1: the last environment qubit carries no field.
struct SpinChainSpec {
  int n_env = 10;
  std::array<double, 3> b_field = {0.0, 0.0, 0.5};
  double coupling = 1.0;

  void validate() const;
  int n_qubits() const { return n_env + 1; }
  std::uint64_t dimension() const { return std::uint64_t{1} << n_qubits(); }
};

// The chain Hamiltonian as structured Pauli terms: a precomputed diagonal
// (zz exchange plus z fields), exchange bonds acting as amplitude-2J swaps on
// antiparallel pairs, and single-qubit transverse-field flips.  apply() is
// the only operation Lanczos needs; to_dense() materializes small instances
// for cross-checks.  Qubit 0 (the system) sits at the most significant bit.
class SparseHamiltonian {
 public:
  explicit SparseHamiltonian(const SpinChainSpec& spec);

  const SpinChainSpec& spec() const { return spec_; }
  std::uint64_t dimension() const { return dim_; }

  void apply(const std::complex<double>* in, std::complex<double>* out) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  Eigen::MatrixXcd to_dense() const;  // dim <= 4096 only

 private:
  struct Bond {
    std::uint64_t mask;  // the two exchanged bit positions
    double amp;          // 2J
  };
  struct Flip {
    std::uint64_t mask;  // single bit position
    double bx;
    double by;
  };

  SpinChainSpec spec_;
  std::uint64_t dim_;
  std::vector<double> diag_;
  std::vector<Bond> bonds_;
  std::vector<Flip> flips_;
};

struct LanczosSettings {
  double tol = 1e-10;         // residual ||Hv - Ev||
  int max_iter = 4000;        // total matrix-vector products
  std::uint64_t seed = 7;     // start-vector seed
  std::size_t max_basis = 0;  // 0 = derive from the memory budget
};

struct GroundStateResult {
  double energy = 0.0;
  Eigen::VectorXcd vector;
  double residual = 0.0;
  int iterations = 0;
  bool degenerate = false;  // two lowest Ritz values closer than 1e-8
};

// Lowest eigenpair by explicitly restarted Lanczos with full
// reorthogonalization inside each block.  Deterministic for a fixed seed.
// Throws ConvergenceError (carrying the best residual) on failure.
GroundStateResult ground_state(const SparseHamiltonian& hamiltonian,
                               const LanczosSettings& settings = {});

// Reshapes a chain eigenvector into the 2 x 2^{N_E} system-environment
// amplitude matrix (environment in its computational product basis) and
// builds the induced Dirac mixture on CP^1.
DiracMixture chain_gqs(const Eigen::VectorXcd& ground, const SpinChainSpec& spec);

// <sum_q sigma_z^(q)> of a chain state.
double sz_total_expectation(const Eigen::VectorXcd& v, int n_qubits);

struct SweepSettings {
  std::array<double, 3> b_field = {0.0, 0.0, 0.5};
  double coupling = 1.0;
  std::vector<std::uint32_t> scales = dyadic_scales(1, 12);
  CoarseGrainOptions coarse;
  WindowConfig window;
  LanczosSettings lanczos;
};

struct SweepSizeResult {
  int n_env = 0;
  double energy = 0.0;
  double residual = 0.0;
  bool degenerate = false;
  std::size_t n_atoms = 0;
  double h0_nats = 0.0;
  double s_vn_nats = 0.0;
  ScalingCurve curve;
  DimensionFit fit;
  std::optional<std::string> error;  // set when this size failed; other fields empty
};

struct EntropyRateFit {
  double rate = 0.0;  // nats per environment qubit
  double std_error = 0.0;
};

struct SweepReport {
  std::vector<SweepSizeResult> sizes;
  std::optional<DimensionFit> pooled;
  std::optional<EntropyRateFit> entropy_rate;
};

// Ground state, induced GQS, scaling curve, and per-size dimension fit for
// each environment size; pooled collapsed fit and the H_0(N_E) growth rate.
// Failures are recorded per size and the remaining sizes still run.
SweepReport thermodynamic_sweep(const std::vector<int>& n_env_values,
                                const SweepSettings& settings = {});

}  // namespace gqstate
