#include "gqstate/finite_env.hpp"

#include <cmath>

namespace gqstate {

BipartitePureState::BipartitePureState(Eigen::MatrixXcd amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.rows() < 2 || amplitudes_.cols() < 1)
    throw InvalidInputError("BipartitePureState: need d_S >= 2 and d_E >= 1");
  const double norm2 = amplitudes_.squaredNorm();
  if (norm2 <= 0.0) throw InvalidInputError("BipartitePureState: zero state");
  if (std::abs(norm2 - 1.0) > 1e-10)
    throw InvalidInputError("BipartitePureState: state must be normalized");
}

DiracMixture induced_gqs(const BipartitePureState& state) {
  const auto& psi = state.amplitudes();
  const int d_s = state.dim_system();
  const int d_e = state.dim_env();
  std::vector<WeightedAtom> atoms;
  atoms.reserve(static_cast<std::size_t>(d_e));
  for (int alpha = 0; alpha < d_e; ++alpha) {
    const double weight = psi.col(alpha).squaredNorm();
    if (weight < 1e-15) continue;
    const Eigen::VectorXcd chi = psi.col(alpha) / std::sqrt(weight);
    std::vector<std::complex<double>> amps(static_cast<std::size_t>(d_s));
    for (int i = 0; i < d_s; ++i) amps[static_cast<std::size_t>(i)] = chi(i);
    atoms.push_back({weight, ProjectivePoint::from_amplitudes(amps)});
  }
  return DiracMixture(std::move(atoms));
}

double dimensional_entropy_h0(const DiracMixture& mixture) {
  double h = 0.0;
  for (const auto& atom : mixture.atoms()) {
    if (atom.weight > 0.0) h -= atom.weight * std::log(atom.weight);
  }
  return std::max(0.0, h);
}

}  // namespace gqstate
