#pragma once

#include <Eigen/Dense>

#include "gqstate/gqs.hpp"

namespace gqstate {

// Pure state of a system-environment pair, stored as the amplitude matrix
// psi_{i alpha} (d_S rows, d_E columns) in fixed product bases.
class BipartitePureState {
 public:
  explicit BipartitePureState(Eigen::MatrixXcd amplitudes);

  const Eigen::MatrixXcd& amplitudes() const { return amplitudes_; }
  int dim_system() const { return static_cast<int>(amplitudes_.rows()); }
  int dim_env() const { return static_cast<int>(amplitudes_.cols()); }

 private:
  Eigen::MatrixXcd amplitudes_;
};

// Environment-induced geometric quantum state: one atom per environment
// basis state, weight p_alpha = sum_i |psi_{i alpha}|^2 and position given by
// the normalized column.  Columns with weight < 1e-15 are dropped.
DiracMixture induced_gqs(const BipartitePureState& state);

// Dimension-0 geometric entropy of a Dirac mixture: Shannon entropy of the
// atom weights, in nats.  Satisfies S_vN(rho_S) <= H_0 <= ln d_E.
double dimensional_entropy_h0(const DiracMixture& mixture);

}  // namespace gqstate
