#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

#include "gqstate/gqs.hpp"
#include "gqstate/state_space.hpp"

namespace gqstate {

// Extended Baker's Map on the Bloch square.  lambda_a/lambda_b contract the
// two p-branches, beta splits the phase axis (alpha = beta / 2pi).
struct BakerParams {
  double lambda_a = 0.2;
  double lambda_b = 0.2;
  double beta = 0.4 * kPi;

  void validate() const;
};

// Chirikov standard map, renormalized to (p, phi) in [0,1) x [0,2pi).
struct StandardMapParams {
  double k = 0.0;

  void validate() const;
};

BlochPoint baker_step(const BlochPoint& point, const BakerParams& params);

// p' = p + (K/2pi) sin(phi) mod 1, then phi' = phi + 2pi p' mod 2pi.
BlochPoint standard_map_step(const BlochPoint& point, const StandardMapParams& params);

using MapFn = std::function<BlochPoint(const BlochPoint&)>;

// Discards burn_in iterates from the initial point, then records n_steps.
EmpiricalSample iterate(const MapFn& map, const BlochPoint& initial, std::uint64_t n_steps,
                        std::uint64_t burn_in = 1000);

// Analytic information dimension of the Extended Baker's Map attractor:
// 1 + [-a ln a - (1-a) ln(1-a)] / |a ln lambda_a + (1-a) ln lambda_b|,
// with a = beta / 2pi; returns 1 when a is 0 or 1.
double baker_information_dimension(const BakerParams& params);

// The 2x2 unitary |psi'><psi| + |psi'_perp><psi_perp| carrying one map step,
// with |psi_perp(p, phi)> = |psi(1-p, phi+pi)>.
Eigen::Matrix2cd unitary_lift(const BlochPoint& from, const BlochPoint& to);

}  // namespace gqstate
