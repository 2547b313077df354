#include "gqstate/dynamics.hpp"

#include <cmath>

namespace gqstate {

void BakerParams::validate() const {
  if (!(lambda_a > 0.0 && lambda_a <= lambda_b && lambda_b <= 0.5))
    throw InvalidInputError("BakerParams: need 0 < lambda_a <= lambda_b <= 1/2");
  if (!(beta > 0.0 && beta <= kPi)) throw InvalidInputError("BakerParams: need 0 < beta <= pi");
}

void StandardMapParams::validate() const {
  if (k < 0.0) throw InvalidInputError("StandardMapParams: need K >= 0");
}

BlochPoint baker_step(const BlochPoint& point, const BakerParams& params) {
  params.validate();
  if (point.phi <= params.beta) {
    return BlochPoint(params.lambda_a * point.p,
                      wrap_angle(kTwoPi * point.phi / params.beta));
  }
  return BlochPoint(0.5 + params.lambda_b * point.p,
                    wrap_angle(kTwoPi * (point.phi - params.beta) / (kTwoPi - params.beta)));
}

BlochPoint standard_map_step(const BlochPoint& point, const StandardMapParams& params) {
  params.validate();
  double p = point.p + params.k / kTwoPi * std::sin(point.phi);
  p -= std::floor(p);
  const double phi = wrap_angle(point.phi + kTwoPi * p);
  return BlochPoint(p, phi);
}

EmpiricalSample iterate(const MapFn& map, const BlochPoint& initial, std::uint64_t n_steps,
                        std::uint64_t burn_in) {
  if (n_steps < 1) throw InvalidInputError("iterate: need n_steps >= 1");
  BlochPoint x = initial;
  for (std::uint64_t i = 0; i < burn_in; ++i) x = map(x);
  EmpiricalSample sample(2);
  sample.reserve(n_steps);
  for (std::uint64_t i = 0; i < n_steps; ++i) {
    x = map(x);
    sample.add(x);
  }
  return sample;
}

double baker_information_dimension(const BakerParams& params) {
  params.validate();
  const double alpha = params.beta / kTwoPi;
  if (alpha <= 0.0 || alpha >= 1.0) return 1.0;
  const double numer = -alpha * std::log(alpha) - (1.0 - alpha) * std::log(1.0 - alpha);
  const double denom =
      std::abs(alpha * std::log(params.lambda_a) + (1.0 - alpha) * std::log(params.lambda_b));
  return 1.0 + numer / denom;
}

namespace {

Eigen::Vector2cd ket(const BlochPoint& x) {
  const auto amps = x.amplitudes();
  return Eigen::Vector2cd(amps[0], amps[1]);
}

BlochPoint orthogonal(const BlochPoint& x) {
  return BlochPoint(1.0 - x.p, wrap_angle(x.phi + kPi));
}

}  // namespace

Eigen::Matrix2cd unitary_lift(const BlochPoint& from, const BlochPoint& to) {
  const Eigen::Vector2cd a = ket(from);
  const Eigen::Vector2cd b = ket(to);
  const Eigen::Vector2cd a_perp = ket(orthogonal(from));
  const Eigen::Vector2cd b_perp = ket(orthogonal(to));
  return b * a.adjoint() + b_perp * a_perp.adjoint();
}

}  // namespace gqstate
