#pragma once

#include <Eigen/Dense>

#include "gqstate/gqs.hpp"

namespace gqstate {

// Truncated-Gaussian geometric quantum state on the Bloch square, in simplex
// and phase units: p ~ N(mu_p, sigma_p) restricted to [0,1], phi ~
// N(mu_phi, sigma_phi) restricted to [0,2pi), independently.
struct BoxGaussianParams {
  double mu_p = 0.5;
  double sigma_p = 0.15;
  double mu_phi = kPi;
  double sigma_phi = 0.9;

  void validate() const;
};

// Converts a physical 2D box [x0,x1] x [y0,y1] with Gaussian position
// amplitude (means mu_x, mu_y; widths sigma_x, sigma_y) into Bloch-square
// units via x = x0 + p (x1 - x0), y = y0 + (phi / 2pi)(y1 - y0).
BoxGaussianParams params_from_box(double mu_x, double sigma_x, double x0, double x1,
                                  double mu_y, double sigma_y, double y0, double y1);

// q(p, phi) = 2pi * exp[-(p-mu_p)^2 / 2 sigma_p^2] / N_p
//                 * exp[-(phi-mu_phi)^2 / 2 sigma_phi^2] / N_phi,
// normalized against d nu_FS = dp dphi / 2pi; comes with an exact
// truncated-normal rejection sampler.
DensityGqs gaussian_density(const BoxGaussianParams& params);

// Integral of exp[-(x-mu)^2 / 2 sigma^2] over [lo, hi].
double truncated_gaussian_norm(double mu, double sigma, double lo, double hi);

// Dimension-2 geometric entropy of the truncated Gaussian, in nats:
//   ln N_p + ln N_phi + (E[((p-mu_p)/sigma_p)^2] + E[((phi-mu_phi)/sigma_phi)^2]) / 2 - ln 2pi,
// with the quadratic moments taken under the truncated marginals, so the
// identity H_2 = -Int q ln q d nu_FS holds exactly.  The moments reduce to 1
// (and the expression to ln N_p + ln N_phi + ln(e/2pi)) when truncation is
// negligible.
double closed_form_h2(const BoxGaussianParams& params);

// <O> = Int q(p,phi) O(p,phi) d nu_FS with
// O(p,phi) = (1-p) O_00 + p O_11 + sqrt(p(1-p)) (O_01 e^{i phi} + O_10 e^{-i phi}).
// Throws InvalidInputError for non-Hermitian observables.
double expectation(const Eigen::Matrix2cd& observable, const BoxGaussianParams& params);

}  // namespace gqstate
