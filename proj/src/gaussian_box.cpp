#include "gqstate/gaussian_box.hpp"

#include <cmath>

#include "gqstate/quadrature.hpp"

namespace gqstate {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// One draw from N(mu, sigma) restricted to [lo, hi].  Uses normal-proposal
// rejection when enough mass lies inside the window, otherwise a uniform
// proposal bounded by the in-window maximum.
double sample_truncated_normal(double mu, double sigma, double lo, double hi, Rng& rng) {
  const double p_in = normal_cdf((hi - mu) / sigma) - normal_cdf((lo - mu) / sigma);
  if (p_in > 0.05) {
    std::normal_distribution<double> normal(mu, sigma);
    for (;;) {
      const double x = normal(rng);
      if (x >= lo && x < hi) return x;
    }
  }
  const double peak_x = std::clamp(mu, lo, hi);
  const double log_peak = -0.5 * (peak_x - mu) * (peak_x - mu) / (sigma * sigma);
  std::uniform_real_distribution<double> ux(lo, hi);
  std::uniform_real_distribution<double> uy(0.0, 1.0);
  for (;;) {
    const double x = ux(rng);
    const double log_q = -0.5 * (x - mu) * (x - mu) / (sigma * sigma);
    if (std::log(uy(rng) + 1e-300) < log_q - log_peak) return x;
  }
}

// E[((x-mu)/sigma)^2] under the truncated marginal on [lo, hi].
double truncated_quadratic_moment(double mu, double sigma, double lo, double hi) {
  const double norm = truncated_gaussian_norm(mu, sigma, lo, hi);
  const double raw = integrate(
      [&](double x) {
        const double u = (x - mu) / sigma;
        return u * u * std::exp(-0.5 * u * u);
      },
      lo, hi);
  return raw / norm;
}

}  // namespace

void BoxGaussianParams::validate() const {
  if (!(sigma_p > 0.0) || !(sigma_phi > 0.0))
    throw InvalidInputError("BoxGaussianParams: widths must be positive");
}

BoxGaussianParams params_from_box(double mu_x, double sigma_x, double x0, double x1,
                                  double mu_y, double sigma_y, double y0, double y1) {
  if (!(x1 > x0) || !(y1 > y0)) throw InvalidInputError("params_from_box: degenerate box");
  if (!(sigma_x > 0.0) || !(sigma_y > 0.0))
    throw InvalidInputError("params_from_box: widths must be positive");
  BoxGaussianParams out;
  out.mu_p = (mu_x - x0) / (x1 - x0);
  out.sigma_p = sigma_x / (x1 - x0);
  out.mu_phi = kTwoPi * (mu_y - y0) / (y1 - y0);
  out.sigma_phi = kTwoPi * sigma_y / (y1 - y0);
  return out;
}

double truncated_gaussian_norm(double mu, double sigma, double lo, double hi) {
  if (!(hi > lo) || !(sigma > 0.0)) throw InvalidInputError("truncated_gaussian_norm: bad window");
  return integrate(
      [&](double x) {
        const double u = (x - mu) / sigma;
        return std::exp(-0.5 * u * u);
      },
      lo, hi);
}

DensityGqs gaussian_density(const BoxGaussianParams& params) {
  params.validate();
  const double norm_p = truncated_gaussian_norm(params.mu_p, params.sigma_p, 0.0, 1.0);
  const double norm_phi = truncated_gaussian_norm(params.mu_phi, params.sigma_phi, 0.0, kTwoPi);
  const BoxGaussianParams g = params;
  const double scale = kTwoPi / (norm_p * norm_phi);

  DensityGqs out;
  out.dim_d = 2;
  out.bloch_density = [g, scale](double p, double phi) {
    const double up = (p - g.mu_p) / g.sigma_p;
    const double uphi = (phi - g.mu_phi) / g.sigma_phi;
    return scale * std::exp(-0.5 * (up * up + uphi * uphi));
  };
  out.density = [f = out.bloch_density](const ProjectivePoint& z) {
    return f(z.probs()[1], z.phases()[0]);
  };
  out.sampler = [g](Rng& rng) {
    const double p = sample_truncated_normal(g.mu_p, g.sigma_p, 0.0, 1.0, rng);
    const double phi = sample_truncated_normal(g.mu_phi, g.sigma_phi, 0.0, kTwoPi, rng);
    return BlochPoint(p, phi).to_projective();
  };
  out.ref_name = "box-gaussian";
  out.ref_params = {{"mu_p", g.mu_p},
                    {"sigma_p", g.sigma_p},
                    {"mu_phi", g.mu_phi},
                    {"sigma_phi", g.sigma_phi}};
  return out;
}

double closed_form_h2(const BoxGaussianParams& params) {
  params.validate();
  const double norm_p = truncated_gaussian_norm(params.mu_p, params.sigma_p, 0.0, 1.0);
  const double norm_phi = truncated_gaussian_norm(params.mu_phi, params.sigma_phi, 0.0, kTwoPi);
  const double m_p = truncated_quadratic_moment(params.mu_p, params.sigma_p, 0.0, 1.0);
  const double m_phi = truncated_quadratic_moment(params.mu_phi, params.sigma_phi, 0.0, kTwoPi);
  return std::log(norm_p) + std::log(norm_phi) + 0.5 * (m_p + m_phi) - std::log(kTwoPi);
}

double expectation(const Eigen::Matrix2cd& observable, const BoxGaussianParams& params) {
  params.validate();
  if ((observable - observable.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidInputError("expectation: observable must be Hermitian");

  const double norm_p = truncated_gaussian_norm(params.mu_p, params.sigma_p, 0.0, 1.0);
  const double norm_phi = truncated_gaussian_norm(params.mu_phi, params.sigma_phi, 0.0, kTwoPi);
  auto weight_p = [&](double p) {
    const double u = (p - params.mu_p) / params.sigma_p;
    return std::exp(-0.5 * u * u) / norm_p;
  };
  auto weight_phi = [&](double phi) {
    const double u = (phi - params.mu_phi) / params.sigma_phi;
    return std::exp(-0.5 * u * u) / norm_phi;
  };

  // The density and the kernel O(p, phi) both factor over the two axes.
  const double mean_p = integrate([&](double p) { return p * weight_p(p); }, 0.0, 1.0);
  const double mean_root =
      integrate([&](double p) { return std::sqrt(std::max(0.0, p * (1.0 - p))) * weight_p(p); },
                0.0, 1.0);
  const double mean_cos =
      integrate([&](double phi) { return std::cos(phi) * weight_phi(phi); }, 0.0, kTwoPi);
  const double mean_sin =
      integrate([&](double phi) { return std::sin(phi) * weight_phi(phi); }, 0.0, kTwoPi);

  const double o00 = observable(0, 0).real();
  const double o11 = observable(1, 1).real();
  const std::complex<double> o01 = observable(0, 1);
  const std::complex<double> mean_phase(mean_cos, mean_sin);  // E[e^{i phi}]
  const double cross = 2.0 * (o01 * mean_phase).real();
  return (1.0 - mean_p) * o00 + mean_p * o11 + mean_root * cross;
}

}  // namespace gqstate
