#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "gqstate/estimator.hpp"
#include "gqstate/gaussian_box.hpp"

using namespace gqstate;

namespace {

// Test-side oracle: composite Simpson rule on a uniform grid, independent of
// the adaptive quadrature used by the library.
double simpson_2d(const std::function<double(double, double)>& f, double ax, double bx,
                  double ay, double by, int n) {
  auto weight = [n](int i) { return i == 0 || i == n ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0); };
  const double hx = (bx - ax) / n;
  const double hy = (by - ay) / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    double row = 0.0;
    for (int j = 0; j <= n; ++j) row += weight(j) * f(ax + i * hx, ay + j * hy);
    sum += weight(i) * row;
  }
  return sum * hx * hy / 9.0;
}

// Closed-form integral of exp(-(x-mu)^2 / 2 sigma^2) over [lo, hi] via erf.
double erf_norm(double mu, double sigma, double lo, double hi) {
  const double root2 = std::sqrt(2.0);
  return sigma * std::sqrt(kPi / 2.0) *
         (std::erf((hi - mu) / (sigma * root2)) - std::erf((lo - mu) / (sigma * root2)));
}

// Spec-scale narrow state: truncation corrections are negligible here.
const BoxGaussianParams kWeak{0.5, 0.05, kPi, 0.3};

}  // namespace

TEST_CASE("params_from_box rescales box coordinates to the Bloch square") {
  auto p = params_from_box(0.5, 0.25, 0.0, 1.0, 0.5, 0.25, 0.0, 1.0);
  CHECK(p.mu_p == doctest::Approx(0.5));
  CHECK(p.sigma_p == doctest::Approx(0.25));
  CHECK(p.mu_phi == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(p.sigma_phi == doctest::Approx(kPi / 2).epsilon(1e-14));

  p = params_from_box(1.0, 0.3, 0.0, 2.0, 0.5, 0.25, 0.0, 1.0);
  CHECK(p.mu_p == doctest::Approx(0.5));
  CHECK(p.sigma_p == doctest::Approx(0.15));

  p = params_from_box(0.0, 0.3, 0.0, 2.0, 0.5, 0.25, 0.0, 1.0);
  CHECK(p.mu_p == doctest::Approx(0.0));

  CHECK_THROWS_AS(params_from_box(0.5, 0.25, 1.0, 0.0, 0.5, 0.25, 0.0, 1.0), InvalidInputError);
}

TEST_CASE("truncated Gaussian normalizers match the erf closed form") {
  CHECK(truncated_gaussian_norm(0.5, 0.05, 0.0, 1.0) ==
        doctest::Approx(erf_norm(0.5, 0.05, 0.0, 1.0)).epsilon(1e-12));
  CHECK(truncated_gaussian_norm(kPi, 0.3, 0.0, kTwoPi) ==
        doctest::Approx(erf_norm(kPi, 0.3, 0.0, kTwoPi)).epsilon(1e-12));
  CHECK(truncated_gaussian_norm(-0.2, 0.4, 0.0, 1.0) ==
        doctest::Approx(erf_norm(-0.2, 0.4, 0.0, 1.0)).epsilon(1e-12));
}

TEST_CASE("gaussian density is normalized against the FS measure") {
  const DensityGqs density = gaussian_density(kWeak);
  const double integral = simpson_2d(
      [&](double p, double phi) { return density.bloch_density(p, phi); }, 0.0, 1.0, 0.0,
      kTwoPi, 2048) / kTwoPi;
  CHECK(std::abs(integral - 1.0) < 1e-8);
}

TEST_CASE("gaussian density approaches the uniform one for huge widths") {
  const DensityGqs density = gaussian_density({0.5, 1000.0, kPi, 1000.0});
  double max_dev = 0.0;
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      const double q = density.bloch_density((i + 0.5) / 50, kTwoPi * (j + 0.5) / 50);
      max_dev = std::max(max_dev, std::abs(q - 1.0));
    }
  }
  CHECK(max_dev < 1e-3);
}

TEST_CASE("gaussian density is symmetric about its center") {
  const DensityGqs density = gaussian_density(kWeak);
  for (double dp : {0.1, 0.23}) {
    for (double dphi : {0.4, 1.1}) {
      CHECK(density.bloch_density(0.5 + dp, kPi + dphi) ==
            doctest::Approx(density.bloch_density(0.5 - dp, kPi - dphi)).epsilon(1e-12));
    }
  }
}

TEST_CASE("closed-form H2 reduces to the untruncated expression for weak truncation") {
  const double expected = std::log(kWeak.sigma_p * std::sqrt(kTwoPi)) +
                          std::log(kWeak.sigma_phi * std::sqrt(kTwoPi)) + 1.0 -
                          std::log(kTwoPi);
  CHECK(std::abs(closed_form_h2(kWeak) - expected) < 1e-4);
}

TEST_CASE("closed-form H2 vanishes in the uniform limit") {
  CHECK(std::abs(closed_form_h2({0.5, 1000.0, kPi, 1000.0})) < 1e-4);
}

TEST_CASE("closed-form H2 equals the direct state-space average") {
  for (const BoxGaussianParams& params :
       {kWeak, BoxGaussianParams{0.3, 0.2, 2.0, 1.5}, BoxGaussianParams{0.9, 0.4, 5.5, 0.7}}) {
    const DensityGqs density = gaussian_density(params);
    const double oracle = -simpson_2d(
        [&](double p, double phi) {
          const double q = density.bloch_density(p, phi);
          return q > 0.0 ? q * std::log(q) : 0.0;
        },
        0.0, 1.0, 0.0, kTwoPi, 3000) / kTwoPi;
    CHECK(std::abs(closed_form_h2(params) - oracle) < 1e-6);
  }
}

TEST_CASE("expectation of the identity and of sigma_z") {
  CHECK(expectation(Eigen::Matrix2cd::Identity(), kWeak) ==
        doctest::Approx(1.0).epsilon(1e-10));

  Eigen::Matrix2cd sz = Eigen::Matrix2cd::Zero();
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  // Truncated-normal mean oracle: E[p] = mu + sigma^2 (g(0) - g(1)) / N.
  const double mu = kWeak.mu_p, sigma = kWeak.sigma_p;
  auto g = [&](double x) { return std::exp(-0.5 * (x - mu) * (x - mu) / (sigma * sigma)); };
  const double mean_p = mu + sigma * sigma * (g(0.0) - g(1.0)) / erf_norm(mu, sigma, 0.0, 1.0);
  CHECK(expectation(sz, kWeak) == doctest::Approx(1.0 - 2.0 * mean_p).epsilon(1e-8));
}

TEST_CASE("expectation of sigma_x matches direct 2D quadrature") {
  Eigen::Matrix2cd sx = Eigen::Matrix2cd::Zero();
  sx(0, 1) = 1.0;
  sx(1, 0) = 1.0;
  const BoxGaussianParams params{0.4, 0.15, 2.5, 0.8};
  const DensityGqs density = gaussian_density(params);
  const double oracle = simpson_2d(
      [&](double p, double phi) {
        return density.bloch_density(p, phi) * 2.0 * std::sqrt(p * (1.0 - p)) * std::cos(phi);
      },
      0.0, 1.0, 0.0, kTwoPi, 2048) / kTwoPi;
  CHECK(expectation(sx, params) == doctest::Approx(oracle).epsilon(1e-7));
  CHECK_THROWS_AS(expectation(Eigen::Matrix2cd{{0.0, 1.0}, {0.0, 0.0}}, params),
                  InvalidInputError);
}

TEST_CASE("expectation is linear and bounded by the spectrum") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Matrix2cd h;
    h(0, 0) = normal(rng);
    h(1, 1) = normal(rng);
    h(0, 1) = std::complex<double>(normal(rng), normal(rng));
    h(1, 0) = std::conj(h(0, 1));
    const double a = expectation(h, kWeak);
    const double b = expectation((2.0 * h).eval(), kWeak);
    CHECK(b == doctest::Approx(2.0 * a).epsilon(1e-9));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(h);
    CHECK(a >= eig.eigenvalues().minCoeff() - 1e-9);
    CHECK(a <= eig.eigenvalues().maxCoeff() + 1e-9);
  }
}

TEST_CASE("trace rho O agrees with the state-space expectation") {
  const BoxGaussianParams params{0.6, 0.2, 1.0, 0.5};
  const DensityGqs density = gaussian_density(params);
  // rho by direct quadrature of E[|psi><psi|].  The off-diagonal integrand is
  // evaluated with p = sin^2(theta/2), which removes the sqrt(p(1-p))
  // endpoint singularity: sqrt(p(1-p)) dp = sin^2(theta) / 2 * (dtheta / 2).
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  rho(0, 0) = simpson_2d(
      [&](double p, double phi) { return density.bloch_density(p, phi) * (1.0 - p); }, 0.0, 1.0,
      0.0, kTwoPi, 2048) / kTwoPi;
  rho(1, 1) = 1.0 - rho(0, 0).real();
  auto offdiag = [&](double theta, double phi, double (*trig)(double)) {
    const double s = std::sin(theta / 2);
    const double p = s * s;
    const double st = std::sin(theta);
    return density.bloch_density(p, phi) * 0.25 * st * st * trig(phi);
  };
  const double re = simpson_2d(
      [&](double theta, double phi) { return offdiag(theta, phi, std::cos); }, 0.0, kPi, 0.0,
      kTwoPi, 2048) / kTwoPi;
  const double im = simpson_2d(
      [&](double theta, double phi) { return offdiag(theta, phi, std::sin); }, 0.0, kPi, 0.0,
      kTwoPi, 2048) / kTwoPi;
  rho(0, 1) = std::complex<double>(re, -im);
  rho(1, 0) = std::conj(rho(0, 1));

  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::Matrix2cd h;
    h(0, 0) = normal(rng);
    h(1, 1) = normal(rng);
    h(0, 1) = std::complex<double>(normal(rng), normal(rng));
    h(1, 0) = std::conj(h(0, 1));
    CHECK(std::abs(expectation(h, params) - (rho * h).trace().real()) < 1e-8);
  }
}

TEST_CASE("sampler draws follow the truncated Gaussian") {
  // First/second moments of the p marginal against quadrature.
  const DensityGqs density = gaussian_density(kWeak);
  Rng rng(2025);
  const int n = 200'000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto z = density.sampler(rng);
    const double p = z.probs()[1];
    sum += p;
    sum_sq += p * p;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  const double mu = kWeak.mu_p, sigma = kWeak.sigma_p;
  auto g = [&](double x) { return std::exp(-0.5 * (x - mu) * (x - mu) / (sigma * sigma)); };
  const double exact_mean = mu + sigma * sigma * (g(0.0) - g(1.0)) / erf_norm(mu, sigma, 0.0, 1.0);
  CHECK(std::abs(mean - exact_mean) < 5e-4);
  CHECK(std::abs(std::sqrt(var) - sigma) < 5e-3);  // truncation negligible here
}

TEST_CASE("fitted dimension and entropy of the default gaussian state") {
  // The plug-in coarse entropy carries a self-similar w^2 offset, so the OLS
  // error bars track but do not cover it; assert absolute accuracy here.
  const BoxGaussianParams params;
  const DensityGqs density = gaussian_density(params);
  auto curve = scaling_curve(GeometricQuantumState{density}, dyadic_scales(4, 10));
  curve.fit_window = auto_fit_window(curve);
  const auto fit = fit_dimension(curve);
  CHECK(std::abs(fit.dimension - 2.0) < 0.01);
  CHECK(std::abs(fit.dimensional_entropy - closed_form_h2(params)) < 0.03);
  CHECK(fit.dim_stderr < 0.01);
}
