#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "gqstate/gqs.hpp"

using namespace gqstate;

namespace {

DiracMixture random_mixture(std::mt19937_64& rng, int n_atoms) {
  std::uniform_real_distribution<double> up(0.0, 1.0);
  std::uniform_real_distribution<double> uphi(0.0, kTwoPi);
  std::vector<WeightedAtom> atoms;
  double total = 0.0;
  std::vector<double> raw(n_atoms);
  for (auto& w : raw) {
    w = up(rng) + 1e-3;
    total += w;
  }
  for (int i = 0; i < n_atoms; ++i)
    atoms.push_back({raw[i] / total, BlochPoint(up(rng), uphi(rng)).to_projective()});
  return DiracMixture(std::move(atoms));
}

}  // namespace

TEST_CASE("coarse_grain of a single atom occupies exactly its cell") {
  const DiracMixture state({{1.0, BlochPoint(0.5, kPi).to_projective()}});
  const auto hist = coarse_grain(state, Partition(2, 10));
  REQUIRE(hist.entries.size() == 1);
  CHECK(hist.entries[0].first == 5 * 10 + 5);
  CHECK(hist.entries[0].second == doctest::Approx(1.0));
}

TEST_CASE("coarse_grain of the uniform density is exactly uniform") {
  const auto hist = coarse_grain(uniform_density(), Partition(2, 4));
  REQUIRE(hist.entries.size() == 16);
  for (const auto& [key, p] : hist.entries) CHECK(p == doctest::Approx(1.0 / 16).epsilon(1e-12));
  CHECK(hist.total() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coarse_grain of an empirical sample counts cells") {
  EmpiricalSample sample(2);
  sample.add(BlochPoint(0.11, 0.3));
  sample.add(BlochPoint(0.12, 0.31));
  sample.add(BlochPoint(0.13, 0.32));
  sample.add(BlochPoint(0.81, 4.0));
  const auto hist = coarse_grain(sample, Partition(2, 4));
  REQUIRE(hist.entries.size() == 2);
  CHECK(hist.entries[0].second == doctest::Approx(0.75));
  CHECK(hist.entries[1].second == doctest::Approx(0.25));
}

TEST_CASE("coarse_grain output always sums to 1") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto mixture = random_mixture(rng, 8);
    for (std::uint32_t L : {2u, 16u, 128u}) {
      CHECK(std::abs(coarse_grain(mixture, Partition(2, L)).total() - 1.0) < 1e-9);
    }
  }
  // Density path, including a non-trivial one via the sampler-free quadrature.
  for (std::uint32_t L : {2u, 8u, 64u}) {
    CHECK(std::abs(coarse_grain(uniform_density(), Partition(2, L)).total() - 1e0) < 1e-9);
  }
}

TEST_CASE("Dirac coarse-grained entropy saturates at the weight entropy") {
  std::mt19937_64 rng(11);
  const auto mixture = random_mixture(rng, 6);
  double weight_entropy = 0.0;
  for (const auto& atom : mixture.atoms()) weight_entropy -= atom.weight * std::log(atom.weight);

  auto entropy_at = [&](std::uint32_t L) {
    const auto hist = coarse_grain(mixture, Partition(2, L));
    double h = 0.0;
    for (const auto& [key, p] : hist.entries) h -= p * std::log(p);
    return h;
  };
  // All atoms in distinct cells at L = 2^10 with overwhelming probability.
  const double h10 = entropy_at(1u << 10);
  const double h11 = entropy_at(1u << 11);
  CHECK(h10 == doctest::Approx(weight_entropy).epsilon(1e-12));
  CHECK(h11 == doctest::Approx(h10).epsilon(1e-12));
}

TEST_CASE("atoms below the weight floor are dropped") {
  const DiracMixture state({{1.0 - 1e-16, BlochPoint(0.2, 1.0).to_projective()},
                            {1e-16, BlochPoint(0.9, 2.0).to_projective()}});
  CHECK(state.size() == 1);
  CHECK(state.atoms()[0].weight == doctest::Approx(1.0));
}

TEST_CASE("reduced density matrix of basis mixtures") {
  const DiracMixture pure({{1.0, ProjectivePoint({1.0, 0.0}, {0.0})}});
  Eigen::MatrixXcd rho = reduced_density_matrix(pure);
  CHECK(rho(0, 0).real() == doctest::Approx(1.0));
  CHECK(std::abs(rho(1, 1)) < 1e-15);

  const DiracMixture mixed(
      {{0.5, ProjectivePoint({1.0, 0.0}, {0.0})}, {0.5, ProjectivePoint({0.0, 1.0}, {0.0})}});
  rho = reduced_density_matrix(mixed);
  CHECK(rho(0, 0).real() == doctest::Approx(0.5));
  CHECK(rho(1, 1).real() == doctest::Approx(0.5));
  CHECK(std::abs(rho(0, 1)) < 1e-15);
}

TEST_CASE("reduced density matrix of the |+>/|-> mixture") {
  // Direct matrix oracle: 0.5 |+><+| + 0.5 |-><-| = I/2.
  const ProjectivePoint plus({0.5, 0.5}, {0.0});
  const ProjectivePoint minus({0.5, 0.5}, {kPi});
  const DiracMixture state({{0.5, plus}, {0.5, minus}});
  const Eigen::MatrixXcd rho = reduced_density_matrix(state);

  Eigen::Vector2cd vp(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  Eigen::Vector2cd vm(1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0));
  const Eigen::Matrix2cd oracle = 0.5 * vp * vp.adjoint() + 0.5 * vm * vm.adjoint();
  CHECK((rho - oracle).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(rho(0, 0).real() == doctest::Approx(0.5));
  CHECK(rho(1, 1).real() == doctest::Approx(0.5));
}

TEST_CASE("reduced density matrix is atom-order and gauge invariant") {
  std::mt19937_64 rng(23);
  auto mixture = random_mixture(rng, 5);
  std::vector<WeightedAtom> reversed(mixture.atoms().rbegin(), mixture.atoms().rend());
  const DiracMixture permuted(std::move(reversed));
  CHECK((reduced_density_matrix(mixture) - reduced_density_matrix(permuted))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("von Neumann entropy") {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
  rho(0, 0) = 1.0;
  CHECK(von_neumann_entropy(rho) == doctest::Approx(0.0));

  rho(0, 0) = 0.5;
  rho(1, 1) = 0.5;
  CHECK(von_neumann_entropy(rho) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  rho(0, 0) = 0.9;
  rho(1, 1) = 0.1;
  // -0.9 ln 0.9 - 0.1 ln 0.1
  CHECK(std::abs(von_neumann_entropy(rho) - 0.3251) < 1e-4);

  rho(0, 0) = 1.2;
  rho(1, 1) = -0.2;
  CHECK_THROWS_AS(von_neumann_entropy(rho), InvalidStateError);
}

TEST_CASE("density without sampler cannot be coarse-grained above dim 2") {
  DensityGqs density;
  density.dim_d = 3;
  density.density = [](const ProjectivePoint&) { return 1.0; };
  CHECK_THROWS_AS(coarse_grain(density, Partition(3, 4)), UnsupportedIntegrationError);
}

TEST_CASE("Monte-Carlo coarse graining approximates the quadrature masses") {
  CoarseGrainOptions mc;
  mc.mc_samples = 200'000;
  const auto hist = coarse_grain(uniform_density(), Partition(2, 2), mc);
  REQUIRE(hist.entries.size() == 4);
  CHECK(std::abs(hist.total() - 1.0) < 1e-12);
  for (const auto& [key, p] : hist.entries) CHECK(std::abs(p - 0.25) < 5e-3);
}

TEST_CASE("qutrit states bin on the simplex-times-torus grid") {
  // D = 3: indices (j_1, j_2, k_1, k_2) from (p_1, p_2, phi_1, phi_2).
  const ProjectivePoint point({0.2, 0.3, 0.5}, {kPi / 2, 1.5 * kPi});
  const Partition part(3, 4);
  const auto idx = cell_index(point, part);
  REQUIRE(idx.size() == 4);
  CHECK(idx[0] == 1);  // floor(0.3 * 4)
  CHECK(idx[1] == 2);  // floor(0.5 * 4)
  CHECK(idx[2] == 1);  // floor(0.25 * 4)
  CHECK(idx[3] == 3);  // floor(0.75 * 4)

  const DiracMixture mixture({{0.5, point}, {0.5, ProjectivePoint({1.0, 0.0, 0.0}, {0.0, 0.0})}});
  const auto hist = coarse_grain(mixture, part);
  CHECK(hist.entries.size() == 2);
  CHECK(std::abs(hist.total() - 1.0) < 1e-12);
}
