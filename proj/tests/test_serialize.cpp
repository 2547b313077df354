#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "gqstate/cli.hpp"
#include "gqstate/gaussian_box.hpp"
#include "gqstate/serialize.hpp"

using namespace gqstate;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("gqstate_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"gqstate"};
  argv.insert(argv.end(), args.begin(), args.end());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("Dirac mixtures round-trip through JSON") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<WeightedAtom> atoms;
    const int n = 4;
    for (int i = 0; i < n; ++i)
      atoms.push_back({1.0 / n, BlochPoint(u(rng), kTwoPi * u(rng)).to_projective()});
    const GeometricQuantumState state{DiracMixture(std::move(atoms))};
    const auto restored = gqs_from_json(gqs_to_json(state));
    const auto& a = std::get<DiracMixture>(state);
    const auto& b = std::get<DiracMixture>(restored);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a.atoms()[i].weight == doctest::Approx(b.atoms()[i].weight).epsilon(1e-15));
      CHECK(a.atoms()[i].point.probs()[1] ==
            doctest::Approx(b.atoms()[i].point.probs()[1]).epsilon(1e-15));
      CHECK(a.atoms()[i].point.phases()[0] ==
            doctest::Approx(b.atoms()[i].point.phases()[0]).epsilon(1e-15));
    }
  }
}

TEST_CASE("density references round-trip through the registry") {
  const GeometricQuantumState state{gaussian_density({0.4, 0.1, 2.0, 0.7})};
  const Json doc = gqs_to_json(state);
  CHECK(doc.at("type") == "density-ref");
  CHECK(doc.at("name") == "box-gaussian");
  const auto restored = std::get<DensityGqs>(gqs_from_json(doc));
  const auto& original = std::get<DensityGqs>(state);
  CHECK(restored.bloch_density(0.4, 2.0) ==
        doctest::Approx(original.bloch_density(0.4, 2.0)).epsilon(1e-12));

  const auto uniform = std::get<DensityGqs>(gqs_from_json(gqs_to_json({uniform_density()})));
  CHECK(uniform.bloch_density(0.2, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("empirical samples round-trip through CSV") {
  TempDir tmp;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  EmpiricalSample sample(2);
  for (int i = 0; i < 100; ++i) sample.add(BlochPoint(u(rng), kTwoPi * u(rng)));
  const auto path = tmp.path / "sample.csv";
  write_empirical_csv(path, sample);
  const EmpiricalSample restored = read_empirical_csv(path);
  REQUIRE(restored.size() == sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    CHECK(restored.bloch(i).p == sample.bloch(i).p);      // %.17g is exact for doubles
    CHECK(restored.bloch(i).phi == sample.bloch(i).phi);
  }
}

TEST_CASE("trajectory CSV is readable as an empirical sample") {
  TempDir tmp;
  EmpiricalSample sample(2);
  sample.add(BlochPoint(0.25, 1.0));
  sample.add(BlochPoint(0.5, 2.0));
  const auto path = tmp.path / "traj.csv";
  write_trajectory_csv(path, sample);
  const EmpiricalSample restored = read_empirical_csv(path);  // step column ignored
  REQUIRE(restored.size() == 2);
  CHECK(restored.bloch(1).p == doctest::Approx(0.5));
}

TEST_CASE("bipartite states load from JSON and CSV") {
  TempDir tmp;
  const double r = 1.0 / std::sqrt(2.0);

  const auto json_path = tmp.path / "state.json";
  write_json(json_path, Json{{"rows", 2},
                             {"cols", 2},
                             {"amplitudes", Json::array({Json::array({r, 0.0}), Json::array({0.0, 0.0}),
                                                         Json::array({0.0, 0.0}), Json::array({r, 0.0})})}});
  const auto from_json = read_bipartite_state(json_path);
  CHECK(from_json.dim_env() == 2);
  CHECK(std::abs(from_json.amplitudes()(0, 0).real() - r) < 1e-15);

  const auto csv_path = tmp.path / "state.csv";
  {
    std::ofstream out(csv_path);
    out << format_double(r) << ",0,0,0\n0,0," << format_double(r) << ",0\n";
  }
  const auto from_csv = read_bipartite_state(csv_path);
  CHECK((from_csv.amplitudes() - from_json.amplitudes()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("scaling curve CSV marks the fit window") {
  TempDir tmp;
  ScalingCurve curve;
  curve.dim_d = 2;
  for (int i = 1; i <= 4; ++i)
    curve.points.push_back({i * std::log(2.0), 1.5 * i, 10u, 1u << i});
  curve.fit_window = IndexRange{1, 4};
  const auto path = tmp.path / "curve.csv";
  write_scaling_curve_csv(path, curve);

  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "neg_log_eps,entropy_nats,in_window");
  std::getline(in, line);
  CHECK(line.ends_with(",0"));
  std::getline(in, line);
  CHECK(line.ends_with(",1"));
}

TEST_CASE("cli estimate-dim on a repeated point reports dimension 0") {
  TempDir tmp;
  const auto input = tmp.path / "points.csv";
  {
    std::ofstream out(input);
    out << "p,phi\n";
    for (int i = 0; i < 50; ++i) out << "0.25,1\n";
  }
  const std::string in_flag = input.string();
  const std::string out_flag = tmp.path.string();
  CHECK(run({"estimate-dim", "--input", in_flag.c_str(), "--scales", "1:6", "-o",
             out_flag.c_str()}) == 0);
  const Json report = read_json(tmp.path / "estimate_report.json");
  CHECK(report.at("schema_version") == "1");
  CHECK(std::abs(report.at("fit").at("dimension").get<double>()) < 1e-12);
  CHECK(std::abs(report.at("fit").at("dimensional_entropy_nats").get<double>()) < 1e-12);
  CHECK(report.at("config").at("seed").get<std::uint64_t>() == 12345);
}

TEST_CASE("cli finite-env produces the bounds report") {
  TempDir tmp;
  const double r = 1.0 / std::sqrt(2.0);
  const auto state_path = tmp.path / "bell.json";
  write_json(state_path, Json{{"rows", 2},
                              {"cols", 2},
                              {"amplitudes", Json::array({Json::array({r, 0.0}), Json::array({0.0, 0.0}),
                                                          Json::array({0.0, 0.0}), Json::array({0.0, r})})}});
  const std::string state_flag = state_path.string();
  const std::string out_flag = tmp.path.string();
  CHECK(run({"finite-env", "--state", state_flag.c_str(), "-o", out_flag.c_str()}) == 0);
  const Json report = read_json(tmp.path / "finite_env_report.json");
  CHECK(report.at("bounds_ok") == true);
  CHECK(report.at("h0_nats").get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(fs::exists(tmp.path / "atoms.csv"));
}

TEST_CASE("cli gaussian emits density grid, curve, and report") {
  TempDir tmp;
  const std::string out_flag = tmp.path.string();
  CHECK(run({"gaussian", "--scales", "2:6", "--aep-samples", "2000", "--density-grid", "8",
             "-o", out_flag.c_str()}) == 0);
  CHECK(fs::exists(tmp.path / "gaussian_density.csv"));
  CHECK(fs::exists(tmp.path / "gaussian_curve.csv"));
  const Json report = read_json(tmp.path / "gaussian_report.json");
  const double analytic = report.at("analytic_h2_nats").get<double>();
  const double quadrature = report.at("quadrature_h2_nats").get<double>();
  CHECK(std::abs(analytic - quadrature) < 1e-6);
}

TEST_CASE("cli rejects unknown inputs with a machine-readable error") {
  TempDir tmp;
  const std::string out_flag = tmp.path.string();
  CHECK(run({"estimate-dim", "--input", "/nonexistent/file.csv", "-o", out_flag.c_str()}) != 0);
  CHECK(run({"heisenberg", "--n-env-min", "10", "--n-env-max", "20", "-o", out_flag.c_str()}) !=
        0);  // > 16 requires --large
}

TEST_CASE("cli runs are byte-identical for identical argv and seed") {
  TempDir tmp;
  const std::string out_flag = tmp.path.string();
  auto run_once = [&] {
    REQUIRE(run({"baker", "--steps", "20000", "--scales", "2:7", "--seed", "9", "-o",
                 out_flag.c_str()}) == 0);
  };
  auto slurp = [&](const char* name) {
    std::ifstream in(tmp.path / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  run_once();
  const std::string traj = slurp("baker_trajectory.csv");
  const std::string curve = slurp("baker_curve.csv");
  const std::string report = slurp("baker_report.json");
  run_once();
  CHECK(slurp("baker_trajectory.csv") == traj);
  CHECK(slurp("baker_curve.csv") == curve);
  CHECK(slurp("baker_report.json") == report);
}
