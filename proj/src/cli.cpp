#include "gqstate/cli.hpp"

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gqstate/dynamics.hpp"
#include "gqstate/gaussian_box.hpp"
#include "gqstate/quadrature.hpp"
#include "gqstate/serialize.hpp"
#include "gqstate/spin_chain.hpp"

namespace gqstate {

namespace {

namespace fs = std::filesystem;

constexpr const char* kSchemaVersion = "1";
constexpr std::uint64_t kDefaultSeed = 12345;

struct CommonOptions {
  std::string output_dir = ".";
  std::uint64_t seed = kDefaultSeed;
  std::string format = "csv";
  bool bits = false;

  fs::path out(const std::string& name) const { return fs::path(output_dir) / name; }
  double display(double nats) const { return bits ? nats / std::log(2.0) : nats; }
  const char* unit() const { return bits ? "bits" : "nats"; }
};

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("-o,--output-dir", common.output_dir, "Directory for output files");
  cmd->add_option("--seed", common.seed, "Random seed (all runs are deterministic given it)");
  cmd->add_option("--format", common.format, "Stdout summary format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--bits", common.bits,
                "Display entropies in bits (files always store nats)");
}

std::vector<std::uint32_t> parse_scales(const std::string& text) {
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const int lo = std::stoi(text.substr(0, colon));
    const int hi = std::stoi(text.substr(colon + 1));
    return dyadic_scales(lo, hi);
  }
  std::vector<std::uint32_t> scales;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) scales.push_back(static_cast<std::uint32_t>(std::stoul(field)));
  if (scales.empty()) throw InvalidInputError("empty --scales");
  return scales;
}

std::optional<IndexRange> parse_window(const std::string& text) {
  if (text == "auto") return std::nullopt;
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw InvalidInputError("--window must be 'auto' or 'a:b' (half-open point indices)");
  return IndexRange{std::stoul(text.substr(0, colon)), std::stoul(text.substr(colon + 1))};
}

Json scales_json(const std::vector<std::uint32_t>& scales) {
  return Json(scales);
}

Json common_json(const CommonOptions& common, const std::string& subcommand) {
  return Json{{"subcommand", subcommand},
              {"output_dir", common.output_dir},
              {"seed", common.seed},
              {"format", common.format},
              {"bits", common.bits}};
}

// Applies the requested window (auto or manual) and fits.
DimensionFit fit_with_window(ScalingCurve& curve, const std::optional<IndexRange>& manual,
                             std::optional<std::uint64_t> sample_size) {
  curve.fit_window = manual ? *manual : auto_fit_window(curve, sample_size);
  return fit_dimension(curve);
}

void emit_report(const CommonOptions& common, const fs::path& path, const Json& report,
                 const std::vector<std::string>& summary_lines) {
  write_json(path, report);
  if (common.format == "json") {
    std::cout << report.dump(2) << '\n';
  } else {
    for (const auto& line : summary_lines) std::cout << line << '\n';
  }
}

int run_baker(const CommonOptions& common, const BakerParams& params, std::uint64_t steps,
              std::uint64_t burn_in, const BlochPoint& ic, const std::string& scales_text,
              const std::string& window_text) {
  const auto scales = parse_scales(scales_text);
  const auto window = parse_window(window_text);
  const EmpiricalSample trajectory =
      iterate([&](const BlochPoint& x) { return baker_step(x, params); }, ic, steps, burn_in);
  write_trajectory_csv(common.out("baker_trajectory.csv"), trajectory);

  ScalingCurve curve = scaling_curve(GeometricQuantumState{trajectory}, scales);
  const DimensionFit fit = fit_with_window(curve, window, steps);
  write_scaling_curve_csv(common.out("baker_curve.csv"), curve);

  const double analytic = baker_information_dimension(params);
  Json report{{"schema_version", kSchemaVersion},
              {"kind", "baker_report"},
              {"config", common_json(common, "baker")},
              {"curve", scaling_curve_to_json(curve)},
              {"fit", dimension_fit_to_json(fit)},
              {"analytic_dimension", analytic}};
  report["config"]["lambda_a"] = params.lambda_a;
  report["config"]["lambda_b"] = params.lambda_b;
  report["config"]["beta"] = params.beta;
  report["config"]["steps"] = steps;
  report["config"]["burn_in"] = burn_in;
  report["config"]["ic_p"] = ic.p;
  report["config"]["ic_phi"] = ic.phi;
  report["config"]["scales"] = scales_json(scales);
  report["config"]["window"] = window_text;

  emit_report(common, common.out("baker_report.json"), report,
              {"dimension," + format_double(fit.dimension) + "," + format_double(fit.dim_stderr),
               "analytic_dimension," + format_double(analytic),
               std::string("entropy_") + common.unit() + "," +
                   format_double(common.display(fit.dimensional_entropy))});
  return 0;
}

int run_standard_map(const CommonOptions& common, const StandardMapParams& params,
                     std::uint64_t steps, std::uint64_t burn_in, const BlochPoint& ic,
                     unsigned grid, const std::string& scales_text,
                     const std::string& window_text) {
  if (grid > 0) {
    // Grid evolution dump: every trajectory from the uniform grid of initial
    // conditions, all steps up to 'steps'.
    auto out_path = common.out("sm_grid.csv");
    std::ofstream out(out_path);
    if (!out) throw InvalidInputError("cannot open for writing: " + out_path.string());
    out << "ic_j,ic_k,step,p,phi\n";
    for (unsigned j = 0; j < grid; ++j) {
      for (unsigned k = 0; k < grid; ++k) {
        BlochPoint x(static_cast<double>(j) / grid, kTwoPi * static_cast<double>(k) / grid);
        for (std::uint64_t step = 0; step <= steps; ++step) {
          out << j << ',' << k << ',' << step << ',' << format_double(x.p) << ','
              << format_double(x.phi) << '\n';
          x = standard_map_step(x, params);
        }
      }
    }
    if (common.format != "json") std::cout << "grid_csv," << out_path.string() << '\n';
    return 0;
  }

  const auto scales = parse_scales(scales_text);
  const auto window = parse_window(window_text);
  const EmpiricalSample trajectory = iterate(
      [&](const BlochPoint& x) { return standard_map_step(x, params); }, ic, steps, burn_in);
  write_trajectory_csv(common.out("sm_trajectory.csv"), trajectory);

  ScalingCurve curve = scaling_curve(GeometricQuantumState{trajectory}, scales);
  const DimensionFit fit = fit_with_window(curve, window, steps);
  write_scaling_curve_csv(common.out("sm_curve.csv"), curve);

  Json report{{"schema_version", kSchemaVersion},
              {"kind", "standard_map_report"},
              {"config", common_json(common, "standard-map")},
              {"curve", scaling_curve_to_json(curve)},
              {"fit", dimension_fit_to_json(fit)}};
  report["config"]["k"] = params.k;
  report["config"]["steps"] = steps;
  report["config"]["burn_in"] = burn_in;
  report["config"]["ic_p"] = ic.p;
  report["config"]["ic_phi"] = ic.phi;
  report["config"]["scales"] = scales_json(scales);
  report["config"]["window"] = window_text;

  emit_report(common, common.out("sm_report.json"), report,
              {"dimension," + format_double(fit.dimension) + "," + format_double(fit.dim_stderr),
               std::string("entropy_") + common.unit() + "," +
                   format_double(common.display(fit.dimensional_entropy))});
  return 0;
}

int run_gaussian(const CommonOptions& common, const BoxGaussianParams& params,
                 std::uint64_t aep_samples, std::uint64_t fit_samples, int subgrid,
                 unsigned density_grid, const std::string& scales_text,
                 const std::string& window_text) {
  const auto scales = parse_scales(scales_text);
  const auto window = parse_window(window_text);
  const DensityGqs density = gaussian_density(params);

  if (density_grid > 0) {
    auto out_path = common.out("gaussian_density.csv");
    std::ofstream out(out_path);
    if (!out) throw InvalidInputError("cannot open for writing: " + out_path.string());
    out << "p,phi,q\n";
    for (unsigned i = 0; i < density_grid; ++i) {
      const double p = (i + 0.5) / density_grid;
      for (unsigned j = 0; j < density_grid; ++j) {
        const double phi = kTwoPi * (j + 0.5) / density_grid;
        out << format_double(p) << ',' << format_double(phi) << ','
            << format_double(density.bloch_density(p, phi)) << '\n';
      }
    }
  }

  // Sampled cell masses (fit-samples > 0) give the regression honest error
  // bars; fit-samples = 0 switches to deterministic per-cell quadrature.
  CoarseGrainOptions coarse;
  coarse.density_subgrid = subgrid;
  coarse.mc_samples = fit_samples;
  coarse.mc_seed = common.seed;
  ScalingCurve curve = scaling_curve(GeometricQuantumState{density}, scales, coarse);
  const DimensionFit fit = fit_with_window(
      curve, window,
      fit_samples > 0 ? std::optional<std::uint64_t>(fit_samples) : std::nullopt);
  write_scaling_curve_csv(common.out("gaussian_curve.csv"), curve);

  const double analytic = closed_form_h2(params);
  // State-space average -Int q ln q d nu_FS evaluated directly by nested
  // quadrature, as an independent check of the closed form.
  const double quadrature_h2 = -integrate(
      [&](double p) {
        return integrate(
            [&](double phi) {
              const double q = density.bloch_density(p, phi);
              return q > 0.0 ? q * std::log(q) : 0.0;
            },
            0.0, kTwoPi, 1e-10, 1e-13);
      },
      0.0, 1.0, 1e-10, 1e-13) / kTwoPi;
  const AepEstimate aep = aep_entropy_estimate(density, aep_samples, common.seed);

  Json report{{"schema_version", kSchemaVersion},
              {"kind", "gaussian_report"},
              {"config", common_json(common, "gaussian")},
              {"curve", scaling_curve_to_json(curve)},
              {"fit", dimension_fit_to_json(fit)},
              {"analytic_h2_nats", analytic},
              {"quadrature_h2_nats", quadrature_h2},
              {"aep", Json{{"mean_nats", aep.mean},
                           {"std_error", aep.std_error},
                           {"n_samples", aep.n_samples}}}};
  report["config"]["mu_p"] = params.mu_p;
  report["config"]["sigma_p"] = params.sigma_p;
  report["config"]["mu_phi"] = params.mu_phi;
  report["config"]["sigma_phi"] = params.sigma_phi;
  report["config"]["aep_samples"] = aep_samples;
  report["config"]["fit_samples"] = fit_samples;
  report["config"]["subgrid"] = subgrid;
  report["config"]["scales"] = scales_json(scales);
  report["config"]["window"] = window_text;

  emit_report(
      common, common.out("gaussian_report.json"), report,
      {"dimension," + format_double(fit.dimension) + "," + format_double(fit.dim_stderr),
       std::string("fitted_entropy_") + common.unit() + "," +
           format_double(common.display(fit.dimensional_entropy)),
       std::string("analytic_h2_") + common.unit() + "," + format_double(common.display(analytic)),
       std::string("aep_h2_") + common.unit() + "," + format_double(common.display(aep.mean))});
  return 0;
}

int run_finite_env(const CommonOptions& common, const std::string& state_file) {
  const BipartitePureState psi = read_bipartite_state(state_file);
  const DiracMixture mixture = induced_gqs(psi);
  const double h0 = dimensional_entropy_h0(mixture);
  const Eigen::MatrixXcd rho = reduced_density_matrix(mixture);
  const double s_vn = von_neumann_entropy(rho);
  const double ln_de = std::log(static_cast<double>(psi.dim_env()));
  const bool bounds_ok = s_vn <= h0 + 1e-9 && h0 <= ln_de + 1e-9;

  if (mixture.dim() == 2) write_atoms_csv(common.out("atoms.csv"), mixture);

  Json report{{"schema_version", kSchemaVersion},
              {"kind", "finite_env_report"},
              {"config", common_json(common, "finite-env")},
              {"dim_system", psi.dim_system()},
              {"dim_env", psi.dim_env()},
              {"n_atoms", mixture.size()},
              {"h0_nats", h0},
              {"s_vn_nats", s_vn},
              {"ln_dim_env", ln_de},
              {"bounds_ok", bounds_ok}};
  report["config"]["state"] = state_file;

  emit_report(common, common.out("finite_env_report.json"), report,
              {std::string("h0_") + common.unit() + "," + format_double(common.display(h0)),
               std::string("s_vn_") + common.unit() + "," + format_double(common.display(s_vn)),
               std::string("bounds_ok,") + (bounds_ok ? "1" : "0")});
  return bounds_ok ? 0 : 1;
}

int run_heisenberg(const CommonOptions& common, int n_min, int n_max,
                   const std::array<double, 3>& b_field, double coupling,
                   const std::string& scales_text, bool large, bool atoms_out, double tol,
                   int max_iter) {
  if (n_min < 2 || n_max < n_min) throw InvalidInputError("heisenberg: bad n-env range");
  if (n_max > 16 && !large)
    throw InvalidInputError("heisenberg: n-env-max > 16 requires --large");

  SweepSettings settings;
  settings.b_field = b_field;
  settings.coupling = coupling;
  settings.scales = parse_scales(scales_text);
  settings.lanczos.tol = tol;
  settings.lanczos.max_iter = max_iter;
  settings.lanczos.seed = common.seed;

  std::vector<int> sizes;
  for (int n = n_min; n <= n_max; ++n) sizes.push_back(n);
  const SweepReport sweep = thermodynamic_sweep(sizes, settings);

  Json size_entries = Json::array();
  for (const auto& r : sweep.sizes) {
    Json entry{{"n_env", r.n_env}};
    if (r.error) {
      entry["error"] = *r.error;
    } else {
      entry["energy"] = r.energy;
      entry["residual"] = r.residual;
      entry["degenerate"] = r.degenerate;
      entry["n_atoms"] = r.n_atoms;
      entry["h0_nats"] = r.h0_nats;
      entry["s_vn_nats"] = r.s_vn_nats;
      entry["fit"] = dimension_fit_to_json(r.fit);
      entry["window"] = Json::array({r.fit.window.begin, r.fit.window.end});
    }
    size_entries.push_back(std::move(entry));
  }
  Json report{{"schema_version", kSchemaVersion},
              {"kind", "heisenberg_sweep"},
              {"config", common_json(common, "heisenberg")},
              {"sizes", std::move(size_entries)}};
  report["config"]["n_env_min"] = n_min;
  report["config"]["n_env_max"] = n_max;
  report["config"]["bx"] = b_field[0];
  report["config"]["by"] = b_field[1];
  report["config"]["bz"] = b_field[2];
  report["config"]["coupling"] = coupling;
  report["config"]["scales"] = scales_json(settings.scales);
  report["config"]["large"] = large;
  report["config"]["lanczos_tol"] = tol;
  report["config"]["lanczos_max_iter"] = max_iter;
  if (sweep.pooled) report["pooled_fit"] = dimension_fit_to_json(*sweep.pooled);
  if (sweep.entropy_rate) {
    report["entropy_rate"] = Json{{"h_nats_per_qubit", sweep.entropy_rate->rate},
                                  {"std_error", sweep.entropy_rate->std_error}};
  }

  if (atoms_out) {
    for (auto it = sweep.sizes.rbegin(); it != sweep.sizes.rend(); ++it) {
      if (it->error) continue;
      SpinChainSpec spec{it->n_env, settings.b_field, settings.coupling};
      const SparseHamiltonian h(spec);
      const GroundStateResult gs = ground_state(h, settings.lanczos);
      write_atoms_csv(common.out("atoms_n" + std::to_string(it->n_env) + ".csv"),
                      chain_gqs(gs.vector, spec));
      break;
    }
  }

  std::vector<std::string> summary;
  for (const auto& r : sweep.sizes) {
    if (r.error) {
      summary.push_back("size," + std::to_string(r.n_env) + ",error," + *r.error);
    } else {
      summary.push_back("size," + std::to_string(r.n_env) + ",dimension," +
                        format_double(r.fit.dimension) + ",h0_" + common.unit() + "," +
                        format_double(common.display(r.h0_nats)));
    }
  }
  if (sweep.pooled)
    summary.push_back("pooled_dimension," + format_double(sweep.pooled->dimension) + "," +
                      format_double(sweep.pooled->dim_stderr));
  if (sweep.entropy_rate)
    summary.push_back("entropy_rate_" + std::string(common.unit()) + "," +
                      format_double(common.display(sweep.entropy_rate->rate)));
  emit_report(common, common.out("heisenberg_sweep.json"), report, summary);
  return 0;
}

int run_estimate_dim(const CommonOptions& common, const std::string& input,
                     const std::string& scales_text, const std::string& window_text) {
  const EmpiricalSample sample = read_empirical_csv(input);
  const auto scales = parse_scales(scales_text);
  const auto window = parse_window(window_text);

  ScalingCurve curve = scaling_curve(GeometricQuantumState{sample}, scales);
  const DimensionFit fit = fit_with_window(curve, window, sample.size());
  write_scaling_curve_csv(common.out("estimate_curve.csv"), curve);

  Json report{{"schema_version", kSchemaVersion},
              {"kind", "estimate_dim_report"},
              {"config", common_json(common, "estimate-dim")},
              {"n_samples", sample.size()},
              {"curve", scaling_curve_to_json(curve)},
              {"fit", dimension_fit_to_json(fit)}};
  report["config"]["input"] = input;
  report["config"]["scales"] = scales_json(scales);
  report["config"]["window"] = window_text;

  emit_report(common, common.out("estimate_report.json"), report,
              {"dimension," + format_double(fit.dimension) + "," + format_double(fit.dim_stderr),
               std::string("entropy_") + common.unit() + "," +
                   format_double(common.display(fit.dimensional_entropy))});
  return 0;
}

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const InvalidInputError*>(&e)) return "invalid-input";
  if (dynamic_cast<const InvalidStateError*>(&e)) return "invalid-state";
  if (dynamic_cast<const InsufficientDataError*>(&e)) return "insufficient-data";
  if (dynamic_cast<const SingularDensityError*>(&e)) return "singular-density";
  if (dynamic_cast<const UnsupportedIntegrationError*>(&e)) return "unsupported-integration";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence";
  return "error";
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Geometric quantum states: information dimension and geometric entropy"};
  app.require_subcommand(1);

  CommonOptions common;

  // baker
  BakerParams baker_params;
  std::uint64_t baker_steps = 1'000'000;
  std::uint64_t baker_burn = 1000;
  double baker_ic_p = 0.32865, baker_ic_phi = 0.98886;
  std::string baker_scales = "4:10", baker_window = "auto";
  auto* baker = app.add_subcommand("baker", "Extended Baker's Map attractor and dimension fit");
  add_common(baker, common);
  baker->add_option("--lambda-a", baker_params.lambda_a, "Branch-1 contraction rate");
  baker->add_option("--lambda-b", baker_params.lambda_b, "Branch-2 contraction rate");
  baker->add_option("--beta", baker_params.beta, "Phase split point (radians)");
  baker->add_option("--steps", baker_steps, "Recorded iterates");
  baker->add_option("--burn-in", baker_burn, "Discarded transient iterates");
  baker->add_option("--ic-p", baker_ic_p, "Initial p");
  baker->add_option("--ic-phi", baker_ic_phi, "Initial phi (radians)");
  baker->add_option("--scales", baker_scales, "Dyadic range a:b (L = 2^a..2^b) or list L1,L2,...");
  baker->add_option("--window", baker_window, "Fit window: auto or a:b point indices");

  // standard-map
  StandardMapParams sm_params;
  std::uint64_t sm_steps = 1'000'000;
  std::uint64_t sm_burn = 1000;
  double sm_ic_p = 0.1, sm_ic_phi = 0.4 * kPi;
  unsigned sm_grid = 0;
  std::string sm_scales = "4:10", sm_window = "auto";
  auto* sm = app.add_subcommand("standard-map", "Chirikov standard map on the Bloch square");
  add_common(sm, common);
  sm->add_option("--k", sm_params.k, "Kick strength K");
  sm->add_option("--steps", sm_steps, "Recorded iterates");
  sm->add_option("--burn-in", sm_burn, "Discarded transient iterates");
  sm->add_option("--ic-p", sm_ic_p, "Initial p");
  sm->add_option("--ic-phi", sm_ic_phi, "Initial phi (radians)");
  sm->add_option("--grid", sm_grid, "Evolve an N x N grid of initial conditions instead");
  sm->add_option("--scales", sm_scales, "Dyadic range a:b or list");
  sm->add_option("--window", sm_window, "Fit window: auto or a:b");

  // gaussian
  BoxGaussianParams g_params;
  std::vector<double> g_box;
  std::uint64_t g_aep = 100'000;
  std::uint64_t g_fit_samples = 0;
  int g_subgrid = 4;
  unsigned g_density_grid = 64;
  std::string g_scales = "4:10", g_window = "auto";
  auto* gaussian =
      app.add_subcommand("gaussian", "Truncated-Gaussian state: H2 report and dimension fit");
  add_common(gaussian, common);
  gaussian->add_option("--mu-p", g_params.mu_p, "Mean of p");
  gaussian->add_option("--sigma-p", g_params.sigma_p, "Width of p");
  gaussian->add_option("--mu-phi", g_params.mu_phi, "Mean of phi (radians)");
  gaussian->add_option("--sigma-phi", g_params.sigma_phi, "Width of phi (radians)");
  gaussian->add_option("--box", g_box,
                       "Physical box x0,x1,y0,y1,mu_x,sigma_x,mu_y,sigma_y (overrides mu/sigma)")
      ->delimiter(',')
      ->expected(8);
  gaussian->add_option("--aep-samples", g_aep, "Monte-Carlo entropy sample count");
  gaussian->add_option("--fit-samples", g_fit_samples,
                       "Sampled cell masses for the scaling-curve fit (0 = per-cell quadrature)");
  gaussian->add_option("--subgrid", g_subgrid, "Quadrature sub-grid per cell and axis");
  gaussian->add_option("--density-grid", g_density_grid, "Resolution of the density CSV (0 = skip)");
  gaussian->add_option("--scales", g_scales, "Dyadic range a:b or list");
  gaussian->add_option("--window", g_window, "Fit window: auto or a:b");

  // finite-env
  std::string fe_state;
  auto* finite_env =
      app.add_subcommand("finite-env", "Environment-induced Dirac mixture from a bipartite state");
  add_common(finite_env, common);
  finite_env->add_option("--state", fe_state, "Amplitude file (.json or .csv)")->required();

  // heisenberg
  int h_n_min = 10, h_n_max = 16;
  double h_bx = 0.0, h_by = 0.0, h_bz = 0.5, h_coupling = 1.0, h_tol = 1e-10;
  int h_max_iter = 4000;
  bool h_large = false, h_atoms_out = false;
  std::string h_scales = "1:12";
  auto* heisenberg =
      app.add_subcommand("heisenberg", "Defect Heisenberg chain thermodynamic sweep");
  add_common(heisenberg, common);
  heisenberg->add_option("--n-env-min", h_n_min, "Smallest environment size");
  heisenberg->add_option("--n-env-max", h_n_max, "Largest environment size");
  heisenberg->add_option("--bz", h_bz, "Magnetic field B_z");
  heisenberg->add_option("--bx", h_bx, "Magnetic field B_x");
  heisenberg->add_option("--by", h_by, "Magnetic field B_y");
  heisenberg->add_option("--coupling", h_coupling, "Heisenberg exchange J");
  heisenberg->add_option("--scales", h_scales, "Dyadic range a:b or list");
  heisenberg->add_flag("--large", h_large, "Allow n-env-max > 16 (minutes to hours, GBs)");
  heisenberg->add_flag("--atoms-out", h_atoms_out, "Dump atoms CSV for the largest size");
  heisenberg->add_option("--tol", h_tol, "Lanczos residual tolerance");
  heisenberg->add_option("--max-iter", h_max_iter, "Lanczos matvec budget");

  // estimate-dim
  std::string ed_input, ed_scales = "4:10", ed_window = "auto";
  auto* estimate =
      app.add_subcommand("estimate-dim", "Dimension fit for a point sample from CSV");
  add_common(estimate, common);
  estimate->add_option("--input", ed_input, "Sample CSV (p,phi or step,p,phi)")->required();
  estimate->add_option("--scales", ed_scales, "Dyadic range a:b or list");
  estimate->add_option("--window", ed_window, "Fit window: auto or a:b");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << Json{{"error", Json{{"type", "usage"}, {"message", e.what()}}}}.dump() << '\n';
    return e.get_exit_code();
  }

  try {
    fs::create_directories(common.output_dir);
    if (baker->parsed()) {
      return run_baker(common, baker_params, baker_steps, baker_burn,
                       BlochPoint(baker_ic_p, baker_ic_phi), baker_scales, baker_window);
    }
    if (sm->parsed()) {
      return run_standard_map(common, sm_params, sm_steps, sm_burn,
                              BlochPoint(sm_ic_p, sm_ic_phi), sm_grid, sm_scales, sm_window);
    }
    if (gaussian->parsed()) {
      BoxGaussianParams params = g_params;
      if (!g_box.empty()) {
        params = params_from_box(g_box[4], g_box[5], g_box[0], g_box[1], g_box[6], g_box[7],
                                 g_box[2], g_box[3]);
      }
      return run_gaussian(common, params, g_aep, g_fit_samples, g_subgrid, g_density_grid,
                          g_scales, g_window);
    }
    if (finite_env->parsed()) return run_finite_env(common, fe_state);
    if (heisenberg->parsed()) {
      return run_heisenberg(common, h_n_min, h_n_max, {h_bx, h_by, h_bz}, h_coupling, h_scales,
                            h_large, h_atoms_out, h_tol, h_max_iter);
    }
    if (estimate->parsed()) return run_estimate_dim(common, ed_input, ed_scales, ed_window);
    throw InvalidInputError("no subcommand");
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", Json{{"type", error_kind(e)}, {"message", e.what()}}}}.dump()
              << '\n';
    return 1;
  }
}

}  // namespace gqstate
