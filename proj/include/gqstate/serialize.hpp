#pragma once

#include <filesystem>
#include <string>

#include "gqstate/estimator.hpp"
#include "gqstate/finite_env.hpp"
#include "json.hpp"

namespace gqstate {

using Json = nlohmann::json;

// Locale-independent shortest round-trip formatting ('.' decimal point).
std::string format_double(double value);

// Geometric quantum states as JSON documents, tagged by representation:
// {"type": "dirac" | "density-ref" | "empirical", ...}.  Densities serialize
// by reference (name + parameters) and are rebuilt through a small registry
// ("uniform", "box-gaussian").
Json gqs_to_json(const GeometricQuantumState& state);
GeometricQuantumState gqs_from_json(const Json& doc);

// Empirical samples as CSV with columns p,phi (dim 2 only).
void write_empirical_csv(const std::filesystem::path& path, const EmpiricalSample& sample);
EmpiricalSample read_empirical_csv(const std::filesystem::path& path);

// Trajectory dump: step,p,phi.
void write_trajectory_csv(const std::filesystem::path& path, const EmpiricalSample& sample);

// Dirac mixture atoms: weight,p,phi (dim 2 only).
void write_atoms_csv(const std::filesystem::path& path, const DiracMixture& mixture);

// Scaling curve: neg_log_eps,entropy_nats,in_window.
void write_scaling_curve_csv(const std::filesystem::path& path, const ScalingCurve& curve);

Json scaling_curve_to_json(const ScalingCurve& curve);
Json dimension_fit_to_json(const DimensionFit& fit);

// Bipartite amplitude files: ".json" documents ({"amplitudes": [[re, im],...]
// row-major with "rows"/"cols"}) or ".csv" (one matrix row per line as
// re,im,re,im,...).
BipartitePureState read_bipartite_state(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const Json& doc);
Json read_json(const std::filesystem::path& path);

}  // namespace gqstate
