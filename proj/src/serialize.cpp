#include "gqstate/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gqstate/gaussian_box.hpp"

namespace gqstate {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open for reading: " + path.string());
  return in;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

bool looks_numeric(const std::string& s) {
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end != s.c_str();
}

double parse_field(const std::string& s, const char* context) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw InvalidInputError(std::string(context) + ": bad number '" + s + "'");
  return v;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

Json gqs_to_json(const GeometricQuantumState& state) {
  Json doc;
  if (const auto* mixture = std::get_if<DiracMixture>(&state)) {
    doc["type"] = "dirac";
    doc["dim"] = mixture->dim();
    Json atoms = Json::array();
    for (const auto& atom : mixture->atoms()) {
      atoms.push_back(Json{{"weight", atom.weight},
                           {"probs", atom.point.probs()},
                           {"phases", atom.point.phases()}});
    }
    doc["atoms"] = std::move(atoms);
  } else if (const auto* density = std::get_if<DensityGqs>(&state)) {
    if (density->ref_name.empty())
      throw InvalidInputError("gqs_to_json: density has no serializable reference");
    doc["type"] = "density-ref";
    doc["dim"] = density->dim_d;
    doc["name"] = density->ref_name;
    doc["params"] = density->ref_params;
  } else {
    const auto& sample = std::get<EmpiricalSample>(state);
    doc["type"] = "empirical";
    doc["dim"] = sample.dim();
    Json points = Json::array();
    for (std::size_t i = 0; i < sample.size(); ++i) {
      const auto row = sample.row(i);
      points.push_back(std::vector<double>(row.begin(), row.end()));
    }
    doc["points"] = std::move(points);
  }
  return doc;
}

GeometricQuantumState gqs_from_json(const Json& doc) {
  const std::string type = doc.at("type").get<std::string>();
  if (type == "dirac") {
    std::vector<WeightedAtom> atoms;
    for (const auto& a : doc.at("atoms")) {
      atoms.push_back({a.at("weight").get<double>(),
                       ProjectivePoint(a.at("probs").get<std::vector<double>>(),
                                       a.at("phases").get<std::vector<double>>())});
    }
    return DiracMixture(std::move(atoms));
  }
  if (type == "empirical") {
    const int dim = doc.at("dim").get<int>();
    EmpiricalSample sample(dim);
    for (const auto& row : doc.at("points")) {
      const auto coords = row.get<std::vector<double>>();
      if (static_cast<int>(coords.size()) != 2 * (dim - 1))
        throw InvalidInputError("gqs_from_json: bad point row length");
      std::vector<double> probs(static_cast<std::size_t>(dim));
      double rest = 0.0;
      for (int a = 1; a < dim; ++a) {
        probs[static_cast<std::size_t>(a)] = coords[static_cast<std::size_t>(a - 1)];
        rest += coords[static_cast<std::size_t>(a - 1)];
      }
      probs[0] = 1.0 - rest;
      std::vector<double> phases(coords.begin() + (dim - 1), coords.end());
      sample.add(ProjectivePoint(std::move(probs), std::move(phases)));
    }
    return sample;
  }
  if (type == "density-ref") {
    const std::string name = doc.at("name").get<std::string>();
    std::map<std::string, double> params;
    if (doc.contains("params")) params = doc.at("params").get<std::map<std::string, double>>();
    if (name == "uniform") {
      return uniform_density(doc.value("dim", 2));
    }
    if (name == "box-gaussian") {
      BoxGaussianParams g;
      g.mu_p = params.at("mu_p");
      g.sigma_p = params.at("sigma_p");
      g.mu_phi = params.at("mu_phi");
      g.sigma_phi = params.at("sigma_phi");
      return gaussian_density(g);
    }
    throw InvalidInputError("gqs_from_json: unknown density reference: " + name);
  }
  throw InvalidInputError("gqs_from_json: unknown state type: " + type);
}

void write_empirical_csv(const std::filesystem::path& path, const EmpiricalSample& sample) {
  if (sample.dim() != 2) throw InvalidInputError("write_empirical_csv: dim 2 only");
  auto out = open_out(path);
  out << "p,phi\n";
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto row = sample.row(i);
    out << format_double(row[0]) << ',' << format_double(row[1]) << '\n';
  }
}

EmpiricalSample read_empirical_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  EmpiricalSample sample(2);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (first) {
      first = false;
      if (!fields.empty() && !looks_numeric(fields[0])) continue;  // header row
    }
    if (fields.size() < 2) throw InvalidInputError("read_empirical_csv: need p,phi columns");
    // Accept either p,phi or step,p,phi rows.
    const std::size_t base = fields.size() >= 3 ? fields.size() - 2 : 0;
    sample.add(BlochPoint(parse_field(fields[base], "read_empirical_csv"),
                          parse_field(fields[base + 1], "read_empirical_csv")));
  }
  if (sample.empty()) throw InvalidInputError("read_empirical_csv: no samples in " + path.string());
  return sample;
}

void write_trajectory_csv(const std::filesystem::path& path, const EmpiricalSample& sample) {
  if (sample.dim() != 2) throw InvalidInputError("write_trajectory_csv: dim 2 only");
  auto out = open_out(path);
  out << "step,p,phi\n";
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto row = sample.row(i);
    out << i << ',' << format_double(row[0]) << ',' << format_double(row[1]) << '\n';
  }
}

void write_atoms_csv(const std::filesystem::path& path, const DiracMixture& mixture) {
  if (mixture.dim() != 2) throw InvalidInputError("write_atoms_csv: dim 2 only");
  auto out = open_out(path);
  out << "weight,p,phi\n";
  for (const auto& atom : mixture.atoms()) {
    out << format_double(atom.weight) << ',' << format_double(atom.point.probs()[1]) << ','
        << format_double(atom.point.phases()[0]) << '\n';
  }
}

void write_scaling_curve_csv(const std::filesystem::path& path, const ScalingCurve& curve) {
  auto out = open_out(path);
  out << "neg_log_eps,entropy_nats,in_window\n";
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const bool in_window =
        curve.fit_window && i >= curve.fit_window->begin && i < curve.fit_window->end;
    out << format_double(curve.points[i].neg_log_eps) << ','
        << format_double(curve.points[i].entropy_nats) << ',' << (in_window ? 1 : 0) << '\n';
  }
}

Json scaling_curve_to_json(const ScalingCurve& curve) {
  Json points = Json::array();
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    const bool in_window =
        curve.fit_window && i >= curve.fit_window->begin && i < curve.fit_window->end;
    points.push_back(Json{{"cells_per_axis", p.cells_per_axis},
                          {"neg_log_eps", p.neg_log_eps},
                          {"entropy_nats", p.entropy_nats},
                          {"occupied_cells", p.occupied_cells},
                          {"in_window", in_window}});
  }
  Json doc{{"dim", curve.dim_d}, {"points", std::move(points)}};
  if (curve.fit_window)
    doc["fit_window"] = Json::array({curve.fit_window->begin, curve.fit_window->end});
  return doc;
}

Json dimension_fit_to_json(const DimensionFit& fit) {
  return Json{{"dimension", fit.dimension},
              {"dim_stderr", fit.dim_stderr},
              {"dimensional_entropy_nats", fit.dimensional_entropy},
              {"ent_stderr", fit.ent_stderr},
              {"window", Json::array({fit.window.begin, fit.window.end})},
              {"n_points", fit.n_points}};
}

BipartitePureState read_bipartite_state(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".json") {
    const Json doc = read_json(path);
    const auto rows = doc.at("rows").get<Eigen::Index>();
    const auto cols = doc.at("cols").get<Eigen::Index>();
    const auto& amps = doc.at("amplitudes");
    if (static_cast<Eigen::Index>(amps.size()) != rows * cols)
      throw InvalidInputError("read_bipartite_state: amplitude count mismatch");
    Eigen::MatrixXcd psi(rows, cols);
    Eigen::Index idx = 0;
    for (const auto& pair : amps) {
      psi(idx / cols, idx % cols) =
          std::complex<double>(pair.at(0).get<double>(), pair.at(1).get<double>());
      ++idx;
    }
    return BipartitePureState(std::move(psi));
  }
  // CSV: one matrix row per line, fields re,im,re,im,...
  auto in = open_in(path);
  std::vector<std::vector<std::complex<double>>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (!looks_numeric(fields[0])) continue;  // header
    if (fields.size() % 2 != 0)
      throw InvalidInputError("read_bipartite_state: odd field count in CSV row");
    std::vector<std::complex<double>> row;
    for (std::size_t i = 0; i < fields.size(); i += 2)
      row.emplace_back(parse_field(fields[i], "read_bipartite_state"),
                       parse_field(fields[i + 1], "read_bipartite_state"));
    if (!rows.empty() && rows.front().size() != row.size())
      throw InvalidInputError("read_bipartite_state: ragged CSV rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidInputError("read_bipartite_state: empty file");
  Eigen::MatrixXcd psi(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      psi(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return BipartitePureState(std::move(psi));
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

Json read_json(const std::filesystem::path& path) {
  auto in = open_in(path);
  Json doc;
  in >> doc;
  return doc;
}

}  // namespace gqstate
