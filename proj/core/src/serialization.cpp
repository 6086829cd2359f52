#include "qglab/serialization.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qglab/errors.hpp"

namespace qglab {

namespace {

using nlohmann::json;

// JSON has no literals for non-finite values (nlohmann would emit null);
// encode them as strings so records stay lossless and parseable.
json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      rows.push_back({json_number(m(r, c).real()), json_number(m(r, c).imag())});
    }
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& entries, int n) {
  if (!entries.is_array() || static_cast<int>(entries.size()) != n * n) {
    throw Error("operator system JSON: basis element must list n*n entries");
  }
  ComplexMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const json& e = entries[static_cast<std::size_t>(r * n + c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw Error("operator system JSON: entry must be a [re, im] number pair");
      }
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

}  // namespace

std::string operator_system_to_json(const OperatorSystem& v) {
  json out;
  out["n"] = v.n;
  out["dim"] = v.dim();
  json basis = json::array();
  for (const auto& a : v.basis) basis.push_back(matrix_to_json(a));
  out["basis"] = std::move(basis);
  return out.dump();
}

OperatorSystem operator_system_from_json(const std::string& text) {
  json in = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (in.is_discarded()) throw Error("operator system JSON: parse failure");
  if (!in.is_object() || !in.contains("n") || !in.contains("dim") || !in.contains("basis")) {
    throw Error("operator system JSON: need fields n, dim, basis");
  }
  if (!in["n"].is_number_integer() || !in["dim"].is_number_integer() ||
      !in["basis"].is_array()) {
    throw Error("operator system JSON: malformed field types");
  }
  OperatorSystem v;
  v.n = in["n"].get<int>();
  if (v.n < 1) throw Error("operator system JSON: n must be positive");
  const int dim = in["dim"].get<int>();
  if (static_cast<int>(in["basis"].size()) != dim) {
    throw Error("operator system JSON: dim does not match basis length");
  }
  for (const auto& entry : in["basis"]) {
    v.basis.push_back(matrix_from_json(entry, v.n));
  }
  validate_operator_system(v);
  return v;
}

void save_operator_system(const std::string& path, const OperatorSystem& v) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << operator_system_to_json(v) << '\n';
  if (!out) throw Error("write failure: " + path);
}

OperatorSystem load_operator_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open for reading: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return operator_system_from_json(buffer.str());
}

std::string to_json(const StabilizerAlgebra& s) {
  json out;
  out["n"] = s.n;
  out["dim"] = s.dim();
  out["singular_values"] = json::array();
  for (double sv : s.singular_values) out["singular_values"].push_back(json_number(sv));
  out["rank_threshold"] = json_number(s.rank_threshold);
  out["gap_ratio"] = json_number(s.gap_ratio);
  json basis = json::array();
  for (const auto& h : s.basis) basis.push_back(matrix_to_json(h));
  out["basis"] = std::move(basis);
  return out.dump();
}

std::string to_json(const AutSearchReport& r) {
  json out;
  out["restarts"] = r.restarts;
  out["converged_fraction"] = json_number(r.converged_fraction);
  out["full_stabilizer"] = r.full_stabilizer;
  out["nonscalar_found"] = r.nonscalar_found();
  json candidates = json::array();
  for (const auto& c : r.candidates) {
    json entry;
    entry["residual"] = json_number(c.residual);
    entry["distance_from_scalars"] = json_number(c.distance_from_scalars);
    entry["u"] = matrix_to_json(c.u);
    candidates.push_back(std::move(entry));
  }
  out["candidates"] = std::move(candidates);
  return out.dump();
}

std::string to_json(const DiagonalPhaseGroup& g) {
  json out;
  out["torus_rank"] = g.torus_rank;
  out["trivial"] = g.trivial();
  json gens = json::array();
  for (const auto& v : g.discrete_generators) {
    json signs = json::array();
    for (int i = 0; i < v.size(); ++i) signs.push_back(v(i) > 0 ? 1 : -1);
    gens.push_back(std::move(signs));
  }
  out["discrete_generators"] = std::move(gens);
  return out.dump();
}

std::string to_json(const RigidityCertificate& c) {
  json out;
  out["spectrum_simple"] = c.spectrum_simple;
  out["thick"] = c.thick;
  out["no_zero_coordinates"] = c.no_zero_coordinates;
  out["distance_profiles_distinct"] = c.distance_profiles_distinct;
  out["classical_aut"] = to_string(c.classical_aut);
  out["verdict"] = to_string(c.verdict);
  return out.dump();
}

std::string to_json(const ObstructionReport& r) {
  json out;
  out["isospectral"] = r.isospectral;
  out["apex_unique_max_degree"] = r.apex_unique_max_degree;
  out["base_profiles_distinct"] = r.base_profiles_distinct;
  out["base_quantum_trivial"] = r.base_quantum_trivial;
  out["partitions_differ"] = r.partitions_differ;
  out["verdict"] = to_string(r.verdict);
  return out.dump();
}

const char* to_string(AutVerdict v) {
  switch (v) {
    case AutVerdict::Trivial:
      return "trivial";
    case AutVerdict::Nontrivial:
      return "nontrivial";
    case AutVerdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

const char* to_string(RigidityVerdict v) {
  switch (v) {
    case RigidityVerdict::QuantumTrivial:
      return "QuantumTrivial";
    case RigidityVerdict::ClassicalTwoGroup:
      return "ClassicalTwoGroup";
    case RigidityVerdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

const char* to_string(ObstructionVerdict v) {
  switch (v) {
    case ObstructionVerdict::NotQuantumIsomorphic:
      return "NotQuantumIsomorphic";
    case ObstructionVerdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

}  // namespace qglab
