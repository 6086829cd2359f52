#include "qglab/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qglab/errors.hpp"
#include "qglab/parallel.hpp"
#include "qglab/random_models.hpp"
#include "qglab/rigidity.hpp"
#include "qglab/serialization.hpp"
#include "qglab/symmetry.hpp"

namespace qglab {

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::QgAut:
      return "qg-aut";
    case ExperimentKind::QgAxioms:
      return "qg-axioms";
    case ExperimentKind::QgDuality:
      return "qg-duality";
    case ExperimentKind::QgDegree:
      return "qg-degree";
    case ExperimentKind::GraphRigidity:
      return "graph-rigidity";
    case ExperimentKind::GmDemo:
      return "gm-demo";
    case ExperimentKind::ExplicitTuple:
      return "explicit-tuple";
  }
  return "qg-aut";
}

std::optional<ExperimentKind> experiment_from_string(const std::string& name) {
  for (ExperimentKind kind :
       {ExperimentKind::QgAut, ExperimentKind::QgAxioms, ExperimentKind::QgDuality,
        ExperimentKind::QgDegree, ExperimentKind::GraphRigidity, ExperimentKind::GmDemo,
        ExperimentKind::ExplicitTuple}) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw ParameterOutOfRange("config: trials must be >= 1");
  const auto need_dp = [&](const char* what) {
    if (d.has_value() == p.has_value()) {
      throw ParameterOutOfRange(std::string("config: ") + what +
                                " needs exactly one of d or p");
    }
    if (r) throw ParameterOutOfRange(std::string("config: ") + what + " takes no r");
    if (n < 2) throw ParameterOutOfRange("config: n must be >= 2");
    if (d && (*d < 0 || *d > n * n - 1)) {
      throw ParameterOutOfRange("config: need 0 <= d <= n^2 - 1");
    }
    if (p && !(*p >= 0.0 && *p <= 1.0)) {
      throw ParameterOutOfRange("config: need 0 <= p <= 1");
    }
  };
  switch (kind) {
    case ExperimentKind::QgAut:
    case ExperimentKind::QgAxioms:
    case ExperimentKind::QgDegree:
      need_dp(to_string(kind));
      break;
    case ExperimentKind::QgDuality:
      if (n < 2) throw ParameterOutOfRange("config: n must be >= 2");
      if (p || r) throw ParameterOutOfRange("config: qg-duality takes only d");
      if (d && (*d < 1 || *d > n * n - 2)) {
        throw ParameterOutOfRange("config: qg-duality needs 1 <= d <= n^2 - 2");
      }
      break;
    case ExperimentKind::GraphRigidity:
      if (p.has_value() == r.has_value()) {
        throw ParameterOutOfRange("config: graph-rigidity needs exactly one of p or r");
      }
      if (d) throw ParameterOutOfRange("config: graph-rigidity takes no d");
      if (n < 1) throw ParameterOutOfRange("config: n must be >= 1");
      if (p && !(*p >= 0.0 && *p <= 1.0)) {
        throw ParameterOutOfRange("config: need 0 <= p <= 1");
      }
      if (r && (*r < 0 || *r >= n || (static_cast<long>(n) * *r) % 2 != 0)) {
        throw ParameterOutOfRange("config: need 0 <= r < n with n*r even");
      }
      break;
    case ExperimentKind::GmDemo:
      if (!r || d || p) throw ParameterOutOfRange("config: gm-demo takes only r");
      if (n < 2 || n % 2 != 0) {
        throw ParameterOutOfRange("config: gm-demo needs even n >= 2");
      }
      if (*r < 1 || *r >= n) throw ParameterOutOfRange("config: need 1 <= r < n");
      break;
    case ExperimentKind::ExplicitTuple:
      if (!d || p || r) throw ParameterOutOfRange("config: explicit-tuple takes only d");
      if (n < 6) throw ParameterOutOfRange("config: explicit-tuple needs n >= 6");
      if (*d < 4 || *d > n * n - 5) {
        throw ParameterOutOfRange("config: explicit-tuple needs 4 <= d <= n^2 - 5");
      }
      break;
  }
}

namespace {

void put(TrialRecord& rec, const char* key, TrialValue value) {
  rec.fields.emplace_back(key, std::move(value));
}

TrialValue iv(long long x) { return TrialValue(static_cast<std::int64_t>(x)); }

double min_eigen_gap(const RealVector& ascending) {
  if (ascending.size() < 2) return std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 1; i < ascending.size(); ++i) {
    gap = std::min(gap, ascending(i) - ascending(i - 1));
  }
  return gap;
}

OperatorSystem sample_system(const ExperimentConfig& cfg, SeededRng& rng,
                             TrialRecord& rec) {
  int d_actual = 0;
  int redraws = 0;
  OperatorSystem v;
  if (cfg.p) {
    v = sample_qg_np(cfg.n, *cfg.p, rng, &d_actual, &redraws);
  } else {
    d_actual = *cfg.d;
    v = sample_qg_nd(cfg.n, d_actual, rng, &redraws);
  }
  put(rec, "n", iv(cfg.n));
  put(rec, "d", iv(d_actual));
  if (cfg.p) put(rec, "p", *cfg.p);
  put(rec, "redraws", iv(redraws));
  return v;
}

void trial_qg_aut(const ExperimentConfig& cfg, SeededRng& rng, TrialRecord& rec) {
  OperatorSystem v = sample_system(cfg, rng, rec);
  StabilizerAlgebra stab = stabilizer_lie_algebra(v, cfg.tol_rank);
  put(rec, "stabilizer_dim", iv(stab.dim()));
  put(rec, "gap_ratio", stab.gap_ratio);
  put(rec, "abelian", is_abelian(stab));
}

void trial_qg_axioms(const ExperimentConfig& cfg, SeededRng& rng, TrialRecord& rec) {
  OperatorSystem v = sample_system(cfg, rng, rec);
  Superoperator a = quantum_adjacency(v);
  const double r_idem = check_idempotent_law(a);
  const double r_symm = check_symmetric(a);
  const double r_refl = check_reflexive(a);
  const double choi_min = check_cp(a);
  const ComplexMatrix deg = degree_matrix(v);
  const Eig eig = eig_hermitian(deg);
  const double trace_err =
      std::abs(deg.trace().real() / cfg.n - static_cast<double>(v.dim()));
  put(rec, "residual_idempotent", r_idem);
  put(rec, "residual_symmetric", r_symm);
  put(rec, "residual_reflexive", r_refl);
  put(rec, "choi_min_eig", choi_min);
  put(rec, "degree_trace_err", trace_err);
  put(rec, "degree_min_eig", eig.values(0));
  put(rec, "degree_simple", simple_spectrum(eig.values, cfg.tol_gap));
  put(rec, "laws_ok", r_idem < cfg.tol_law && r_symm < cfg.tol_law &&
                          r_refl < cfg.tol_law && choi_min > -cfg.tol_law &&
                          trace_err < cfg.tol_law);
}

void trial_qg_duality(const ExperimentConfig& cfg, SeededRng& rng, TrialRecord& rec) {
  const int span = cfg.n * cfg.n - 2;
  const int d = cfg.d ? *cfg.d
                      : 1 + static_cast<int>(rng.next_below(
                                static_cast<std::uint64_t>(span)));
  int redraws = 0;
  OperatorSystem v = sample_qg_nd(cfg.n, d, rng, &redraws);
  OperatorSystem w = orthogonal_complement_system(v);
  StabilizerAlgebra sv = stabilizer_lie_algebra(v, cfg.tol_rank);
  StabilizerAlgebra sw = stabilizer_lie_algebra(w, cfg.tol_rank);
  put(rec, "n", iv(cfg.n));
  put(rec, "d", iv(d));
  put(rec, "dim_v", iv(sv.dim()));
  put(rec, "dim_complement", iv(sw.dim()));
  put(rec, "agree", sv.dim() == sw.dim());
}

void trial_qg_degree(const ExperimentConfig& cfg, SeededRng& rng, TrialRecord& rec) {
  OperatorSystem v = sample_system(cfg, rng, rec);
  const Eig eig = eig_hermitian(degree_matrix(v));
  put(rec, "degree_simple", simple_spectrum(eig.values, cfg.tol_gap));
  put(rec, "min_gap", min_eigen_gap(eig.values));
}

void trial_graph_rigidity(const ExperimentConfig& cfg, SeededRng& rng,
                          TrialRecord& rec) {
  Graph g = cfg.p ? sample_gnp(cfg.n, *cfg.p, rng) : sample_gnr(cfg.n, *cfg.r, rng);
  put(rec, "n", iv(cfg.n));
  if (cfg.p) put(rec, "p", *cfg.p);
  if (cfg.r) put(rec, "r", iv(*cfg.r));
  put(rec, "edges", iv(g.edge_count()));
  const RigidityCertificate cert = quantum_rigidity_certificate(g, cfg.tol_gap);
  put(rec, "spectrum_simple", cert.spectrum_simple);
  put(rec, "thick", cert.thick);
  put(rec, "no_zero_coordinates", cert.no_zero_coordinates);
  put(rec, "profiles_distinct", cert.distance_profiles_distinct);
  put(rec, "classical_aut", std::string(to_string(cert.classical_aut)));
  put(rec, "verdict", std::string(to_string(cert.verdict)));
}

void trial_gm_demo(const ExperimentConfig& cfg, SeededRng& rng, TrialRecord& rec) {
  Graph g = sample_gnr(cfg.n, *cfg.r, rng);
  std::vector<int> order(static_cast<std::size_t>(cfg.n));
  for (int i = 0; i < cfg.n; ++i) order[static_cast<std::size_t>(i)] = i;
  rng.shuffle(order);
  std::vector<int> vprime(order.begin(), order.begin() + cfg.n / 2);
  const ObstructionReport report = quantum_isomorphism_obstruction(g, vprime);
  put(rec, "n", iv(cfg.n));
  put(rec, "r", iv(*cfg.r));
  put(rec, "isospectral", report.isospectral);
  put(rec, "apex_unique_max_degree", report.apex_unique_max_degree);
  put(rec, "profiles_distinct", report.base_profiles_distinct);
  put(rec, "base_quantum_trivial", report.base_quantum_trivial);
  put(rec, "partitions_differ", report.partitions_differ);
  put(rec, "verdict", std::string(to_string(report.verdict)));
}

void trial_explicit_tuple(const ExperimentConfig& cfg, SeededRng& rng,
                          TrialRecord& rec) {
  OperatorSystem v = explicit_rigid_tuple(cfg.n, *cfg.d, rng);
  const ComplexMatrix deg = degree_matrix(v);
  ComplexMatrix off = deg;
  off.diagonal().setZero();
  const Eig eig = eig_hermitian(deg);
  StabilizerAlgebra stab = stabilizer_lie_algebra(v, cfg.tol_rank);
  std::string phase_group = "unsupported";
  try {
    phase_group = diagonal_phase_solver(v).trivial() ? "trivial" : "nontrivial";
  } catch (const UnsupportedPattern&) {
  }
  put(rec, "n", iv(cfg.n));
  put(rec, "d", iv(*cfg.d));
  put(rec, "degree_diagonal", off.norm() < tol::eig);
  put(rec, "degree_simple", simple_spectrum(eig.values, cfg.tol_gap));
  put(rec, "stabilizer_dim", iv(stab.dim()));
  put(rec, "phase_group", std::move(phase_group));
}

void run_single_trial(const ExperimentConfig& cfg, SeededRng& rng, TrialRecord& rec) {
  switch (cfg.kind) {
    case ExperimentKind::QgAut:
      trial_qg_aut(cfg, rng, rec);
      return;
    case ExperimentKind::QgAxioms:
      trial_qg_axioms(cfg, rng, rec);
      return;
    case ExperimentKind::QgDuality:
      trial_qg_duality(cfg, rng, rec);
      return;
    case ExperimentKind::QgDegree:
      trial_qg_degree(cfg, rng, rec);
      return;
    case ExperimentKind::GraphRigidity:
      trial_graph_rigidity(cfg, rng, rec);
      return;
    case ExperimentKind::GmDemo:
      trial_gm_demo(cfg, rng, rec);
      return;
    case ExperimentKind::ExplicitTuple:
      trial_explicit_tuple(cfg, rng, rec);
      return;
  }
}

unsigned resolve_workers(unsigned configured) {
  if (configured != 0) return configured;
  if (const char* env = std::getenv("QGLAB_WORKERS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value >= 1 && value <= 4096) {
      return static_cast<unsigned>(value);
    }
  }
  return default_worker_count();
}

// --- JSONL encoding ---------------------------------------------------------

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void append_double(std::string& out, double x) {
  if (std::isnan(x)) {
    out += "\"nan\"";
  } else if (std::isinf(x)) {
    out += x > 0 ? "\"inf\"" : "\"-inf\"";
  } else {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
  }
}

void append_value(std::string& out, const TrialValue& value) {
  if (const bool* b = std::get_if<bool>(&value)) {
    out += *b ? "true" : "false";
  } else if (const std::int64_t* i = std::get_if<std::int64_t>(&value)) {
    out += std::to_string(*i);
  } else if (const double* x = std::get_if<double>(&value)) {
    append_double(out, *x);
  } else {
    append_escaped(out, std::get<std::string>(value));
  }
}

}  // namespace

std::string records_to_jsonl(const std::vector<TrialRecord>& records) {
  std::string out;
  for (const auto& rec : records) {
    out += "{\"trial\":";
    out += std::to_string(rec.trial_index);
    out += ",\"seed_stream\":";
    out += std::to_string(rec.seed_stream);
    for (const auto& [key, value] : rec.fields) {
      out += ",\"";
      out += key;
      out += "\":";
      append_value(out, value);
    }
    if (rec.failed()) {
      out += ",\"error\":";
      append_escaped(out, rec.error);
    }
    out += "}\n";
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const unsigned workers = resolve_workers(config.workers);
  ExperimentResult result;
  result.records.resize(static_cast<std::size_t>(config.trials));
  const SeededRng master(config.seed);
  parallel_for(static_cast<std::size_t>(config.trials), workers, [&](std::size_t t) {
    SeededRng rng = master.derive(t);
    TrialRecord rec;
    rec.trial_index = static_cast<int>(t);
    rec.seed_stream = rng.stream_index();
    try {
      run_single_trial(config, rng, rec);
    } catch (const std::exception& e) {
      rec.fields.clear();
      rec.error = e.what();
    }
    result.records[t] = std::move(rec);
  });
  for (const auto& rec : result.records) {
    if (rec.failed()) ++result.failed_trials;
  }
  result.jsonl = records_to_jsonl(result.records);
  if (!config.out_path.empty()) {
    std::ofstream out(config.out_path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + config.out_path);
    out << result.jsonl;
    if (!out) throw Error("write failure: " + config.out_path);
  }
  return result;
}

// --- Summaries ---------------------------------------------------------------

SummaryReport summarize_jsonl(const std::string& jsonl_text) {
  using nlohmann::json;
  SummaryReport report;
  std::vector<std::string> order;
  std::map<std::string, MetricSummary> metrics;
  std::istringstream in(jsonl_text);
  std::string line;
  long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    json rec = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (rec.is_discarded() || !rec.is_object()) {
      throw Error("summarize: malformed record on line " + std::to_string(line_number));
    }
    ++report.records;
    if (rec.contains("error")) ++report.failed;
    for (const auto& [key, value] : rec.items()) {
      if (key == "trial" || key == "seed_stream" || key == "error") continue;
      double numeric = 0.0;
      bool is_numeric = true;
      std::string text;
      if (value.is_boolean()) {
        numeric = value.get<bool>() ? 1.0 : 0.0;
      } else if (value.is_number()) {
        numeric = value.get<double>();
      } else if (value.is_string()) {
        text = value.get<std::string>();
        if (text == "inf") {
          numeric = std::numeric_limits<double>::infinity();
        } else if (text == "-inf") {
          numeric = -std::numeric_limits<double>::infinity();
        } else if (text == "nan") {
          numeric = std::numeric_limits<double>::quiet_NaN();
        } else {
          is_numeric = false;
        }
      } else {
        throw Error("summarize: unsupported value for \"" + key + "\" on line " +
                    std::to_string(line_number));
      }
      auto [it, inserted] = metrics.try_emplace(key);
      MetricSummary& m = it->second;
      if (inserted) {
        m.name = key;
        m.numeric = is_numeric;
        order.push_back(key);
      }
      if (m.numeric != is_numeric) {
        throw Error("summarize: mixed types for \"" + key + "\" on line " +
                    std::to_string(line_number));
      }
      ++m.count;
      if (is_numeric) {
        if (m.count == 1) {
          m.mean = m.min = m.max = numeric;
        } else {
          m.mean += (numeric - m.mean) / static_cast<double>(m.count);
          m.min = std::min(m.min, numeric);
          m.max = std::max(m.max, numeric);
        }
      } else {
        ++m.value_counts[text];
      }
    }
  }
  if (report.records == 0) throw Error("summarize: no records in input");
  for (const auto& key : order) report.metrics.push_back(metrics[key]);
  return report;
}

SummaryReport summarize_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return summarize_jsonl(buffer.str());
}

namespace {

std::string csv_double(double x) {
  std::string out;
  append_double(out, x);
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') {
    out = out.substr(1, out.size() - 2);
  }
  return out;
}

}  // namespace

std::string summary_to_csv(const SummaryReport& report) {
  std::string out = "metric,count,mean,min,max\n";
  for (const auto& m : report.metrics) {
    if (m.numeric) {
      out += m.name + "," + std::to_string(m.count) + "," + csv_double(m.mean) + "," +
             csv_double(m.min) + "," + csv_double(m.max) + "\n";
    } else {
      for (const auto& [value, count] : m.value_counts) {
        out += m.name + "=" + value + "," + std::to_string(count) + ",,,\n";
      }
    }
  }
  return out;
}

std::string summary_to_table(const SummaryReport& report) {
  std::ostringstream out;
  out << "records: " << report.records << "  failed: " << report.failed << "\n";
  for (const auto& m : report.metrics) {
    if (m.numeric) {
      out << "  " << m.name << ": count=" << m.count << " mean=" << csv_double(m.mean)
          << " min=" << csv_double(m.min) << " max=" << csv_double(m.max) << "\n";
    } else {
      out << "  " << m.name << ":";
      for (const auto& [value, count] : m.value_counts) {
        out << " " << value << "=" << count;
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace qglab
