// qglab: seeded Monte Carlo sweeps over random quantum-graph models, with
// JSONL per-trial records, aggregate summaries, and the deterministic rigid
// tuple construction.  Exit codes: 0 success, 1 configuration error, 2 when
// some trials recorded errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qglab/errors.hpp"
#include "qglab/experiments.hpp"
#include "qglab/operator_system.hpp"
#include "qglab/rng.hpp"
#include "qglab/serialization.hpp"
#include "qglab/symmetry.hpp"

namespace {

struct ExperimentCli {
  std::string config_path;
  std::optional<int> n, d, r, trials;
  std::optional<double> p;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::string> out;
  std::optional<double> tol_gap, tol_rank, tol_law;
};

// Fills cfg from the JSON config file (when given), then lets explicit flags
// win field by field.
qglab::ExperimentConfig build_config(qglab::ExperimentKind kind, const ExperimentCli& cli) {
  qglab::ExperimentConfig cfg;
  cfg.kind = kind;
  if (!cli.config_path.empty()) {
    std::ifstream in(cli.config_path);
    if (!in) throw qglab::Error("cannot open config file: " + cli.config_path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
      throw qglab::Error("config file is not a JSON object: " + cli.config_path);
    }
    if (j.contains("experiment")) {
      const std::string name = j["experiment"].get<std::string>();
      if (name != qglab::to_string(kind)) {
        throw qglab::Error("config file is for experiment \"" + name +
                           "\" but the subcommand is \"" + qglab::to_string(kind) + "\"");
      }
    }
    if (j.contains("n")) cfg.n = j["n"].get<int>();
    if (j.contains("d")) cfg.d = j["d"].get<int>();
    if (j.contains("p")) cfg.p = j["p"].get<double>();
    if (j.contains("r")) cfg.r = j["r"].get<int>();
    if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("workers")) cfg.workers = j["workers"].get<unsigned>();
    if (j.contains("out")) cfg.out_path = j["out"].get<std::string>();
    if (j.contains("tol_gap")) cfg.tol_gap = j["tol_gap"].get<double>();
    if (j.contains("tol_rank")) cfg.tol_rank = j["tol_rank"].get<double>();
    if (j.contains("tol_law")) cfg.tol_law = j["tol_law"].get<double>();
  }
  if (cli.n) cfg.n = *cli.n;
  if (cli.d) cfg.d = *cli.d;
  if (cli.p) cfg.p = *cli.p;
  if (cli.r) cfg.r = *cli.r;
  if (cli.trials) cfg.trials = *cli.trials;
  if (cli.seed) cfg.seed = *cli.seed;
  if (cli.workers) cfg.workers = *cli.workers;
  if (cli.out) cfg.out_path = *cli.out;
  if (cli.tol_gap) cfg.tol_gap = *cli.tol_gap;
  if (cli.tol_rank) cfg.tol_rank = *cli.tol_rank;
  if (cli.tol_law) cfg.tol_law = *cli.tol_law;
  return cfg;
}

void add_experiment_options(CLI::App* sub, ExperimentCli& cli, bool wants_d,
                            bool wants_p, bool wants_r) {
  sub->add_option("--config", cli.config_path,
                  "JSON config file; explicit flags override its fields");
  sub->add_option("--n", cli.n, "matrix size / vertex count");
  if (wants_d) sub->add_option("--d", cli.d, "dimension parameter d");
  if (wants_p) sub->add_option("--p", cli.p, "probability parameter p");
  if (wants_r) sub->add_option("--r", cli.r, "regularity parameter r");
  sub->add_option("--trials", cli.trials, "number of trials");
  sub->add_option("--seed", cli.seed, "64-bit master seed");
  sub->add_option("--out", cli.out, "JSONL records output path");
  sub->add_option("--workers", cli.workers,
                  "worker threads (default: QGLAB_WORKERS or hardware)");
  sub->add_option("--tol-gap", cli.tol_gap, "simple-spectrum gap tolerance");
  sub->add_option("--tol-rank", cli.tol_rank, "stabilizer rank-cut tolerance");
  sub->add_option("--tol-law", cli.tol_law, "law residual threshold");
}

int run_sweep(qglab::ExperimentKind kind, const ExperimentCli& cli) {
  const qglab::ExperimentConfig cfg = build_config(kind, cli);
  const qglab::ExperimentResult result = qglab::run_experiment(cfg);
  std::cout << qglab::to_string(kind) << ": " << cfg.trials << " trials, seed "
            << cfg.seed << "\n";
  std::cout << qglab::summary_to_table(qglab::summarize_jsonl(result.jsonl));
  if (!cfg.out_path.empty()) {
    std::cout << "records written to " << cfg.out_path << "\n";
  }
  if (result.failed_trials > 0) {
    std::cerr << result.failed_trials << " trial(s) recorded errors\n";
    return 2;
  }
  return 0;
}

// Builds the deterministic rigid tuple, verifies it, and emits the operator
// system JSON with an extra "report" object (schema superset of the plain
// operator system format, so the standard loader still accepts it).
int run_explicit_tuple(const ExperimentCli& cli) {
  const qglab::ExperimentConfig cfg = build_config(qglab::ExperimentKind::ExplicitTuple, cli);
  cfg.validate();
  qglab::SeededRng rng(cfg.seed);
  const qglab::OperatorSystem v = qglab::explicit_rigid_tuple(cfg.n, *cfg.d, rng);

  const qglab::ComplexMatrix deg = qglab::degree_matrix(v);
  qglab::ComplexMatrix off = deg;
  off.diagonal().setZero();
  const qglab::Eig eig = qglab::eig_hermitian(deg);
  const qglab::StabilizerAlgebra stab = qglab::stabilizer_lie_algebra(v, cfg.tol_rank);
  std::string phase_group = "unsupported";
  try {
    phase_group = qglab::diagonal_phase_solver(v).trivial() ? "trivial" : "nontrivial";
  } catch (const qglab::UnsupportedPattern&) {
  }

  const bool degree_diagonal = off.norm() < qglab::tol::eig;
  const bool degree_simple = qglab::simple_spectrum(eig.values, cfg.tol_gap);
  nlohmann::json doc = nlohmann::json::parse(qglab::operator_system_to_json(v));
  nlohmann::json report;
  report["degree_diagonal"] = degree_diagonal;
  report["degree_simple"] = degree_simple;
  report["stabilizer"] = nlohmann::json::parse(qglab::to_json(stab));
  report["phase_group"] = phase_group;
  doc["report"] = std::move(report);

  std::cout << "explicit tuple n=" << cfg.n << " d=" << *cfg.d
            << ": degree_diagonal=" << (degree_diagonal ? "yes" : "no")
            << " degree_simple=" << (degree_simple ? "yes" : "no")
            << " stabilizer_dim=" << stab.dim() << " phase_group=" << phase_group << "\n";
  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw qglab::Error("cannot open for writing: " + cfg.out_path);
    out << doc.dump() << '\n';
    if (!out) throw qglab::Error("write failure: " + cfg.out_path);
    std::cout << "system written to " << cfg.out_path << "\n";
  }
  return 0;
}

int run_summarize(const std::string& path, const std::string& csv_path) {
  const qglab::SummaryReport report = qglab::summarize_file(path);
  std::cout << qglab::summary_to_table(report);
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw qglab::Error("cannot open for writing: " + csv_path);
    out << qglab::summary_to_csv(report);
    if (!out) throw qglab::Error("write failure: " + csv_path);
    std::cout << "summary written to " << csv_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for quantum graphs as operator systems"};
  app.require_subcommand(1);

  struct SweepSpec {
    qglab::ExperimentKind kind;
    const char* help;
    bool d, p, r;
  };
  const SweepSpec sweeps[] = {
      {qglab::ExperimentKind::QgAut, "stabilizer Lie algebra of random QG(n,d) / QG(n,p)",
       true, true, false},
      {qglab::ExperimentKind::QgAxioms, "quantum adjacency law residuals on random systems",
       true, true, false},
      {qglab::ExperimentKind::QgDuality,
       "stabilizer dimensions of V versus its complement system", true, false, false},
      {qglab::ExperimentKind::QgDegree, "degree-matrix spectra of random systems", true,
       true, false},
      {qglab::ExperimentKind::GraphRigidity,
       "quantum rigidity certificates for G(n,p) / G(n,r)", false, true, true},
      {qglab::ExperimentKind::GmDemo,
       "switching pairs: isospectrality and the non-isomorphism obstruction", false, false,
       true},
  };

  std::vector<std::pair<qglab::ExperimentKind, ExperimentCli>> sweep_clis;
  sweep_clis.reserve(std::size(sweeps) + 1);
  std::vector<CLI::App*> sweep_subs;
  for (const auto& spec : sweeps) {
    auto& entry = sweep_clis.emplace_back(spec.kind, ExperimentCli{});
    CLI::App* sub = app.add_subcommand(qglab::to_string(spec.kind), spec.help);
    add_experiment_options(sub, entry.second, spec.d, spec.p, spec.r);
    sweep_subs.push_back(sub);
  }

  auto& tuple_entry =
      sweep_clis.emplace_back(qglab::ExperimentKind::ExplicitTuple, ExperimentCli{});
  CLI::App* tuple_sub = app.add_subcommand(
      "explicit-tuple", "deterministic rigid tuple: system JSON plus verification report");
  add_experiment_options(tuple_sub, tuple_entry.second, true, false, false);

  std::string summarize_path, summarize_csv;
  CLI::App* summarize_sub =
      app.add_subcommand("summarize", "aggregate a JSONL records file");
  summarize_sub->add_option("path", summarize_path, "JSONL records file")->required();
  summarize_sub->add_option("--csv", summarize_csv, "also write a CSV summary here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (summarize_sub->parsed()) return run_summarize(summarize_path, summarize_csv);
    if (tuple_sub->parsed()) return run_explicit_tuple(tuple_entry.second);
    for (std::size_t i = 0; i < sweep_subs.size(); ++i) {
      if (sweep_subs[i]->parsed()) return run_sweep(sweep_clis[i].first, sweep_clis[i].second);
    }
  } catch (const qglab::ParameterOutOfRange& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
