#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qglab/matrix.hpp"

namespace qglab {

// One sweep kind per CLI subcommand.
enum class ExperimentKind {
  QgAut,          // stabilizer Lie algebra of random QG(n,d) / QG(n,p)
  QgAxioms,       // quantum adjacency law residuals on random systems
  QgDuality,      // stabilizer dimensions of V vs its complement system
  QgDegree,       // degree-matrix spectra of random systems
  GraphRigidity,  // rigidity certificates for G(n,p) / G(n,r)
  GmDemo,         // switching pairs: isospectrality + obstruction
  ExplicitTuple,  // deterministic rigid tuple construction + verification
};

const char* to_string(ExperimentKind kind);
std::optional<ExperimentKind> experiment_from_string(const std::string& name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::QgAut;
  int n = 0;
  std::optional<int> d;
  std::optional<double> p;
  std::optional<int> r;
  int trials = 1;
  std::uint64_t seed = 0;
  // 0 = use QGLAB_WORKERS from the environment, falling back to the hardware
  // thread count.  The records are byte-identical for every worker count.
  unsigned workers = 0;
  std::string out_path;  // empty = do not write a file

  // Tolerance overrides.
  double tol_gap = tol::gap;        // simple-spectrum gap
  double tol_rank = tol::rank_rel;  // stabilizer rank cut
  double tol_law = tol::law;        // law residual threshold (recorded only)

  // Throws ParameterOutOfRange when the parameters do not fit the kind
  // (wrong / missing model parameter, out-of-range values).
  void validate() const;
};

using TrialValue = std::variant<bool, std::int64_t, double, std::string>;

// One per-trial record; `fields` keeps a fixed per-experiment key order so
// serialization is reproducible.  A trial that threw carries only `error`.
struct TrialRecord {
  int trial_index = 0;
  std::uint64_t seed_stream = 0;
  std::vector<std::pair<std::string, TrialValue>> fields;
  std::string error;

  bool failed() const { return !error.empty(); }
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  int failed_trials = 0;
  std::string jsonl;  // exactly what was (or would be) written to out_path
};

// Runs config.trials independent trials (trial t uses the RNG stream derived
// from (seed, t)), in parallel over the resolved worker count, collecting one
// record per trial in index order.  A trial that throws is recorded with its
// error message and does not abort the sweep.  When out_path is set the JSONL
// serialization is also written there (single writer, trial order).
ExperimentResult run_experiment(const ExperimentConfig& config);

// JSONL encoding of the records, one JSON object per line, keys in record
// order, doubles with 17 significant digits, non-finite doubles as the
// strings "inf"/"-inf"/"nan".  Byte-identical across reruns and worker
// counts for a fixed config.
std::string records_to_jsonl(const std::vector<TrialRecord>& records);

// Aggregate view of a records file.
struct MetricSummary {
  std::string name;
  long count = 0;     // records carrying this metric
  bool numeric = true;
  // Numeric metrics (booleans count as 0/1, so mean = fraction true).
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  // String metrics: value -> occurrences.
  std::map<std::string, long> value_counts;
};

struct SummaryReport {
  long records = 0;
  long failed = 0;
  std::vector<MetricSummary> metrics;  // first-seen field order
};

// Parses JSONL records (throws Error naming the 1-based line on a malformed
// record; empty input is an error) and aggregates per-metric statistics.
SummaryReport summarize_jsonl(const std::string& jsonl_text);
SummaryReport summarize_file(const std::string& path);

// metric,count,mean,min,max rows; string metrics expand to one
// "name=value",count row per observed value (mean/min/max blank).
std::string summary_to_csv(const SummaryReport& report);

// Human-readable table for standard output.
std::string summary_to_table(const SummaryReport& report);

}  // namespace qglab
