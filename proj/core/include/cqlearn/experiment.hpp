#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cqlearn/analysis.hpp"
#include "cqlearn/concepts.hpp"
#include "cqlearn/learners.hpp"
#include "cqlearn/qstate.hpp"
#include "cqlearn/sampling.hpp"

namespace cqlearn {

enum class LearnerKind { kErm01, kErmNoiseCorrected, kMinDisagreement, kRealizable };
LearnerKind learner_from_name(const std::string& name);
std::string learner_name(LearnerKind kind);

struct GridPoint {
  std::size_t m = 0;
  double epsilon = 0.1;
  double delta = 0.05;
};

// Fully resolved experiment: every referenced name already turned into an
// object. run_experiment is deterministic given master_seed.
struct Experiment {
  std::string scenario;  // "agnostic" | "realizable" (reporting only)
  ConceptClass cls;
  LabelPair labels;
  TwoOutcomePovm povm;
  LabeledDistribution mu;
  LearnerKind learner = LearnerKind::kErmNoiseCorrected;
  double eta_bound = 0.0;  // noise bound handed to the split-based learners
  std::vector<GridPoint> grid;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
};

struct TrialRecord {
  std::size_t m = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double excess_risk = 0.0;
  double elapsed_ms = 0.0;
  std::size_t grid_index = 0;  // bookkeeping; not part of the CSV schema
};

struct ExperimentResult {
  std::vector<TrialRecord> records;  // ordered by (grid_index, trial)
  std::vector<std::string> errors;   // per-trial failures, non-fatal
};

// Runs every grid point x trial. Per-trial seed is
// derive_seed(master_seed, grid_index, trial_index). With record_timing
// false (the default) elapsed_ms is written as zero so identical seeds give
// byte-identical CSV output.
ExperimentResult run_experiment(const Experiment& plan, unsigned threads = 1,
                                bool record_timing = false);

// One learning run on an explicit sample (shared by run_experiment and the
// single-run CLI path).
Hypothesis run_learner(LearnerKind kind, const ClassicalSample& sample,
                       const ConceptClass& cls, const NoisePair& rates,
                       const LearnerConfig& config);

// CSV with fixed schema "m,trial,seed,excess_risk,elapsed_ms".
void write_trial_csv(std::ostream& out, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_trial_csv(std::istream& in);

struct SummaryRow {
  std::size_t m = 0;
  std::size_t trials = 0;
  double mean_excess = 0.0;
  double median_excess = 0.0;
  double q90_excess = 0.0;
  std::vector<double> failure_freq;  // aligned with the epsilon list
};

struct Summary {
  std::vector<double> epsilons;
  std::vector<SummaryRow> per_m;                    // ascending m
  std::vector<std::optional<std::size_t>> m_star;   // minimal m with failure <= delta
  double slope = 0.0;       // log-log fit of m_star against epsilon
  bool slope_valid = false; // needs >= 2 defined m_star values
};

Summary summarize(const std::vector<TrialRecord>& records,
                  const std::vector<double>& epsilons, double delta);

// Builds the named measurement variants used by experiments: the
// minimum-error measurement itself, or its symmetric blend
// E1' = (1 - eta) E1 + eta E0 (error rates (eta, eta) for orthogonal pure
// labels).
TwoOutcomePovm symmetric_noise_povm(const LabelPair& labels, double eta);

// Resolves a JSON experiment description (see README for the schema) into
// an Experiment. base_dir anchors relative file references.
Experiment resolve_experiment_json(const std::string& json_text,
                                   const std::string& base_dir = ".");

}  // namespace cqlearn
