// Command-line front end: state discrimination, bound tables, lower-bound
// diagnostics, single learning runs, seeded experiment grids, and VC
// dimension, all on top of the core library.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cqlearn/analysis.hpp"
#include "cqlearn/errors.hpp"
#include "cqlearn/experiment.hpp"
#include "cqlearn/io.hpp"

namespace {

using namespace cqlearn;

LabelPair labels_from_flags(const std::string& named, double overlap,
                            const std::string& file0, const std::string& file1) {
  if (!file0.empty() || !file1.empty()) {
    if (file0.empty() || file1.empty()) {
      throw SpecError("both --state0 and --state1 are required");
    }
    return LabelPair(read_state_file(file0), read_state_file(file1));
  }
  if (named == "orthogonal") return LabelPair::orthogonal(2);
  if (named == "ground-state" || named == "example1") {
    return LabelPair::ground_state_pair();
  }
  if (named == "overlap") return LabelPair::pure_with_overlap(overlap);
  throw SpecError("unknown label pair '" + named + "'");
}

void print_matrix(const char* name, const ComplexMatrix& m) {
  std::printf("%s =\n", name);
  for (int r = 0; r < m.dim(); ++r) {
    std::printf("  ");
    for (int c = 0; c < m.dim(); ++c) {
      std::printf("%s ", format_complex(m(r, c), 6).c_str());
    }
    std::printf("\n");
  }
}

int cmd_discriminate(const LabelPair& labels, bool show_effects) {
  const double t = labels.trace_dist();
  const double f = fidelity(labels.sigma0, labels.sigma1);
  const TwoOutcomePovm povm = holevo_helstrom(labels.sigma0, labels.sigma1);
  const NoisePair rates = error_rates(povm, labels.sigma0, labels.sigma1);
  std::printf("trace_distance      %.12g\n", t);
  std::printf("fidelity            %.12g\n", f);
  std::printf("success_probability %.12g\n",
              helstrom_success_probability(labels.sigma0, labels.sigma1));
  std::printf("eta0                %.12g\n", rates.eta0);
  std::printf("eta1                %.12g\n", rates.eta1);
  if (show_effects) {
    print_matrix("E0", povm.e0());
    print_matrix("E1", povm.e1());
  }
  return 0;
}

int cmd_bounds(int d, double epsilon, double delta, double eta_bound,
               const LabelPair& labels) {
  const TwoOutcomePovm povm = holevo_helstrom(labels.sigma0, labels.sigma1);
  const NoisePair rates = error_rates(povm, labels.sigma0, labels.sigma1);
  const LearnerConfig agn_cfg{epsilon, delta, 0.0};
  const BoundReport agn = agnostic_sample_bound(d, agn_cfg, labels, rates);

  const double eta_b =
      eta_bound >= 0.0 ? eta_bound : std::max(rates.eta0, rates.eta1);
  const LearnerConfig rea_cfg{epsilon, delta, eta_b};
  const BoundReport rea = realizable_sample_bound(d, rea_cfg);

  std::printf("d                    %d\n", d);
  std::printf("epsilon              %.6g\n", epsilon);
  std::printf("delta                %.6g\n", delta);
  std::printf("eta0, eta1           %.6g  %.6g\n", rates.eta0, rates.eta1);
  std::printf("eta_bound            %.6g\n", eta_b);
  std::printf("m_agnostic           %lld\n", agn.m_sufficient);
  std::printf("m_realizable         %lld\n", rea.m_sufficient);
  for (const auto& [key, value] : agn.constants) {
    std::printf("agnostic.%-12s %.10g\n", key.c_str(), value);
  }
  for (const auto& [key, value] : rea.constants) {
    std::printf("realizable.%-10s %.10g\n", key.c_str(), value);
  }
  return 0;
}

int cmd_diagnose(int d, const std::vector<double>& epsilons, double delta,
                 const LabelPair& labels, const std::string& out_path) {
  std::ostringstream csv;
  csv << "epsilon,delta,d,m_lower_pair,m_lower_vc,m_upper_agnostic,"
         "m_upper_realizable,I_exact_bits,I_closed_bits\n";
  const double t = labels.trace_dist();
  const TwoOutcomePovm povm = holevo_helstrom(labels.sigma0, labels.sigma1);
  const NoisePair rates = error_rates(povm, labels.sigma0, labels.sigma1);
  const bool pure = std::abs(labels.sigma0.purity() - 1.0) < 1e-9 &&
                    std::abs(labels.sigma1.purity() - 1.0) < 1e-9;

  auto dom = Domain::line(1);
  const ConceptClass pair_cls(dom, {{0}, {1}});

  for (double eps : epsilons) {
    // Confidence lower bound from the two-distribution construction.
    std::string m_pair = "nan";
    if (eps < t / (2.0 * std::sqrt(2.0))) {
      auto [plus, minus] = agnostic_hard_pair(pair_cls.member(0),
                                              pair_cls.member(1), 0, eps, labels);
      const DistinguishingReport r =
          distinguishing_diagnostics(plus, minus, labels, 1, delta);
      if (r.minimal_m >= 0) m_pair = std::to_string(r.minimal_m);
    }

    // Information-theoretic d-dependent lower bound:
    // m >= [(1 - H(1/4) - delta) d - H(delta)] / I(A:B1).
    std::string m_vc = "nan";
    std::string i_exact = "nan", i_closed = "nan";
    if (pure && eps < t / 8.0) {
      const InfoReport info =
          mutual_info_single_example(std::min(d, 8), eps, labels);
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.10g", info.exact_bits);
      i_exact = buf;
      std::snprintf(buf, sizeof(buf), "%.10g", info.closed_form_bits);
      i_closed = buf;
      const double numer =
          (1.0 - binary_entropy(0.25) - delta) * d - binary_entropy(delta);
      if (info.exact_bits > 0.0 && numer > 0.0) {
        m_vc = std::to_string((long long)std::ceil(numer / info.exact_bits));
      }
    }

    const BoundReport agn =
        agnostic_sample_bound(d, LearnerConfig{eps, delta, 0.0}, labels, rates);
    const BoundReport rea = realizable_sample_bound(
        d, LearnerConfig{eps, delta, std::max(rates.eta0, rates.eta1)});

    char line[320];
    std::snprintf(line, sizeof(line), "%g,%g,%d,%s,%s,%lld,%lld,%s,%s\n", eps,
                  delta, d, m_pair.c_str(), m_vc.c_str(), agn.m_sufficient,
                  rea.m_sufficient, i_exact.c_str(), i_closed.c_str());
    csv << line;
  }

  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    write_text_file(out_path, csv.str());
    std::printf("wrote %s\n", out_path.c_str());
  }
  return 0;
}

struct NumericOverrides {
  std::optional<double> epsilon, delta, eta_bound;

  void apply(Experiment& exp) const {
    for (GridPoint& g : exp.grid) {
      if (epsilon) g.epsilon = *epsilon;
      if (delta) g.delta = *delta;
    }
    if (eta_bound) exp.eta_bound = *eta_bound;
  }
};

int cmd_learn(const std::string& config_path, std::optional<std::size_t> m,
              std::optional<std::uint64_t> seed,
              const std::string& learner_override,
              const NumericOverrides& overrides,
              const std::string& hypothesis_out) {
  const std::string text =
      config_path.empty() ? std::string("{}") : read_text_file(config_path);
  Experiment exp = resolve_experiment_json(text, ".");
  if (m) {
    exp.grid = {GridPoint{*m, exp.grid.front().epsilon, exp.grid.front().delta}};
  }
  exp.grid.resize(1);
  exp.trials = 1;
  if (seed) exp.master_seed = *seed;
  if (!learner_override.empty()) {
    exp.learner = learner_from_name(learner_override);
  }
  overrides.apply(exp);

  const NoisePair rates =
      error_rates(exp.povm, exp.labels.sigma0, exp.labels.sigma1);
  RandomSource rng(derive_seed(exp.master_seed, 0, 0));
  const QuantumSample qs =
      draw_quantum_sample(exp.mu, exp.grid[0].m, rng.child(0));
  const ClassicalSample cs =
      measure_labels(qs, exp.povm, exp.labels, rng.child(1));
  const LearnerConfig config{exp.grid[0].epsilon, exp.grid[0].delta,
                             exp.eta_bound};
  const Hypothesis h = run_learner(exp.learner, cs, exp.cls, rates, config);
  const RiskReport report = risk_report(h, exp.cls, exp.mu, exp.labels);

  std::printf("learner        %s\n", learner_name(exp.learner).c_str());
  std::printf("m              %zu\n", exp.grid[0].m);
  std::printf("seed           %llu\n", (unsigned long long)exp.master_seed);
  std::printf("true_risk      %.12g\n", report.true_risk);
  std::printf("optimal_risk   %.12g\n", report.optimal_class_risk);
  std::printf("excess_risk    %.12g\n", report.excess);
  std::printf("provenance     %s\n", h.provenance.c_str());
  if (!hypothesis_out.empty()) {
    write_hypothesis_table(hypothesis_out, h);
    std::printf("wrote %s\n", hypothesis_out.c_str());
  }
  return 0;
}

int cmd_experiment(const std::string& config_path,
                   std::optional<std::size_t> trials,
                   std::optional<std::uint64_t> seed,
                   const NumericOverrides& overrides, const std::string& out,
                   unsigned threads, bool timing) {
  const std::string text =
      config_path.empty() ? std::string("{}") : read_text_file(config_path);
  Experiment exp = resolve_experiment_json(text, ".");
  if (trials) exp.trials = *trials;
  if (seed) exp.master_seed = *seed;
  overrides.apply(exp);

  const ExperimentResult res = run_experiment(exp, threads, timing);
  for (const std::string& err : res.errors) {
    std::fprintf(stderr, "trial error: %s\n", err.c_str());
  }

  std::ostringstream csv;
  write_trial_csv(csv, res.records);
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    write_text_file(out, csv.str());
    std::printf("wrote %s (%zu records)\n", out.c_str(), res.records.size());
  }

  // Per-grid summary against the grid's epsilon values.
  std::vector<double> epsilons;
  for (const GridPoint& g : exp.grid) epsilons.push_back(g.epsilon);
  std::sort(epsilons.begin(), epsilons.end());
  epsilons.erase(std::unique(epsilons.begin(), epsilons.end()), epsilons.end());
  const Summary s = summarize(res.records, epsilons, exp.grid.front().delta);
  std::printf("m,trials,mean_excess");
  for (double e : epsilons) std::printf(",fail@%g", e);
  std::printf("\n");
  for (const SummaryRow& row : s.per_m) {
    std::printf("%zu,%zu,%.6g", row.m, row.trials, row.mean_excess);
    for (double f : row.failure_freq) std::printf(",%.4f", f);
    std::printf("\n");
  }
  if (s.slope_valid) {
    std::printf("fitted log-log slope of minimal m vs epsilon: %.4f\n", s.slope);
  }
  return 0;
}

int cmd_vcdim(const std::string& file, const std::string& generator, int points,
              const std::vector<int>& grid) {
  std::optional<ConceptClass> cls;
  if (!file.empty()) {
    cls = read_concept_class_file(file);
  } else {
    DomainPtr dom = grid.empty() ? Domain::line(points) : Domain::grid(grid);
    if (generator == "thresholds") {
      cls = thresholds_class(dom);
    } else if (generator == "axis-rectangles") {
      cls = axis_rectangles_class(dom);
    } else if (generator == "balls") {
      cls = balls_class(dom);
    } else if (generator == "ground-state-noise") {
      cls = ground_state_noise_class(dom);
    } else if (generator == "full-binary") {
      cls = full_binary_class(dom);
    } else {
      throw SpecError("unknown generator '" + generator + "'");
    }
  }
  std::printf("members %zu\n", cls->size());
  std::printf("vcdim   %d\n", vc_dimension_bruteforce(*cls));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PAC learning with classical instances and quantum labels"};
  app.require_subcommand(1);

  // Shared label-pair flags.
  std::string labels_named = "orthogonal";
  double labels_overlap = 0.5;
  std::string state0, state1;
  auto add_label_flags = [&](CLI::App* cmd) {
    cmd->add_option("--labels", labels_named,
                    "named pair: orthogonal | ground-state | overlap");
    cmd->add_option("--c", labels_overlap, "overlap for --labels overlap");
    cmd->add_option("--state0", state0, "state file for sigma0");
    cmd->add_option("--state1", state1, "state file for sigma1");
  };

  auto* disc = app.add_subcommand("discriminate",
                                  "Holevo-Helstrom measurement for a state pair");
  bool show_effects = false;
  add_label_flags(disc);
  disc->add_flag("--effects", show_effects, "print the measurement operators");

  auto* bounds = app.add_subcommand("bounds", "sample-complexity bound table");
  int d = 1;
  double epsilon = 0.1, delta = 0.05, eta_bound_flag = -1.0;
  bounds->add_option("--d", d, "VC dimension");
  bounds->add_option("--epsilon", epsilon, "accuracy");
  bounds->add_option("--delta", delta, "confidence");
  bounds->add_option("--eta-bound", eta_bound_flag,
                     "noise bound (default: measured HH rates)");
  add_label_flags(bounds);

  auto* diag = app.add_subcommand("diagnose", "lower/upper bound CSV over epsilon");
  std::vector<double> eps_grid{0.4, 0.2, 0.1, 0.05};
  std::string out_path;
  diag->add_option("--d", d, "VC dimension");
  diag->add_option("--epsilons", eps_grid, "epsilon grid");
  diag->add_option("--delta", delta, "confidence");
  diag->add_option("--out", out_path, "CSV output path (default stdout)");
  add_label_flags(diag);

  auto* learn = app.add_subcommand("learn", "single seeded learning run");
  std::string config_path, learner_override, hypothesis_out;
  std::size_t m_value = 0;
  std::uint64_t seed_value = 0;
  double eps_value = 0.0, delta_value = 0.0, eta_value = 0.0;
  learn->add_option("--config", config_path, "experiment JSON file");
  auto* m_flag = learn->add_option("--m", m_value, "sample size override");
  auto* seed_flag = learn->add_option("--seed", seed_value, "master seed override");
  learn->add_option("--learner", learner_override,
                    "erm01 | erm-nc | mindis | realizable");
  auto* eps_flag = learn->add_option("--epsilon", eps_value, "accuracy override");
  auto* delta_flag = learn->add_option("--delta", delta_value,
                                       "confidence override");
  auto* eta_flag = learn->add_option("--eta-bound", eta_value,
                                     "noise bound override");
  learn->add_option("--hypothesis-out", hypothesis_out,
                    "write the learned instance->bit table here");

  auto* expcmd = app.add_subcommand("experiment", "seeded Monte Carlo grid");
  std::size_t trials_value = 0;
  unsigned threads = 1;
  bool timing = false;
  expcmd->add_option("--config", config_path, "experiment JSON file");
  auto* trials_flag =
      expcmd->add_option("--trials", trials_value, "trials per grid point");
  auto* seed_flag2 =
      expcmd->add_option("--seed", seed_value, "master seed override");
  auto* eps_flag2 = expcmd->add_option("--epsilon", eps_value,
                                       "accuracy override (whole grid)");
  auto* delta_flag2 = expcmd->add_option("--delta", delta_value,
                                         "confidence override (whole grid)");
  auto* eta_flag2 = expcmd->add_option("--eta-bound", eta_value,
                                       "noise bound override");
  expcmd->add_option("--out", out_path, "CSV output path (default stdout)");
  expcmd->add_option("--threads", threads, "worker threads (records identical)");
  expcmd->add_flag("--timing", timing,
                   "record wall-clock per trial (breaks byte-identical output)");

  auto* vc = app.add_subcommand("vcdim", "brute-force VC dimension");
  std::string class_file, generator = "thresholds";
  int points = 10;
  std::vector<int> grid_sides;
  vc->add_option("--file", class_file, "concept class file");
  vc->add_option("--generator", generator,
                 "thresholds | axis-rectangles | balls | ground-state-noise | "
                 "full-binary");
  vc->add_option("--points", points, "line domain size");
  vc->add_option("--grid", grid_sides, "grid domain sides, e.g. --grid 5 5");

  CLI11_PARSE(app, argc, argv);

  try {
    std::optional<std::size_t> m_opt, trials_opt;
    std::optional<std::uint64_t> seed_opt;
    if (m_flag->count() > 0) m_opt = m_value;
    if (seed_flag->count() > 0 || seed_flag2->count() > 0) seed_opt = seed_value;
    if (trials_flag->count() > 0) trials_opt = trials_value;
    NumericOverrides overrides;
    if (eps_flag->count() > 0 || eps_flag2->count() > 0) {
      overrides.epsilon = eps_value;
    }
    if (delta_flag->count() > 0 || delta_flag2->count() > 0) {
      overrides.delta = delta_value;
    }
    if (eta_flag->count() > 0 || eta_flag2->count() > 0) {
      overrides.eta_bound = eta_value;
    }

    if (disc->parsed()) {
      return cmd_discriminate(
          labels_from_flags(labels_named, labels_overlap, state0, state1),
          show_effects);
    }
    if (bounds->parsed()) {
      return cmd_bounds(
          d, epsilon, delta, eta_bound_flag,
          labels_from_flags(labels_named, labels_overlap, state0, state1));
    }
    if (diag->parsed()) {
      return cmd_diagnose(
          d, eps_grid, delta,
          labels_from_flags(labels_named, labels_overlap, state0, state1),
          out_path);
    }
    if (learn->parsed()) {
      return cmd_learn(config_path, m_opt, seed_opt, learner_override,
                       overrides, hypothesis_out);
    }
    if (expcmd->parsed()) {
      return cmd_experiment(config_path, trials_opt, seed_opt, overrides,
                            out_path, threads, timing);
    }
    if (vc->parsed()) {
      return cmd_vcdim(class_file, generator, points, grid_sides);
    }
  } catch (const SpecError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const GuardError& e) {
    std::fprintf(stderr, "numerical guard: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
  return 0;
}
