#include "cqlearn/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cqlearn/errors.hpp"
#include "cqlearn/io.hpp"

namespace cqlearn {

using nlohmann::json;

LearnerKind learner_from_name(const std::string& name) {
  if (name == "erm01") return LearnerKind::kErm01;
  if (name == "erm-nc") return LearnerKind::kErmNoiseCorrected;
  if (name == "mindis") return LearnerKind::kMinDisagreement;
  if (name == "realizable") return LearnerKind::kRealizable;
  throw SpecError("unknown learner '" + name +
                  "' (expected erm01 | erm-nc | mindis | realizable)");
}

std::string learner_name(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kErm01: return "erm01";
    case LearnerKind::kErmNoiseCorrected: return "erm-nc";
    case LearnerKind::kMinDisagreement: return "mindis";
    case LearnerKind::kRealizable: return "realizable";
  }
  return "?";
}

Hypothesis run_learner(LearnerKind kind, const ClassicalSample& sample,
                       const ConceptClass& cls, const NoisePair& rates,
                       const LearnerConfig& config) {
  switch (kind) {
    case LearnerKind::kErm01:
      return erm_01(sample, cls);
    case LearnerKind::kErmNoiseCorrected:
      return erm_noise_corrected(sample, cls, rates);
    case LearnerKind::kMinDisagreement: {
      const std::size_t m = sample.items.size();
      const double cap = noisy_split_capacity(config.eta_bound);
      std::size_t m1;
      if (double(m) >= 2.0 * (1.0 + cap)) {
        m1 = laird_split(m, config.eta_bound).m1;
      } else {
        m1 = std::min((m + 1) / 2, m > 1 ? m - 1 : m);
      }
      if (m < 2) return erm_01(sample, cls);
      return min_disagreement(sample, cls, m1);
    }
    case LearnerKind::kRealizable:
      return realizable_learner(sample, cls, config);
  }
  throw SpecError("unreachable learner kind");
}

ExperimentResult run_experiment(const Experiment& plan, unsigned threads,
                                bool record_timing) {
  if (plan.grid.empty()) throw SpecError("experiment grid must be non-empty");
  if (plan.trials < 1) throw SpecError("experiment needs trials >= 1");

  const NoisePair rates =
      error_rates(plan.povm, plan.labels.sigma0, plan.labels.sigma1);
  const double optimal = optimal_class_risk(plan.cls, plan.mu, plan.labels);

  ExperimentResult result;
  result.records.resize(plan.grid.size() * plan.trials);
  std::vector<std::string> errors(result.records.size());

  auto run_one = [&](std::size_t flat) {
    const std::size_t grid_index = flat / plan.trials;
    const std::size_t trial = flat % plan.trials;
    const GridPoint& gp = plan.grid[grid_index];
    TrialRecord& rec = result.records[flat];
    rec.m = gp.m;
    rec.trial = trial;
    rec.grid_index = grid_index;
    rec.seed = derive_seed(plan.master_seed, grid_index, trial);
    const auto start = std::chrono::steady_clock::now();
    try {
      RandomSource rng(rec.seed);
      const QuantumSample qs = draw_quantum_sample(plan.mu, gp.m, rng.child(0));
      const ClassicalSample cs =
          measure_labels(qs, plan.povm, plan.labels, rng.child(1));
      LearnerConfig config{gp.epsilon, gp.delta, plan.eta_bound};
      const Hypothesis h = run_learner(plan.learner, cs, plan.cls, rates, config);
      rec.excess_risk = true_risk(h, plan.mu, plan.labels) - optimal;
    } catch (const std::exception& e) {
      rec.excess_risk = std::numeric_limits<double>::quiet_NaN();
      errors[flat] = e.what();
    }
    if (record_timing) {
      const auto stop = std::chrono::steady_clock::now();
      rec.elapsed_ms =
          std::chrono::duration<double, std::milli>(stop - start).count();
    }
  };

  const std::size_t total = result.records.size();
  if (threads <= 1 || total < 2) {
    for (std::size_t i = 0; i < total; ++i) run_one(i);
  } else {
    // Preassigned record slots keep parallel output identical to serial.
    std::vector<std::thread> pool;
    const unsigned n_threads = std::min<unsigned>(threads, unsigned(total));
    for (unsigned w = 0; w < n_threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < total; i += n_threads) run_one(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  for (auto& e : errors) {
    if (!e.empty()) result.errors.push_back(std::move(e));
  }
  return result;
}

void write_trial_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "m,trial,seed,excess_risk,elapsed_ms\n";
  char buf[160];
  for (const TrialRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%zu,%zu,%llu,%.17g,%.3f\n", r.m, r.trial,
                  (unsigned long long)r.seed, r.excess_risk, r.elapsed_ms);
    out << buf;
  }
}

std::vector<TrialRecord> read_trial_csv(std::istream& in) {
  std::vector<TrialRecord> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("m,", 0) == 0) continue;  // header
    }
    TrialRecord r;
    unsigned long long seed = 0;
    if (std::sscanf(line.c_str(), "%zu,%zu,%llu,%lf,%lf", &r.m, &r.trial, &seed,
                    &r.excess_risk, &r.elapsed_ms) != 5) {
      throw SpecError("bad CSV row: " + line);
    }
    r.seed = seed;
    out.push_back(r);
  }
  return out;
}

Summary summarize(const std::vector<TrialRecord>& records,
                  const std::vector<double>& epsilons, double delta) {
  if (records.empty()) throw SpecError("summarize: no records");
  if (epsilons.empty()) throw SpecError("summarize: no epsilons");

  Summary s;
  s.epsilons = epsilons;

  std::vector<std::size_t> ms;
  for (const auto& r : records) ms.push_back(r.m);
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

  for (std::size_t m : ms) {
    std::vector<double> excesses;
    std::size_t total = 0, nan_count = 0;
    for (const auto& r : records) {
      if (r.m != m) continue;
      ++total;
      if (std::isnan(r.excess_risk)) {
        ++nan_count;  // failed trial: counts against every epsilon below
      } else {
        excesses.push_back(r.excess_risk);
      }
    }
    std::sort(excesses.begin(), excesses.end());
    SummaryRow row;
    row.m = m;
    row.trials = total;
    if (excesses.empty()) {
      row.mean_excess = std::numeric_limits<double>::quiet_NaN();
      row.median_excess = row.mean_excess;
      row.q90_excess = row.mean_excess;
    } else {
      double acc = 0.0;
      for (double e : excesses) acc += e;
      row.mean_excess = acc / double(excesses.size());
      row.median_excess = excesses[excesses.size() / 2];
      row.q90_excess = excesses[std::size_t(0.9 * double(excesses.size() - 1))];
    }
    for (double eps : epsilons) {
      std::size_t failures = nan_count;
      for (double e : excesses) {
        if (!(e <= eps)) ++failures;
      }
      row.failure_freq.push_back(double(failures) / double(total));
    }
    s.per_m.push_back(std::move(row));
  }

  for (std::size_t ei = 0; ei < epsilons.size(); ++ei) {
    std::optional<std::size_t> mstar;
    for (const auto& row : s.per_m) {
      if (row.failure_freq[ei] <= delta) {
        mstar = row.m;
        break;
      }
    }
    s.m_star.push_back(mstar);
  }

  // Least-squares slope of log m* against log epsilon.
  std::vector<std::pair<double, double>> pts;
  for (std::size_t ei = 0; ei < epsilons.size(); ++ei) {
    if (s.m_star[ei] && *s.m_star[ei] > 0) {
      pts.emplace_back(std::log(epsilons[ei]), std::log(double(*s.m_star[ei])));
    }
  }
  if (pts.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = double(pts.size());
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) > 1e-12) {
      s.slope = (n * sxy - sx * sy) / denom;
      s.slope_valid = true;
    }
  }
  return s;
}

TwoOutcomePovm symmetric_noise_povm(const LabelPair& labels, double eta) {
  if (!(eta >= 0.0 && eta < 0.5)) {
    throw SpecError("symmetric_noise_povm: eta must lie in [0, 1/2)");
  }
  const TwoOutcomePovm hh = holevo_helstrom(labels.sigma0, labels.sigma1);
  ComplexMatrix e1 = ComplexMatrix((1.0 - eta) * hh.e1().raw() +
                                   eta * hh.e0().raw());
  ComplexMatrix e0 = ComplexMatrix(hh.e0().raw() * (1.0 - eta) +
                                   eta * hh.e1().raw());
  return TwoOutcomePovm(std::move(e0), std::move(e1));
}

namespace {

DomainPtr domain_from_json(const json& j) {
  if (j.contains("points")) {
    if (j["points"].is_number_integer()) {
      return Domain::line(j["points"].get<int>());
    }
    std::vector<Instance> pts;
    for (const auto& p : j["points"]) {
      Instance inst;
      inst.id = p.at("id").get<std::string>();
      if (p.contains("coords")) {
        for (const auto& c : p["coords"]) inst.coords.push_back(c.get<double>());
      }
      pts.push_back(std::move(inst));
    }
    return std::make_shared<Domain>(std::move(pts));
  }
  if (j.contains("grid")) {
    std::vector<int> sides;
    for (const auto& s : j["grid"]) sides.push_back(s.get<int>());
    return Domain::grid(sides);
  }
  throw SpecError("class spec needs 'points' or 'grid'");
}

ConceptClass class_from_json(const json& j, const std::string& base_dir) {
  if (j.contains("file")) {
    return read_concept_class_file(base_dir + "/" + j["file"].get<std::string>());
  }
  const std::string generator = j.value("generator", "thresholds");
  DomainPtr dom = domain_from_json(j);
  if (generator == "thresholds") return thresholds_class(dom);
  if (generator == "axis-rectangles") return axis_rectangles_class(dom);
  if (generator == "balls") return balls_class(dom);
  if (generator == "ground-state-noise") return ground_state_noise_class(dom);
  if (generator == "full-binary") return full_binary_class(dom);
  throw SpecError("unknown class generator '" + generator + "'");
}

LabelPair labels_from_json(const json& j, const std::string& base_dir) {
  if (j.contains("files")) {
    const auto& files = j["files"];
    if (!files.is_array() || files.size() != 2) {
      throw SpecError("labels.files must list two state files");
    }
    return LabelPair(
        read_state_file(base_dir + "/" + files[0].get<std::string>()),
        read_state_file(base_dir + "/" + files[1].get<std::string>()));
  }
  const std::string named = j.value("named", "orthogonal");
  if (named == "orthogonal") return LabelPair::orthogonal(j.value("dim", 2));
  if (named == "ground-state" || named == "example1") {
    return LabelPair::ground_state_pair();
  }
  if (named == "overlap") {
    return LabelPair::pure_with_overlap(j.at("c").get<double>());
  }
  throw SpecError("unknown label pair '" + named + "'");
}

TwoOutcomePovm povm_from_json(const json& j, const LabelPair& labels) {
  const std::string named = j.value("named", "hh");
  if (named == "hh") return holevo_helstrom(labels.sigma0, labels.sigma1);
  if (named == "symmetric") {
    return symmetric_noise_povm(labels, j.at("eta").get<double>());
  }
  throw SpecError("unknown povm '" + named + "'");
}

LabeledDistribution distribution_from_json(const json& j,
                                           const ConceptClass& cls,
                                           const LabelPair& labels,
                                           const std::string& base_dir) {
  if (j.contains("file")) {
    return read_distribution_file(base_dir + "/" + j["file"].get<std::string>(),
                                  cls.domain());
  }
  const std::string generator = j.value("generator", "realizable");
  if (generator == "realizable") {
    const std::size_t idx = j.at("concept").get<std::size_t>();
    if (idx >= cls.size()) throw SpecError("distribution concept index out of range");
    LabeledDistribution base =
        LabeledDistribution::uniform_from_concept(cls.member(idx));
    const double flip = j.value("flip", 0.0);
    return flip > 0.0 ? base.flip_labels(flip) : base;
  }
  if (generator == "hard-pair") {
    const auto w = find_disagreement(cls);
    if (!w) throw SpecError("hard-pair: class has no disagreement point");
    auto [plus, minus] = agnostic_hard_pair(
        cls.member(w->f), cls.member(w->g), w->x,
        j.at("epsilon").get<double>(), labels);
    return j.value("sign", "+") == "+" ? plus : minus;
  }
  if (generator == "hard-family") {
    std::vector<std::size_t> shattered;
    for (const auto& id : j.at("instances")) {
      shattered.push_back(cls.domain()->index_of(id.get<std::string>()));
    }
    const std::string a_str = j.at("a").get<std::string>();
    std::vector<std::uint8_t> a;
    for (char ch : a_str) a.push_back(ch == '1' ? 1 : 0);
    return agnostic_hard_family(cls.domain(), shattered, a,
                                j.at("epsilon").get<double>(), labels);
  }
  throw SpecError("unknown distribution generator '" + generator + "'");
}

}  // namespace

Experiment resolve_experiment_json(const std::string& json_text,
                                   const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw SpecError(std::string("bad experiment JSON: ") + e.what());
  }

  const std::string scenario = j.value("scenario", "agnostic");
  if (scenario != "agnostic" && scenario != "realizable") {
    throw SpecError("scenario must be 'agnostic' or 'realizable'");
  }

  ConceptClass cls = class_from_json(j.value("class", json{{"points", 50}}),
                                     base_dir);
  LabelPair labels =
      labels_from_json(j.value("labels", json{{"named", "orthogonal"}}), base_dir);
  TwoOutcomePovm povm =
      povm_from_json(j.value("povm", json{{"named", "hh"}}), labels);
  LabeledDistribution mu = distribution_from_json(
      j.value("distribution", json{{"generator", "realizable"}, {"concept", 0}}),
      cls, labels, base_dir);

  Experiment exp{scenario,
                 std::move(cls),
                 std::move(labels),
                 std::move(povm),
                 std::move(mu),
                 learner_from_name(j.value("learner", "erm-nc")),
                 0.0,
                 {},
                 j.value("trials", std::size_t(1)),
                 j.value("master_seed", std::uint64_t(0))};

  const NoisePair rates =
      error_rates(exp.povm, exp.labels.sigma0, exp.labels.sigma1);
  exp.eta_bound = j.value("eta_bound", std::max(rates.eta0, rates.eta1));
  if (exp.eta_bound >= 0.5) {
    throw GuardError("measurement noise leaves eta_bound >= 1/2");
  }

  const json grid = j.value("grid", json::object());
  const double delta = grid.value("delta", 0.05);
  std::vector<double> eps_list;
  if (grid.contains("epsilon")) {
    if (grid["epsilon"].is_array()) {
      for (const auto& e : grid["epsilon"]) eps_list.push_back(e.get<double>());
    } else {
      eps_list.push_back(grid["epsilon"].get<double>());
    }
  } else {
    eps_list.push_back(0.1);
  }
  std::vector<std::size_t> m_list;
  if (grid.contains("m")) {
    if (grid["m"].is_array()) {
      for (const auto& m : grid["m"]) m_list.push_back(m.get<std::size_t>());
    } else {
      m_list.push_back(grid["m"].get<std::size_t>());
    }
  } else {
    m_list.push_back(100);
  }
  for (std::size_t m : m_list) {
    for (double eps : eps_list) {
      exp.grid.push_back(GridPoint{m, eps, delta});
    }
  }
  return exp;
}

}  // namespace cqlearn
