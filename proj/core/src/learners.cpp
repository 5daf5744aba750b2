#include "cqlearn/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cqlearn/errors.hpp"

namespace cqlearn {

void LearnerConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw SpecError("LearnerConfig: epsilon must lie in (0, 1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw SpecError("LearnerConfig: delta must lie in (0, 1)");
  }
  if (!(eta_bound >= 0.0 && eta_bound < 0.5)) {
    throw SpecError("LearnerConfig: eta_bound must lie in [0, 1/2)");
  }
}

bool LearnerConfig::delta_in_guarantee_range(int d) const {
  if (d < 1) return true;
  const double bound = 2.0 * std::pow(2.0 * std::exp(1.0) / double(d), d);
  return delta < bound;
}

Hypothesis hypothesis_from_concept(const Concept& c, std::string provenance) {
  return Hypothesis{c.domain(), c.labels(), std::move(provenance)};
}

double noise_corrected_loss(int y1, int y2, const NoisePair& noise) {
  noise.require_invertible();
  const double eta_match = y2 ? noise.eta1 : noise.eta0;     // eta_{y2}
  const double eta_other = y2 ? noise.eta0 : noise.eta1;     // eta_{1 xor y2}
  const double numer = (y1 != y2) ? (1.0 - eta_other) : -eta_match;
  return numer / (1.0 - noise.eta0 - noise.eta1);
}

namespace {

// Per-instance observation counts; ERM over enumerable classes reduces to a
// weighted scan over the domain.
struct Counts {
  std::vector<std::size_t> n0, n1;  // observed 0s / 1s per instance

  explicit Counts(const ClassicalSample& sample, std::size_t domain_size)
      : n0(domain_size, 0), n1(domain_size, 0) {
    for (const auto& [point, y] : sample.items) {
      if (point >= domain_size) throw SpecError("sample point out of range");
      (y ? n1 : n0)[point] += 1;
    }
  }
};

Hypothesis erm_scan(const ClassicalSample& sample, const ConceptClass& cls,
                    const NoisePair& noise, const char* tag) {
  if (sample.items.empty()) throw SpecError("ERM requires a non-empty sample");
  const std::size_t n = cls.domain()->size();
  const Counts counts(sample, n);
  // Loss values for the four (prediction, observation) cells.
  const double l10 = noise_corrected_loss(1, 0, noise);
  const double l00 = noise_corrected_loss(0, 0, noise);
  const double l01 = noise_corrected_loss(0, 1, noise);
  const double l11 = noise_corrected_loss(1, 1, noise);
  // Only the disagreement counts vary across members:
  //   total = c10 (l10 - l00) + c01 (l01 - l11) + const.
  // Keeping the counts integral until one final product makes ties bitwise
  // exact, so the lowest-index rule and the symmetric-noise argmin identity
  // with plain 0-1 ERM hold without float fuzz.
  const double a_coef = l10 - l00;
  const double b_coef = l01 - l11;

  std::size_t total0 = 0, total1 = 0;
  for (std::size_t p = 0; p < n; ++p) {
    total0 += counts.n0[p];
    total1 += counts.n1[p];
  }

  double best = std::numeric_limits<double>::infinity();
  std::size_t best_idx = 0;
  for (std::size_t m = 0; m < cls.size(); ++m) {
    const auto& labels = cls.member_labels(m);
    std::size_t c10 = 0, c01 = 0;  // predicted 1/observed 0, predicted 0/observed 1
    for (std::size_t p = 0; p < n; ++p) {
      if (labels[p]) {
        c10 += counts.n0[p];
      } else {
        c01 += counts.n1[p];
      }
    }
    const double key = (a_coef == b_coef)
                           ? double(c10 + c01) * a_coef
                           : double(c10) * a_coef + double(c01) * b_coef;
    if (key < best) {
      best = key;
      best_idx = m;
    }
  }
  const double empirical =
      (best + double(total0) * l00 + double(total1) * l11) /
      double(sample.items.size());
  return hypothesis_from_concept(
      cls.member(best_idx), std::string(tag) + "[" + std::to_string(best_idx) +
                                "] empirical=" + std::to_string(empirical));
}

}  // namespace

Hypothesis erm_noise_corrected(const ClassicalSample& sample,
                               const ConceptClass& cls,
                               const NoisePair& noise) {
  noise.require_invertible();
  return erm_scan(sample, cls, noise, "erm-nc");
}

Hypothesis erm_01(const ClassicalSample& sample, const ConceptClass& cls) {
  return erm_scan(sample, cls, NoisePair(0.0, 0.0), "erm01");
}

namespace {

// Shared implementation allowing m1 == |sample| (empty test part: every
// representative ties at zero disagreements and the lowest index wins).
Hypothesis min_disagreement_impl(const ClassicalSample& sample,
                                 const ConceptClass& cls, std::size_t m1) {
  const std::size_t n = cls.domain()->size();
  std::vector<std::size_t> s1_points;
  s1_points.reserve(m1);
  for (std::size_t i = 0; i < m1; ++i) s1_points.push_back(sample.items[i].first);
  const SamplePartition part = s_equivalence_classes(cls, s1_points);

  // Aggregate the test part once; disagreements of a representative are a
  // domain-sized dot product instead of a pass over the sample.
  std::vector<std::size_t> t0(n, 0), t1(n, 0);
  for (std::size_t i = m1; i < sample.items.size(); ++i) {
    const auto& [point, y] = sample.items[i];
    (y ? t1 : t0)[point] += 1;
  }

  std::size_t best_rep = 0;
  std::size_t best_disagreements = std::numeric_limits<std::size_t>::max();
  for (std::size_t r = 0; r < part.representatives.size(); ++r) {
    const auto& labels = cls.member_labels(part.representatives[r]);
    std::size_t dis = 0;
    for (std::size_t p = 0; p < n; ++p) {
      dis += labels[p] ? t0[p] : t1[p];
    }
    if (dis < best_disagreements) {
      best_disagreements = dis;
      best_rep = r;
    }
  }
  const std::size_t member = part.representatives[best_rep];
  return hypothesis_from_concept(
      cls.member(member),
      "mindis[" + std::to_string(member) + "] disagreements=" +
          std::to_string(best_disagreements));
}

}  // namespace

Hypothesis min_disagreement(const ClassicalSample& sample,
                            const ConceptClass& cls, std::size_t m1) {
  if (sample.items.empty()) {
    throw SpecError("min_disagreement requires a non-empty sample");
  }
  if (m1 < 1 || m1 >= sample.items.size()) {
    throw SpecError("min_disagreement: m1 out of range");
  }
  return min_disagreement_impl(sample, cls, m1);
}

double noisy_split_capacity(double eta_bound) {
  if (!(eta_bound >= 0.0 && eta_bound < 0.5)) {
    throw SpecError("eta_bound must lie in [0, 1/2)");
  }
  const double gap = 1.0 - 2.0 * eta_bound;
  return 2.0 / (1.0 - std::exp(-0.5 * gap * gap));
}

LairdSplit laird_split(std::size_t m, double eta_bound) {
  const double capacity = noisy_split_capacity(eta_bound);
  if (double(m) < 2.0 * (1.0 + capacity)) {
    throw SpecError("laird_split: m below 2 (1 + C(eta_b))");
  }
  const auto m2 =
      std::size_t(std::ceil(capacity / (1.0 + capacity) * double(m)));
  return LairdSplit{m - m2, m2};
}

Hypothesis realizable_learner(const ClassicalSample& sample,
                              const ConceptClass& cls,
                              const LearnerConfig& config) {
  config.validate();
  if (sample.items.empty()) {
    throw SpecError("realizable_learner requires a non-empty sample");
  }
  const double capacity = noisy_split_capacity(config.eta_bound);
  const auto parts = subsamples(sample.items, {});

  const std::size_t n = cls.domain()->size();
  std::vector<std::size_t> votes(n, 0);
  for (const auto& items : parts) {
    ClassicalSample sub{items};
    const std::size_t msub = items.size();
    std::size_t m1;
    if (double(msub) >= 2.0 * (1.0 + capacity)) {
      m1 = laird_split(msub, config.eta_bound).m1;
    } else {
      // Short-subsample fallback: an even split keeps both phases non-empty.
      m1 = std::min((msub + 1) / 2, msub);
    }
    const Hypothesis h = min_disagreement_impl(sub, cls, m1);
    for (std::size_t p = 0; p < n; ++p) votes[p] += h.labels[p];
  }

  std::vector<std::uint8_t> labels(n, 0);
  for (std::size_t p = 0; p < n; ++p) {
    if (2 * votes[p] > parts.size()) labels[p] = 1;  // ties predict 0
  }
  return Hypothesis{cls.domain(), std::move(labels),
                    "realizable voters=" + std::to_string(parts.size())};
}

}  // namespace cqlearn
