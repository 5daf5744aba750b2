#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cqlearn/concepts.hpp"
#include "cqlearn/qstate.hpp"
#include "cqlearn/sampling.hpp"

namespace cqlearn {

struct LearnerConfig {
  double epsilon = 0.1;
  double delta = 0.05;
  double eta_bound = 0.0;  // known upper bound on both error rates, < 1/2

  void validate() const;
  // The improved realizable guarantee assumes delta < 2 (2e/d)^d; callers
  // outside that range still run but should surface the warning.
  bool delta_in_guarantee_range(int d) const;
};

// Total labelling produced by a learner, plus a note on how it was made.
struct Hypothesis {
  DomainPtr domain;
  std::vector<std::uint8_t> labels;
  std::string provenance;

  std::uint8_t operator()(std::size_t point) const { return labels[point]; }
};

Hypothesis hypothesis_from_concept(const Concept& c, std::string provenance);

// Unbiased surrogate for the 0-1 loss under two-sided label noise:
// l~(y1, y2) = [(1 - eta_{1 xor y2}) 1{y1 != y2} - eta_{y2} 1{y1 == y2}]
//              / (1 - eta0 - eta1).
double noise_corrected_loss(int y1, int y2, const NoisePair& noise);

// Proper ERM over the class w.r.t. the noise-corrected loss; ties broken by
// lowest member index.
Hypothesis erm_noise_corrected(const ClassicalSample& sample,
                               const ConceptClass& cls, const NoisePair& noise);

// Proper ERM w.r.t. the plain 0-1 loss.
Hypothesis erm_01(const ClassicalSample& sample, const ConceptClass& cls);

// Minimum disagreement: group members into equivalence classes on the first
// m1 instances, then return the representative with the fewest disagreements
// on the remaining examples (ties: lowest representative index).
Hypothesis min_disagreement(const ClassicalSample& sample,
                            const ConceptClass& cls, std::size_t m1);

// C(eta_b) = 2 / (1 - exp(-(1 - 2 eta_b)^2 / 2)).
double noisy_split_capacity(double eta_bound);

// Operational split m2 = ceil(C/(1+C) m), m1 = m - m2.
// Requires m >= 2 (1 + C(eta_b)).
struct LairdSplit {
  std::size_t m1 = 0;
  std::size_t m2 = 0;
};
LairdSplit laird_split(std::size_t m, double eta_bound);

// Recursive subsample generation. |s| <= 3 returns {s ++ t}; otherwise s is
// cut into S0 (first |s| - 3*floor(|s|/4)) and three contiguous quarters,
// and the three recursive calls' outputs are concatenated. Output count is
// always a power of 3.
template <typename T>
std::vector<std::vector<T>> subsamples(const std::vector<T>& s,
                                       const std::vector<T>& t);

// Majority vote over min-disagreement hypotheses run on every generated
// subsample; in general improper. Ties vote 0 (unreachable with 3^k voters).
Hypothesis realizable_learner(const ClassicalSample& sample,
                              const ConceptClass& cls,
                              const LearnerConfig& config);

// --- template definition ---

template <typename T>
std::vector<std::vector<T>> subsamples(const std::vector<T>& s,
                                       const std::vector<T>& t) {
  if (s.size() <= 3) {
    std::vector<T> joined = s;
    joined.insert(joined.end(), t.begin(), t.end());
    return {std::move(joined)};
  }
  const std::size_t q = s.size() / 4;
  const std::size_t head = s.size() - 3 * q;
  const std::vector<T> s0(s.begin(), s.begin() + head);
  const std::vector<T> s1(s.begin() + head, s.begin() + head + q);
  const std::vector<T> s2(s.begin() + head + q, s.begin() + head + 2 * q);
  const std::vector<T> s3(s.begin() + head + 2 * q, s.end());

  auto join = [&](const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> out = a;
    out.insert(out.end(), b.begin(), b.end());
    out.insert(out.end(), t.begin(), t.end());
    return out;
  };
  std::vector<std::vector<T>> out;
  for (const auto& tail : {join(s2, s3), join(s1, s3), join(s1, s2)}) {
    auto part = subsamples(s0, tail);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

}  // namespace cqlearn
