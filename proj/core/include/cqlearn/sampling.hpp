#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cqlearn/concepts.hpp"
#include "cqlearn/qstate.hpp"
#include "cqlearn/random.hpp"

namespace cqlearn {

// The two label states. Must have equal dimension and positive trace
// distance.
struct LabelPair {
  DensityMatrix sigma0;
  DensityMatrix sigma1;

  LabelPair(DensityMatrix s0, DensityMatrix s1);

  const DensityMatrix& state(std::uint8_t bit) const {
    return bit ? sigma1 : sigma0;
  }
  double trace_dist() const;

  // |phi0> = (0,1,0), |phi1> = (1,-1,0)/sqrt(2): the ground-state noise
  // label pair used throughout the tests and docs.
  static LabelPair ground_state_pair();
  // |0><0|, |1><1| in C^dim.
  static LabelPair orthogonal(int dim = 2);
  // Pure qubit pair with a given overlap c in [0, 1).
  static LabelPair pure_with_overlap(double c);
};

// Finite-support probability measure over instance x bit pairs.
class LabeledDistribution {
 public:
  struct Atom {
    std::size_t point;   // index into the domain
    std::uint8_t bit;
    double prob;
  };

  LabeledDistribution(DomainPtr domain, std::vector<Atom> support);

  const DomainPtr& domain() const { return domain_; }
  const std::vector<Atom>& support() const { return support_; }

  double mass(std::size_t point, std::uint8_t bit) const;
  double marginal(std::size_t point) const;
  // P(bit = 1 | point); throws if the point has zero marginal.
  double conditional_one(std::size_t point) const;

  // Marginal-times-concept measure: realizable by construction.
  static LabeledDistribution from_concept(
      DomainPtr domain, const std::vector<double>& marginal, const Concept& f);
  static LabeledDistribution uniform_from_concept(const Concept& f);

  // Independent label flips with probability q applied to the bit part.
  LabeledDistribution flip_labels(double q) const;

 private:
  DomainPtr domain_;
  std::vector<Atom> support_;
};

// i.i.d. draws (instance, latent bit). The latent bit identifies the
// attached label state sigma_b; learners never see it.
struct QuantumSample {
  std::vector<std::pair<std::size_t, std::uint8_t>> items;
};

struct ClassicalSample {
  std::vector<std::pair<std::size_t, std::uint8_t>> items;
};

// m i.i.d. draws; deterministic given the source's seed. Draw i consumes
// one uniform from child stream i.
QuantumSample draw_quantum_sample(const LabeledDistribution& mu, std::size_t m,
                                  const RandomSource& rng);

// Measures each example's label state with the povm; observed bit i is
// Bernoulli(tr[E1 sigma_latent]) from child stream i.
ClassicalSample measure_labels(const QuantumSample& sample,
                               const TwoOutcomePovm& povm,
                               const LabelPair& labels,
                               const RandomSource& rng);

// Exact law of (x, y) after measuring: nu_1 = mu_1 and
// nu(y|x) = sum_b mu(b|x) tr[sigma_b E_y].
LabeledDistribution induced_nu(const LabeledDistribution& mu,
                               const TwoOutcomePovm& povm,
                               const LabelPair& labels);

// Hard pair mu_+/mu_- at a single point x with f(x)=0, g(x)=1:
// mu_pm(x, 0) = (1 +- lambda)/2, mu_pm(x, 1) = (1 -+ lambda)/2 where
// lambda = epsilon / (2 ||sigma0 - sigma1||_1). Requires
// epsilon < ||sigma0 - sigma1||_1 / (2 sqrt(2)).
std::pair<LabeledDistribution, LabeledDistribution> agnostic_hard_pair(
    const Concept& f, const Concept& g, std::size_t x, double epsilon,
    const LabelPair& labels);

// mu_a(i, b) = (1/2d) (1 + (-1)^{a_i + b} 8 epsilon / ||sigma0 - sigma1||_1)
// on the shattered instances. Requires epsilon < ||sigma0 - sigma1||_1 / 8.
LabeledDistribution agnostic_hard_family(
    DomainPtr domain, const std::vector<std::size_t>& shattered,
    const std::vector<std::uint8_t>& a, double epsilon,
    const LabelPair& labels);

// Realizable two-point measure: mu(x1) = 1 - lambda, mu(x2) = lambda with
// lambda = 2 epsilon / ||sigma0 - sigma1||_1, composed with the target.
LabeledDistribution realizable_hard_pair(const Concept& target, std::size_t x1,
                                         std::size_t x2, double epsilon,
                                         const LabelPair& labels);

// Realizable shattered-family measure: mu(s_0) = 1 - lambda,
// mu(s_i) = lambda / d with lambda = 8 epsilon / ||sigma0 - sigma1||_1 and
// labels f_a(s_0) = 0, f_a(s_i) = a_i.
LabeledDistribution realizable_hard_family(
    DomainPtr domain, const std::vector<std::size_t>& s /* s_0..s_d */,
    const std::vector<std::uint8_t>& a, double epsilon,
    const LabelPair& labels);

}  // namespace cqlearn
