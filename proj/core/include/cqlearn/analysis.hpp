#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cqlearn/concepts.hpp"
#include "cqlearn/learners.hpp"
#include "cqlearn/qstate.hpp"
#include "cqlearn/sampling.hpp"

namespace cqlearn {

// Binary entropy in bits, 0 log 0 := 0.
double binary_entropy(double p);

// Exact risk (||sigma0 - sigma1||_1 / 2) P_{(x,b)~mu}[h(x) != b], summed
// over the finite support.
double true_risk(const Hypothesis& h, const LabeledDistribution& mu,
                 const LabelPair& labels);
double true_risk(const Concept& f, const LabeledDistribution& mu,
                 const LabelPair& labels);

// inf over the class of the true risk (exhaustive scan).
double optimal_class_risk(const ConceptClass& cls,
                          const LabeledDistribution& mu,
                          const LabelPair& labels);

struct RiskReport {
  double true_risk = 0.0;
  double optimal_class_risk = 0.0;
  double excess = 0.0;
  std::optional<double> intermediate_risk;
};
RiskReport risk_report(const Hypothesis& h, const ConceptClass& cls,
                       const LabeledDistribution& mu, const LabelPair& labels);

// Plain 0-1 risk under the post-measurement law nu.
double intermediate_risk(const Hypothesis& g, const LabeledDistribution& nu);

// Both sides of the measured-vs-true risk identity for the minimum-error
// measurement,
//   R~_nu(g) = (||s0-s1||_1/2) P_mu[h != rho] + tr[s0 E1]
//              + (tr[s1 E0] - tr[s0 E1]) E_mu1[g],
// plus the two sandwich bounds it implies. The identity uses
// tr[(s1 - s0) E1] = ||s0 - s1||_1 / 2, so it holds for the Holevo-Helstrom
// measurement; identity_holds records the 1e-10 check.
struct RiskComparison {
  double intermediate = 0.0;        // R~_nu(g)
  double identity_rhs = 0.0;
  double risk_mu = 0.0;             // R_mu(h)
  double eta0 = 0.0, eta1 = 0.0;
  double expectation_g = 0.0;       // E_mu1[g]
  double sandwich_low = 0.0, sandwich_high = 0.0;     // bounds on R_mu(h)
  bool identity_holds = false;
  // Excess-risk sandwich, present when a class is supplied:
  // |excess_nu - excess_mu| <= |eta0 - eta1|.
  std::optional<double> excess_mu, excess_nu, excess_slack;
};
RiskComparison risk_comparison(const Hypothesis& g,
                               const LabeledDistribution& mu,
                               const LabelPair& labels,
                               const TwoOutcomePovm& povm,
                               const ConceptClass* cls = nullptr);

// Exact empirical Rademacher complexity by enumeration of all 2^n sign
// vectors over the rows of a value matrix (rows = functions).
double empirical_rademacher_exact(const std::vector<std::vector<double>>& values);
// Monte Carlo estimate with n_samples random sign vectors.
double empirical_rademacher_mc(const std::vector<std::vector<double>>& values,
                               std::size_t n_samples, RandomSource& rng);
// Concept-class convenience (values are the 0/1 labels on the instances).
// Exact mode requires |instances| <= 20.
double empirical_rademacher(const ConceptClass& cls,
                            const std::vector<std::size_t>& instances);

struct BoundReport {
  long long m_sufficient = 0;
  double shape_value = 0.0;  // un-constanted (d + log 1/delta) / eps^k shape
  std::map<std::string, double> constants;
};

// m >= (||s0-s1||_1^2 / 4 eps^2) (124 sqrt(d) / (1-eta0-eta1)
//       + 5 sqrt(2 ln(8/delta)) / (1-eta0-eta1))^2, rounded up.
BoundReport agnostic_sample_bound(int d, const LearnerConfig& config,
                                  const LabelPair& labels,
                                  const NoisePair& noise);

// m = floor(c C(eta_b) / eps (d + ln(18/delta))) with c = 7200. The report
// also carries the literal split-size formulas of the minimum-disagreement
// algorithm and the 4/(1-2 eta_b)^2 relaxation of C.
BoundReport realizable_sample_bound(int d, const LearnerConfig& config);

// Single-copy distinguishing diagnostics for a hard pair mu_+/mu_-
// supported on one common instance.
struct DistinguishingReport {
  double lambda = 0.0;               // bias of the pair construction
  double fidelity_exact = 0.0;       // F(rho_+, rho_-)
  double fidelity_lower = 0.0;       // strong concavity: sum sqrt(p q)
  double p_opt_upper = 0.0;          // (1 + sqrt(1 - F^{2m})) / 2
  long long minimal_m = 0;           // ceil(log(4 d (1-d)) / log F^2)
  double delta = 0.0;
};
DistinguishingReport distinguishing_diagnostics(
    const LabeledDistribution& mu_plus, const LabeledDistribution& mu_minus,
    const LabelPair& labels, std::size_t m, double delta);

struct InfoReport {
  double exact_bits = 0.0;
  double closed_form_bits = 0.0;
  double leading_order_bits = 0.0;
};

// Mutual information I(A : B_1) between a uniformly random bit-string of
// length d and one example drawn from the matching hard-family
// distribution, for pure label states. Exact path sums block eigenvalues;
// requires d <= 8.
InfoReport mutual_info_single_example(int d, double epsilon,
                                      const LabelPair& labels);

// Realizable variant: exact entropies from the explicit eigenvalue lists,
// closed form -(lambda/2)(log2((1-c^2)/4) + c log2((1+c)/(1-c))).
InfoReport realizable_mutual_info(int d, double epsilon,
                                  const LabelPair& labels);

// Certification-game check: expected rejection probability of h under the
// minimum-error test, minus the best achievable, equals R_mu(h) / 2.
// Requires equal purity of the label states.
struct TeacherGameReport {
  double expected_rejection = 0.0;
  double optimal_rejection = 0.0;
  double gap = 0.0;
  double half_risk = 0.0;
};
TeacherGameReport teacher_game_check(const Hypothesis& h,
                                     const LabeledDistribution& mu,
                                     const LabelPair& labels);

std::size_t hamming_distance(const std::vector<std::uint8_t>& a,
                             const std::vector<std::uint8_t>& b);
std::size_t hamming_distance(const std::string& a, const std::string& b);

}  // namespace cqlearn
