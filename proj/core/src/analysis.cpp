#include "cqlearn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cqlearn/errors.hpp"

namespace cqlearn {

namespace {

constexpr double kIdentityTol = 1e-10;

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// |<psi0|psi1>| for a pure label pair: c^2 = tr[sigma0 sigma1].
double pure_overlap(const LabelPair& labels) {
  const double c2 =
      (labels.sigma0.raw() * labels.sigma1.raw()).trace().real();
  return std::sqrt(clamp01(c2));
}

void require_pure(const LabelPair& labels, const char* where) {
  if (std::abs(labels.sigma0.purity() - 1.0) > 1e-9 ||
      std::abs(labels.sigma1.purity() - 1.0) > 1e-9) {
    throw GuardError(std::string(where) + ": label states must be pure");
  }
}

}  // namespace

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw SpecError("binary_entropy: p out of range");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double true_risk(const Hypothesis& h, const LabeledDistribution& mu,
                 const LabelPair& labels) {
  const double scale = labels.trace_dist() / 2.0;
  double p_wrong = 0.0;
  for (const auto& atom : mu.support()) {
    if (atom.point >= h.labels.size()) {
      throw SpecError("true_risk: hypothesis not total on the support");
    }
    if (h.labels[atom.point] != atom.bit) p_wrong += atom.prob;
  }
  return scale * p_wrong;
}

double true_risk(const Concept& f, const LabeledDistribution& mu,
                 const LabelPair& labels) {
  return true_risk(Hypothesis{f.domain(), f.labels(), "concept"}, mu, labels);
}

double optimal_class_risk(const ConceptClass& cls,
                          const LabeledDistribution& mu,
                          const LabelPair& labels) {
  const double scale = labels.trace_dist() / 2.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < cls.size(); ++m) {
    const auto& lab = cls.member_labels(m);
    double p_wrong = 0.0;
    for (const auto& atom : mu.support()) {
      if (lab[atom.point] != atom.bit) p_wrong += atom.prob;
    }
    best = std::min(best, p_wrong);
  }
  return scale * best;
}

RiskReport risk_report(const Hypothesis& h, const ConceptClass& cls,
                       const LabeledDistribution& mu, const LabelPair& labels) {
  RiskReport r;
  r.true_risk = true_risk(h, mu, labels);
  r.optimal_class_risk = optimal_class_risk(cls, mu, labels);
  r.excess = r.true_risk - r.optimal_class_risk;
  return r;
}

double intermediate_risk(const Hypothesis& g, const LabeledDistribution& nu) {
  double p_wrong = 0.0;
  for (const auto& atom : nu.support()) {
    if (atom.point >= g.labels.size()) {
      throw SpecError("intermediate_risk: hypothesis not total on the support");
    }
    if (g.labels[atom.point] != atom.bit) p_wrong += atom.prob;
  }
  return p_wrong;
}

RiskComparison risk_comparison(const Hypothesis& g,
                               const LabeledDistribution& mu,
                               const LabelPair& labels,
                               const TwoOutcomePovm& povm,
                               const ConceptClass* cls) {
  RiskComparison out;
  const NoisePair rates = error_rates(povm, labels.sigma0, labels.sigma1);
  out.eta0 = rates.eta0;
  out.eta1 = rates.eta1;

  const LabeledDistribution nu = induced_nu(mu, povm, labels);
  out.intermediate = intermediate_risk(g, nu);
  out.risk_mu = true_risk(g, mu, labels);

  double e_g = 0.0;  // E_{mu_1}[g]
  for (const auto& atom : mu.support()) {
    if (g.labels[atom.point]) e_g += atom.prob;
  }
  out.expectation_g = e_g;
  out.identity_rhs =
      out.risk_mu + rates.eta0 + (rates.eta1 - rates.eta0) * e_g;
  out.identity_holds =
      std::abs(out.intermediate - out.identity_rhs) <= kIdentityTol;

  out.sandwich_low = out.intermediate - std::max(rates.eta0, rates.eta1);
  out.sandwich_high = out.intermediate - std::min(rates.eta0, rates.eta1);

  if (cls != nullptr) {
    const double opt_mu = optimal_class_risk(*cls, mu, labels);
    double opt_nu = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < cls->size(); ++m) {
      Hypothesis member{cls->domain(), cls->member_labels(m), ""};
      opt_nu = std::min(opt_nu, intermediate_risk(member, nu));
    }
    out.excess_mu = out.risk_mu - opt_mu;
    out.excess_nu = out.intermediate - opt_nu;
    out.excess_slack = std::abs(rates.eta0 - rates.eta1);
  }
  return out;
}

double empirical_rademacher_exact(
    const std::vector<std::vector<double>>& values) {
  if (values.empty()) throw SpecError("rademacher: empty function family");
  const std::size_t n = values.front().size();
  if (n == 0) throw SpecError("rademacher: empty instance list");
  if (n > 20) throw GuardError("rademacher exact mode limited to 20 points");
  for (const auto& row : values) {
    if (row.size() != n) throw SpecError("rademacher: ragged value matrix");
  }
  const std::size_t total = std::size_t(1) << n;
  double acc = 0.0;
  for (std::size_t mask = 0; mask < total; ++mask) {
    double sup = -std::numeric_limits<double>::infinity();
    for (const auto& row : values) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        s += ((mask >> i) & 1u) ? row[i] : -row[i];
      }
      sup = std::max(sup, s);
    }
    acc += sup;
  }
  return acc / double(total) / double(n);
}

double empirical_rademacher_mc(const std::vector<std::vector<double>>& values,
                               std::size_t n_samples, RandomSource& rng) {
  if (values.empty() || values.front().empty() || n_samples == 0) {
    throw SpecError("rademacher: empty inputs");
  }
  const std::size_t n = values.front().size();
  double acc = 0.0;
  std::vector<double> signs(n);
  for (std::size_t k = 0; k < n_samples; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      signs[i] = rng.uniform() < 0.5 ? -1.0 : 1.0;
    }
    double sup = -std::numeric_limits<double>::infinity();
    for (const auto& row : values) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += signs[i] * row[i];
      sup = std::max(sup, s);
    }
    acc += sup;
  }
  return acc / double(n_samples) / double(n);
}

double empirical_rademacher(const ConceptClass& cls,
                            const std::vector<std::size_t>& instances) {
  std::vector<std::vector<double>> values(cls.size(),
                                          std::vector<double>(instances.size()));
  for (std::size_t m = 0; m < cls.size(); ++m) {
    for (std::size_t i = 0; i < instances.size(); ++i) {
      values[m][i] = double(cls.label(m, instances[i]));
    }
  }
  return empirical_rademacher_exact(values);
}

BoundReport agnostic_sample_bound(int d, const LearnerConfig& config,
                                  const LabelPair& labels,
                                  const NoisePair& noise) {
  config.validate();
  if (d < 1) throw SpecError("agnostic_sample_bound: d must be positive");
  noise.require_invertible();
  const double t = labels.trace_dist();
  const double inv = 1.0 / (1.0 - noise.eta0 - noise.eta1);
  const double vc_term = 124.0 * std::sqrt(double(d)) * inv;
  const double conf_term =
      5.0 * std::sqrt(2.0 * std::log(8.0 / config.delta)) * inv;
  const double raw = t * t / (4.0 * config.epsilon * config.epsilon) *
                     (vc_term + conf_term) * (vc_term + conf_term);
  BoundReport rep;
  rep.m_sufficient = (long long)std::ceil(raw);
  rep.shape_value = (double(d) + std::log2(1.0 / config.delta)) /
                    (config.epsilon * config.epsilon);
  rep.constants = {
      {"trace_distance", t},
      {"inv_noise_gap", inv},
      {"vc_coefficient", 124.0},
      {"confidence_coefficient", 5.0},
      {"raw_value", raw},
  };
  return rep;
}

BoundReport realizable_sample_bound(int d, const LearnerConfig& config) {
  config.validate();
  if (d < 1) throw SpecError("realizable_sample_bound: d must be positive");
  const double c = 7200.0;
  const double capacity = noisy_split_capacity(config.eta_bound);
  const double raw =
      c * capacity / config.epsilon * (double(d) + std::log(18.0 / config.delta));
  BoundReport rep;
  rep.m_sufficient = (long long)std::floor(raw);
  rep.shape_value =
      (double(d) + std::log2(1.0 / config.delta)) / config.epsilon;

  // Literal input-size expressions of the minimum-disagreement algorithm
  // ("log" base 2, "ln" natural).
  const double m1_literal =
      std::max(8.0 / config.epsilon * std::log2(6.0 / config.delta),
               16.0 * double(d) / config.epsilon *
                   std::log2(16.0 * double(d) / config.epsilon));
  // ln((m1^d + 1) / d), evaluated in log space when m1^d overflows.
  const double d_ln_m1 = double(d) * std::log(m1_literal);
  double m2_log_term;
  if (d_ln_m1 > 700.0) {
    m2_log_term = d_ln_m1 - std::log(double(d));
  } else {
    m2_log_term = std::log((std::pow(m1_literal, double(d)) + 1.0) / double(d));
  }
  const double gap = 1.0 - 2.0 * config.eta_bound;
  const double m2_literal =
      2.0 / (config.epsilon * (1.0 - std::exp(-0.5 * gap * gap))) * m2_log_term;

  const double capacity_relaxed = 4.0 / (gap * gap);
  const double raw_relaxed =
      c * capacity_relaxed / config.epsilon *
      (double(d) + std::log(18.0 / config.delta));

  rep.constants = {
      {"c", c},
      {"capacity", capacity},                  // C(eta_b)
      {"capacity_relaxed", capacity_relaxed},  // 4 / (1 - 2 eta_b)^2
      {"m_relaxed", std::floor(raw_relaxed)},
      {"m1_literal", m1_literal},
      {"m2_literal", m2_literal},
      {"raw_value", raw},
      {"delta_in_range", config.delta_in_guarantee_range(d) ? 1.0 : 0.0},
  };
  return rep;
}

DistinguishingReport distinguishing_diagnostics(
    const LabeledDistribution& mu_plus, const LabeledDistribution& mu_minus,
    const LabelPair& labels, std::size_t m, double delta) {
  if (!(delta > 0.0 && delta < 0.5)) {
    throw SpecError("distinguishing_diagnostics: delta must lie in (0, 1/2)");
  }
  auto single_point = [](const LabeledDistribution& mu) {
    std::size_t point = mu.support().front().point;
    for (const auto& a : mu.support()) {
      if (a.point != point) {
        throw GuardError(
            "distinguishing_diagnostics: construction needs single-instance "
            "support");
      }
    }
    return point;
  };
  const std::size_t x = single_point(mu_plus);
  if (single_point(mu_minus) != x) {
    throw GuardError("distinguishing_diagnostics: supports must coincide");
  }

  DistinguishingReport out;
  out.delta = delta;
  // Bias of the pair construction: mu_+(x, 0) = (1 + lambda) / 2.
  out.lambda = 2.0 * mu_plus.mass(x, 0) - 1.0;

  // The common instance register contributes nothing: compare the label
  // mixtures directly.
  auto mix = [&](const LabeledDistribution& mu) {
    Eigen::MatrixXcd acc = mu.mass(x, 0) * labels.sigma0.raw() +
                           mu.mass(x, 1) * labels.sigma1.raw();
    return DensityMatrix(ComplexMatrix(std::move(acc)));
  };
  const DensityMatrix rho_plus = mix(mu_plus);
  const DensityMatrix rho_minus = mix(mu_minus);
  out.fidelity_exact = fidelity(rho_plus, rho_minus);

  // Strong concavity over the shared (x, b) decomposition.
  double lower = 0.0;
  for (std::uint8_t b : {std::uint8_t(0), std::uint8_t(1)}) {
    lower += std::sqrt(mu_plus.mass(x, b) * mu_minus.mass(x, b));
  }
  out.fidelity_lower = lower;

  const double f2m = std::pow(out.fidelity_exact, 2.0 * double(m));
  out.p_opt_upper = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - f2m)));

  const double target = 4.0 * delta * (1.0 - delta);  // < 1
  if (out.fidelity_exact >= 1.0 - 1e-12) {
    out.minimal_m = -1;  // indistinguishable: no finite m reaches 1 - delta
  } else {
    out.minimal_m = (long long)std::ceil(
        std::log(target) / std::log(out.fidelity_exact * out.fidelity_exact));
  }
  return out;
}

namespace {

// Entropy contribution of one nonzero eigenvalue, bits.
double eig_entropy(double lam) {
  if (lam <= 0.0) return 0.0;
  return -lam * std::log2(lam);
}

}  // namespace

InfoReport mutual_info_single_example(int d, double epsilon,
                                      const LabelPair& labels) {
  require_pure(labels, "mutual_info_single_example");
  if (d < 1 || d > 8) {
    throw SpecError("mutual_info_single_example: d must lie in [1, 8]");
  }
  const double t = labels.trace_dist();
  const double theta = 8.0 * epsilon / t;  // hard-family bias
  if (!(epsilon >= 0.0) || theta >= 1.0) {
    throw SpecError("mutual_info_single_example: epsilon too large");
  }
  const double c = pure_overlap(labels);
  const double c2 = c * c;

  InfoReport out;

  // Exact path: block eigenvalues of sigma_B1 and sigma_AB1.
  {
    const double w = 1.0 / (2.0 * double(d));
    const auto [b1_hi, b1_lo] = mixture_eigenvalues_overlap(w, w, c2);
    double s_b1 = double(d) * (eig_entropy(b1_hi) + eig_entropy(b1_lo));

    double s_ab1 = 0.0;
    const double pop = 1.0 / std::pow(2.0, double(d));
    for (std::size_t a = 0; a < (std::size_t(1) << d); ++a) {
      for (int i = 0; i < d; ++i) {
        const int ai = int((a >> i) & 1u);
        const double mu0 = w * (1.0 + (ai % 2 == 0 ? theta : -theta));
        const double mu1 = w * (1.0 + ((ai + 1) % 2 == 0 ? theta : -theta));
        const auto [hi, lo] =
            mixture_eigenvalues_overlap(pop * mu0, pop * mu1, c2);
        s_ab1 += eig_entropy(hi) + eig_entropy(lo);
      }
    }
    out.exact_bits = double(d) + s_b1 - s_ab1;
  }

  // Closed form in chat = sqrt(c^2 + x (1 - c^2)) with x = 64 eps^2 / t^2;
  // the c -> 0 limit is handled by the same expression, c -> 1 yields 0.
  {
    const double x = 64.0 * epsilon * epsilon / (t * t);
    if (c >= 1.0 - 1e-12) {
      out.closed_form_bits = 0.0;
    } else {
      const double chat = std::sqrt(c2 + x * (1.0 - c2));
      double val = 0.5 * (std::log2(1.0 - chat * chat) - std::log2(1.0 - c2));
      if (chat > 0.0) {
        val += 0.5 * chat * std::log2((1.0 + chat) / (1.0 - chat));
      }
      if (c > 0.0) {
        val -= 0.5 * c * std::log2((1.0 + c) / (1.0 - c));
      }
      out.closed_form_bits = val;
    }
  }

  // Leading order (64 eps^2 / t^2) ((1-c^2)/(4c)) log2((1+c)/(1-c)); the
  // bracket tends to 1/(2 ln 2) as c -> 0 and to 0 as c -> 1.
  {
    const double x = 64.0 * epsilon * epsilon / (t * t);
    double factor;
    if (c < 1e-8) {
      factor = 1.0 / (2.0 * std::log(2.0));
    } else if (c >= 1.0 - 1e-12) {
      factor = 0.0;
    } else {
      factor = (1.0 - c2) / (4.0 * c) * std::log2((1.0 + c) / (1.0 - c));
    }
    out.leading_order_bits = x * factor;
  }
  return out;
}

InfoReport realizable_mutual_info(int d, double epsilon,
                                  const LabelPair& labels) {
  require_pure(labels, "realizable_mutual_info");
  if (d < 1) throw SpecError("realizable_mutual_info: d must be positive");
  const double t = labels.trace_dist();
  const double lambda = 8.0 * epsilon / t;
  if (!(epsilon >= 0.0) || lambda >= 1.0) {
    throw SpecError("realizable_mutual_info: lambda must lie in [0, 1)");
  }
  const double c = pure_overlap(labels);

  InfoReport out;

  // Exact path from the eigenvalue lists:
  //   sigma_B1:  1 - lambda (x1), (lambda/d)(1 +- c)/2 (xd each)
  //   sigma_AB1: (1-lambda)/2^d (x 2^d), lambda/(d 2^d) (x d 2^d).
  {
    const double lam_hi = (1.0 + c) / 2.0, lam_lo = (1.0 - c) / 2.0;
    double s_b1 = eig_entropy(1.0 - lambda);
    s_b1 += double(d) * (eig_entropy(lambda / double(d) * lam_hi) +
                         eig_entropy(lambda / double(d) * lam_lo));
    double s_ab1 = 0.0;
    if (lambda < 1.0) {
      s_ab1 += (1.0 - lambda) * (-std::log2(1.0 - lambda) + double(d));
    }
    if (lambda > 0.0) {
      s_ab1 += lambda * (-std::log2(lambda / double(d)) + double(d));
    }
    out.exact_bits = double(d) + s_b1 - s_ab1;
  }

  // Closed form; at c = 1 the limit is 0.
  if (c >= 1.0 - 1e-12) {
    out.closed_form_bits = 0.0;
  } else {
    double bracket = std::log2((1.0 - c * c) / 4.0);
    if (c > 0.0) bracket += c * std::log2((1.0 + c) / (1.0 - c));
    out.closed_form_bits = -(lambda / 2.0) * bracket;
  }
  out.leading_order_bits = out.closed_form_bits;  // already linear in epsilon
  return out;
}

TeacherGameReport teacher_game_check(const Hypothesis& h,
                                     const LabeledDistribution& mu,
                                     const LabelPair& labels) {
  if (std::abs(labels.sigma0.purity() - labels.sigma1.purity()) > 1e-9) {
    throw GuardError("teacher_game_check: unequal purity (unsupported regime)");
  }
  const TwoOutcomePovm povm = holevo_helstrom(labels.sigma0, labels.sigma1);
  // When the drawn state is sigma_b, the test accepts with effect E_b and
  // rejects with E_{1-b}; both states carry the examiner's equal priors.
  const double rej[2][2] = {
      // rej[truth][prediction] = tr[E_{1-truth} sigma_prediction] / 2
      {0.5 * (povm.e1().raw() * labels.sigma0.raw()).trace().real(),
       0.5 * (povm.e1().raw() * labels.sigma1.raw()).trace().real()},
      {0.5 * (povm.e0().raw() * labels.sigma0.raw()).trace().real(),
       0.5 * (povm.e0().raw() * labels.sigma1.raw()).trace().real()},
  };
  TeacherGameReport out;
  for (const auto& atom : mu.support()) {
    const std::uint8_t truth = atom.bit;
    const std::uint8_t pred = h.labels[atom.point];
    out.expected_rejection += atom.prob * rej[truth][pred];
    out.optimal_rejection +=
        atom.prob * std::min(rej[truth][0], rej[truth][1]);
  }
  out.gap = out.expected_rejection - out.optimal_rejection;
  out.half_risk = 0.5 * true_risk(h, mu, labels);
  return out;
}

std::size_t hamming_distance(const std::vector<std::uint8_t>& a,
                             const std::vector<std::uint8_t>& b) {
  if (a.size() != b.size()) throw SpecError("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]) ? 1 : 0;
  return d;
}

std::size_t hamming_distance(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) throw SpecError("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]) ? 1 : 0;
  return d;
}

}  // namespace cqlearn
