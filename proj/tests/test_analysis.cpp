#include <doctest.h>

#include <cmath>

#include "cqlearn/analysis.hpp"
#include "cqlearn/errors.hpp"
#include "test_support.hpp"

using namespace cqlearn;
using cqlearn::testing::random_density;

namespace {

Hypothesis constant_hypothesis(DomainPtr dom, std::uint8_t bit) {
  return Hypothesis{dom, std::vector<std::uint8_t>(dom->size(), bit), "const"};
}

Hypothesis random_hypothesis(DomainPtr dom, RandomSource& rng) {
  std::vector<std::uint8_t> labels(dom->size());
  for (auto& b : labels) b = rng.uniform() < 0.5 ? 1 : 0;
  return Hypothesis{dom, std::move(labels), "random"};
}

LabeledDistribution random_distribution(DomainPtr dom, RandomSource& rng) {
  std::vector<LabeledDistribution::Atom> atoms;
  double total = 0.0;
  for (std::size_t p = 0; p < dom->size(); ++p) {
    for (std::uint8_t b : {std::uint8_t(0), std::uint8_t(1)}) {
      const double w = rng.uniform();
      atoms.push_back({p, b, w});
      total += w;
    }
  }
  for (auto& a : atoms) a.prob /= total;
  // Renormalize exactly.
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) s += atoms[i].prob;
  atoms.back().prob = 1.0 - s;
  return LabeledDistribution(std::move(dom), std::move(atoms));
}

}  // namespace

TEST_CASE("true_risk: zero on target, full scale when wrong everywhere") {
  auto dom = Domain::line(5);
  const ConceptClass thr = thresholds_class(dom);
  const Concept target = thr.member(2);
  const LabelPair orth = LabelPair::orthogonal(2);
  const LabeledDistribution mu = LabeledDistribution::uniform_from_concept(target);

  CHECK(true_risk(target, mu, orth) == doctest::Approx(0.0));

  // Complement of the target is wrong on every support point.
  std::vector<std::uint8_t> flipped;
  for (std::uint8_t b : target.labels()) flipped.push_back(1 - b);
  const Hypothesis wrong{dom, flipped, "complement"};
  CHECK(true_risk(wrong, mu, orth) == doctest::Approx(1.0));

  const RiskReport rep = risk_report(wrong, thr, mu, orth);
  CHECK(rep.optimal_class_risk == doctest::Approx(0.0));
  CHECK(rep.excess == doctest::Approx(1.0));
}

TEST_CASE("true_risk: hard-pair wrong predictor pays lambda * t / 2") {
  auto dom = Domain::line(2);
  const ConceptClass cls(dom, {{0, 0}, {1, 1}});
  const LabelPair gs = LabelPair::ground_state_pair();
  const double t = gs.trace_dist();
  const double eps = 0.1;
  auto [plus, minus] = agnostic_hard_pair(cls.member(0), cls.member(1), 0, eps, gs);

  const double risk0 = true_risk(constant_hypothesis(dom, 0), plus, gs);
  const double risk1 = true_risk(constant_hypothesis(dom, 1), plus, gs);
  const double lambda = eps / (2.0 * t);
  // Wrong constant pays the bias: excess = lambda * t / 2 (= eps / 4).
  CHECK(risk1 - risk0 == doctest::Approx(lambda * t / 2.0).epsilon(1e-12));
  CHECK(risk1 - risk0 == doctest::Approx(eps / 4.0).epsilon(1e-12));
}

TEST_CASE("intermediate_risk: perfect, constant, realizable noise level") {
  auto dom = Domain::line(4);
  const ConceptClass thr = thresholds_class(dom);
  const Concept target = thr.member(2);
  const LabelPair gs = LabelPair::ground_state_pair();
  const TwoOutcomePovm hh = holevo_helstrom(gs.sigma0, gs.sigma1);

  const LabeledDistribution mu = LabeledDistribution::uniform_from_concept(target);
  const LabeledDistribution nu = induced_nu(mu, hh, gs);

  // g = target: residual risk is the (symmetric) measurement noise.
  const NoisePair rates = error_rates(hh, gs.sigma0, gs.sigma1);
  const Hypothesis g{dom, target.labels(), "target"};
  CHECK(intermediate_risk(g, nu) == doctest::Approx(rates.eta0).epsilon(1e-12));

  // Noiseless nu: the target is perfect.
  const LabelPair orth = LabelPair::orthogonal(2);
  const LabeledDistribution nu0 =
      induced_nu(mu, holevo_helstrom(orth.sigma0, orth.sigma1), orth);
  CHECK(intermediate_risk(g, nu0) == doctest::Approx(0.0));

  // Constant-1 under nu with overall nu(y=1) = 0.3.
  const LabeledDistribution nu3(dom, {{0, 1, 0.3}, {1, 0, 0.7}});
  CHECK(intermediate_risk(constant_hypothesis(dom, 1), nu3) ==
        doctest::Approx(0.7));
}

TEST_CASE("risk_comparison: identity by independent summation") {
  auto dom = Domain::line(4);
  const LabelPair gs = LabelPair::ground_state_pair();
  const TwoOutcomePovm hh = holevo_helstrom(gs.sigma0, gs.sigma1);
  const double t = gs.trace_dist();
  RandomSource rng(55);

  for (int rep = 0; rep < 100; ++rep) {
    const LabeledDistribution mu = random_distribution(dom, rng);
    const Hypothesis g = random_hypothesis(dom, rng);

    // Left side, summed directly from traces.
    const double p1_given0 = (hh.e1().raw() * gs.sigma0.raw()).trace().real();
    const double p1_given1 = (hh.e1().raw() * gs.sigma1.raw()).trace().real();
    double lhs = 0.0, p_mismatch = 0.0, e_g = 0.0;
    for (std::size_t x = 0; x < 4; ++x) {
      const double m0 = mu.mass(x, 0), m1 = mu.mass(x, 1);
      const double nu1 = m0 * p1_given0 + m1 * p1_given1;
      const double nu0 = (m0 + m1) - nu1;
      lhs += g.labels[x] ? nu0 : nu1;
      p_mismatch += g.labels[x] ? m0 : m1;
      if (g.labels[x]) e_g += m0 + m1;
    }
    const double eta0 = p1_given0;
    const double eta1 = 1.0 - p1_given1;
    const double rhs = t / 2.0 * p_mismatch + eta0 + (eta1 - eta0) * e_g;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));

    const RiskComparison rc = risk_comparison(g, mu, gs, hh);
    CHECK(rc.identity_holds);
    CHECK(rc.intermediate == doctest::Approx(lhs).epsilon(1e-12));
    CHECK(rc.identity_rhs == doctest::Approx(rhs).epsilon(1e-12));
    CHECK(rc.risk_mu >= rc.sandwich_low - 1e-12);
    CHECK(rc.risk_mu <= rc.sandwich_high + 1e-12);
  }
}

TEST_CASE("risk_comparison: constant-0 predictor drops the expectation term") {
  auto dom = Domain::line(3);
  const LabelPair gs = LabelPair::ground_state_pair();
  const TwoOutcomePovm hh = holevo_helstrom(gs.sigma0, gs.sigma1);
  RandomSource rng(56);
  const LabeledDistribution mu = random_distribution(dom, rng);
  const RiskComparison rc = risk_comparison(constant_hypothesis(dom, 0), mu, gs, hh);
  CHECK(rc.expectation_g == doctest::Approx(0.0));
  CHECK(rc.intermediate ==
        doctest::Approx(rc.risk_mu + rc.eta0).epsilon(1e-12));
}

TEST_CASE("risk_comparison: equal error rates give exact shifted equality") {
  // For pure labels the HH rates coincide; the sandwich collapses to
  // R_mu = R~_nu - eta and the excess risks agree exactly.
  auto dom = Domain::line(4);
  const ConceptClass thr = thresholds_class(dom);
  const LabelPair gs = LabelPair::ground_state_pair();
  const TwoOutcomePovm hh = holevo_helstrom(gs.sigma0, gs.sigma1);
  RandomSource rng(57);

  for (int rep = 0; rep < 50; ++rep) {
    const LabeledDistribution mu = random_distribution(dom, rng);
    const Hypothesis g = random_hypothesis(dom, rng);
    const RiskComparison rc = risk_comparison(g, mu, gs, hh, &thr);
    CHECK(rc.eta0 == doctest::Approx(rc.eta1).epsilon(1e-10));
    CHECK(rc.risk_mu ==
          doctest::Approx(rc.intermediate - rc.eta0).epsilon(1e-10));
    REQUIRE(rc.excess_mu);
    REQUIRE(rc.excess_nu);
    CHECK(*rc.excess_mu == doctest::Approx(*rc.excess_nu).epsilon(1e-10));
    CHECK(*rc.excess_slack == doctest::Approx(0.0).epsilon(1e-10));
  }

  // eta = 0 (orthogonal pure labels): literal equality of the two risks.
  const LabelPair orth = LabelPair::orthogonal(2);
  const TwoOutcomePovm hh0 = holevo_helstrom(orth.sigma0, orth.sigma1);
  const LabeledDistribution mu = random_distribution(dom, rng);
  const Hypothesis g = random_hypothesis(dom, rng);
  const RiskComparison rc = risk_comparison(g, mu, orth, hh0);
  CHECK(rc.risk_mu == doctest::Approx(rc.intermediate).epsilon(1e-12));
}

TEST_CASE("empirical_rademacher: degenerate and full classes") {
  auto dom = Domain::line(3);
  const ConceptClass single(dom, {std::vector<std::uint8_t>(3, 1)});
  CHECK(empirical_rademacher(single, {0, 1, 2}) == doctest::Approx(0.0));

  const ConceptClass full = full_binary_class(dom);
  CHECK(empirical_rademacher(full, {0, 1, 2}) == doctest::Approx(0.5));

  std::vector<std::size_t> too_many(21, 0);
  CHECK_THROWS_AS(empirical_rademacher(full, too_many), GuardError);

  // Monte Carlo mode approaches the exact value.
  std::vector<std::vector<double>> values;
  for (std::size_t m = 0; m < full.size(); ++m) {
    values.push_back({double(full.label(m, 0)), double(full.label(m, 1)),
                      double(full.label(m, 2))});
  }
  RandomSource rng(60);
  const double mc = empirical_rademacher_mc(values, 20000, rng);
  CHECK(mc == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("property: noise-corrected class Rademacher inequality") {
  RandomSource rng(61);
  for (int rep = 0; rep < 40; ++rep) {
    const int n_points = 2 + int(rng.uniform() * 7);  // sample size <= 8
    const int n_funcs = 2 + int(rng.uniform() * 14);
    const double e0 = rng.uniform() * 0.45;
    const double e1 = rng.uniform() * 0.45;
    const NoisePair noise(e0, e1);

    // Random 0/1 class values on the sample instances and random labels y.
    std::vector<std::vector<double>> f_values(n_funcs,
                                              std::vector<double>(n_points));
    std::vector<int> y(n_points);
    for (auto& row : f_values) {
      for (auto& v : row) v = rng.uniform() < 0.5 ? 1.0 : 0.0;
    }
    for (auto& b : y) b = rng.uniform() < 0.5 ? 1 : 0;

    std::vector<std::vector<double>> g_values(n_funcs,
                                              std::vector<double>(n_points));
    for (int f = 0; f < n_funcs; ++f) {
      for (int i = 0; i < n_points; ++i) {
        g_values[f][i] =
            noise_corrected_loss(int(f_values[f][i]), y[i], noise);
      }
    }
    const double r_f = empirical_rademacher_exact(f_values);
    const double r_g = empirical_rademacher_exact(g_values);
    CHECK(r_g <= 2.0 / (1.0 - e0 - e1) * r_f + 1e-12);
  }
}

TEST_CASE("agnostic_sample_bound: scalings and pinned value") {
  const LabelPair orth = LabelPair::orthogonal(2);
  const NoisePair zero(0.0, 0.0);

  // d = 4, eps = 0.1, delta = 0.05: frozen regression value.
  const BoundReport rep =
      agnostic_sample_bound(4, LearnerConfig{0.1, 0.05, 0.0}, orth, zero);
  CHECK(rep.m_sufficient == 6965895);

  // Halving epsilon exactly quadruples the raw bound.
  const BoundReport half =
      agnostic_sample_bound(4, LearnerConfig{0.05, 0.05, 0.0}, orth, zero);
  CHECK(half.constants.at("raw_value") ==
        doctest::Approx(4.0 * rep.constants.at("raw_value")).epsilon(1e-12));

  // Doubling d multiplies by at most 2 for large d.
  for (int d : {100, 400, 1000}) {
    const BoundReport a =
        agnostic_sample_bound(d, LearnerConfig{0.1, 0.05, 0.0}, orth, zero);
    const BoundReport b =
        agnostic_sample_bound(2 * d, LearnerConfig{0.1, 0.05, 0.0}, orth, zero);
    const double ratio =
        b.constants.at("raw_value") / a.constants.at("raw_value");
    CHECK(ratio > 1.0);
    CHECK(ratio <= 2.0 + 1e-9);
  }
}

TEST_CASE("realizable_sample_bound: pinned values and literal split formulas") {
  const BoundReport rep =
      realizable_sample_bound(1, LearnerConfig{0.1, 0.05, 0.0});
  CHECK(rep.constants.at("c") == doctest::Approx(7200.0));
  CHECK(rep.constants.at("capacity") ==
        doctest::Approx(5.082988165073597).epsilon(1e-12));
  CHECK(rep.m_sufficient == 2520142);  // frozen from direct evaluation

  // Capacity is monotone on [0, 0.49].
  double prev = 0.0;
  for (double eta = 0.0; eta <= 0.49; eta += 0.01) {
    const BoundReport r =
        realizable_sample_bound(1, LearnerConfig{0.1, 0.05, eta});
    CHECK(r.constants.at("capacity") > prev);
    prev = r.constants.at("capacity");
  }

  // The claimed relaxation C <= 4 / (1 - 2 eta)^2 fails at eta = 0.
  CHECK(rep.constants.at("capacity") > rep.constants.at("capacity_relaxed"));

  // Literal split sizes stay finite and positive for moderate d.
  const BoundReport r8 = realizable_sample_bound(8, LearnerConfig{0.1, 0.05, 0.1});
  CHECK(r8.constants.at("m1_literal") > 0.0);
  CHECK(r8.constants.at("m2_literal") > 0.0);
  CHECK(std::isfinite(r8.constants.at("m2_literal")));
  // Large d exercises the log-space branch.
  const BoundReport r300 =
      realizable_sample_bound(300, LearnerConfig{0.05, 0.01, 0.2});
  CHECK(std::isfinite(r300.constants.at("m2_literal")));
}

TEST_CASE("distinguishing_diagnostics: endpoints, formula, slope") {
  auto dom = Domain::line(2);
  const LabelPair orth = LabelPair::orthogonal(2);
  const ConceptClass cls(dom, {{0, 0}, {1, 1}});

  // lambda = 0: states coincide, p_opt upper = 1/2, no finite m.
  auto [p0, m0] = agnostic_hard_pair(cls.member(0), cls.member(1), 0, 0.0, orth);
  const DistinguishingReport flat =
      distinguishing_diagnostics(p0, m0, orth, 10, 0.05);
  CHECK(flat.lambda == doctest::Approx(0.0));
  CHECK(flat.p_opt_upper == doctest::Approx(0.5));
  CHECK(flat.minimal_m == -1);

  // Formula check at eps = 0.1, delta = 0.05 for orthogonal labels.
  auto [pp, mm] = agnostic_hard_pair(cls.member(0), cls.member(1), 0, 0.1, orth);
  const DistinguishingReport r =
      distinguishing_diagnostics(pp, mm, orth, 100, 0.05);
  const double lambda = 0.1 / 4.0;
  CHECK(r.lambda == doctest::Approx(lambda).epsilon(1e-12));
  CHECK(r.fidelity_lower ==
        doctest::Approx(std::sqrt(1.0 - lambda * lambda)).epsilon(1e-12));
  CHECK(r.fidelity_exact >= r.fidelity_lower - 1e-12);
  const long long m_expected = (long long)std::ceil(
      std::log(4.0 * 0.05 * 0.95) / std::log(r.fidelity_exact * r.fidelity_exact));
  CHECK(r.minimal_m == m_expected);

  // Minimal m nonincreasing in delta; slope in eps close to -2.
  const DistinguishingReport loose =
      distinguishing_diagnostics(pp, mm, orth, 100, 0.2);
  CHECK(loose.minimal_m <= r.minimal_m);

  std::vector<double> eps_grid{0.4, 0.2, 0.1, 0.05};
  std::vector<double> logs_m, logs_e;
  for (double eps : eps_grid) {
    auto [a, b] = agnostic_hard_pair(cls.member(0), cls.member(1), 0, eps, orth);
    const DistinguishingReport rr = distinguishing_diagnostics(a, b, orth, 1, 0.05);
    logs_m.push_back(std::log(double(rr.minimal_m)));
    logs_e.push_back(std::log(eps));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < logs_m.size(); ++i) {
    sx += logs_e[i];
    sy += logs_m[i];
    sxx += logs_e[i] * logs_e[i];
    sxy += logs_e[i] * logs_m[i];
  }
  const double n = double(logs_m.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope == doctest::Approx(-2.0).epsilon(0.05));

  // Multi-instance support is rejected.
  const LabeledDistribution multi(dom, {{0, 0, 0.5}, {1, 1, 0.5}});
  CHECK_THROWS_AS(distinguishing_diagnostics(multi, multi, orth, 1, 0.05),
                  GuardError);
}

TEST_CASE("mutual_info_single_example: zero at eps 0, exact equals closed form") {
  const LabelPair pair = LabelPair::pure_with_overlap(1.0 / std::sqrt(2.0));
  const InfoReport zero = mutual_info_single_example(2, 0.0, pair);
  CHECK(zero.exact_bits == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(zero.closed_form_bits == doctest::Approx(0.0).epsilon(1e-12));

  const InfoReport r = mutual_info_single_example(2, 0.01, pair);
  CHECK(r.exact_bits == doctest::Approx(r.closed_form_bits).epsilon(1e-8));
  CHECK(r.exact_bits > 0.0);

  // eps-squared scaling.
  const InfoReport half = mutual_info_single_example(2, 0.005, pair);
  CHECK(r.exact_bits / half.exact_bits == doctest::Approx(4.0).epsilon(0.02));
  // Leading order tracks the exact value at small eps.
  CHECK(r.leading_order_bits ==
        doctest::Approx(r.exact_bits).epsilon(0.05));

  // Exact value is d-independent for the uniform string ensemble.
  for (int d : {1, 3, 5}) {
    const InfoReport rd = mutual_info_single_example(d, 0.01, pair);
    CHECK(rd.exact_bits == doctest::Approx(r.exact_bits).epsilon(1e-10));
  }

  // Bounds: 0 <= I <= d bits.
  CHECK(r.exact_bits >= 0.0);
  CHECK(r.exact_bits <= 2.0);

  // Mixed labels are rejected.
  const LabelPair mixed(DensityMatrix::maximally_mixed(2),
                        DensityMatrix::pure(PureState::basis(2, 0)));
  CHECK_THROWS_AS(mutual_info_single_example(2, 0.01, mixed), GuardError);
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::MatrixXcd basis_projector(int dim, int k) {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
  p(k, k) = 1.0;
  return p;
}

}  // namespace

TEST_CASE("mutual information agrees with a dense composite-state oracle") {
  // Third, heavyweight route: materialize the full string (x) instance (x)
  // label state, take entropies of the dense matrices, and compare.
  const int d = 2;
  const double eps = 0.02;
  for (double c : {0.0, 0.4, 1.0 / std::sqrt(2.0)}) {
    const LabelPair labels = LabelPair::pure_with_overlap(c);
    const double t = labels.trace_dist();
    const double theta = 8.0 * eps / t;
    const int dim_a = 1 << d;          // string register
    const int dim_b = d * 2;           // instance (x) label register

    Eigen::MatrixXcd sigma_ab = Eigen::MatrixXcd::Zero(dim_a * dim_b, dim_a * dim_b);
    for (int a = 0; a < dim_a; ++a) {
      Eigen::MatrixXcd rho_a = Eigen::MatrixXcd::Zero(dim_b, dim_b);
      for (int i = 0; i < d; ++i) {
        const int ai = (a >> i) & 1;
        const double mu0 = (1.0 + (ai == 0 ? theta : -theta)) / (2.0 * d);
        const double mu1 = (1.0 + (ai == 1 ? theta : -theta)) / (2.0 * d);
        rho_a += kron(basis_projector(d, i),
                      mu0 * labels.sigma0.raw() + mu1 * labels.sigma1.raw());
      }
      sigma_ab += kron(basis_projector(dim_a, a), rho_a) / double(dim_a);
    }
    // Partial traces by block summation.
    Eigen::MatrixXcd sigma_b = Eigen::MatrixXcd::Zero(dim_b, dim_b);
    for (int a = 0; a < dim_a; ++a) {
      sigma_b += sigma_ab.block(a * dim_b, a * dim_b, dim_b, dim_b);
    }
    const double s_ab =
        von_neumann_entropy(DensityMatrix(ComplexMatrix(sigma_ab)));
    const double s_b = von_neumann_entropy(DensityMatrix(ComplexMatrix(sigma_b)));
    const double dense_info = double(d) + s_b - s_ab;  // S(A) = d bits

    const InfoReport r = mutual_info_single_example(d, eps, labels);
    CHECK(r.exact_bits == doctest::Approx(dense_info).epsilon(1e-9));
  }

  // Realizable variant, same treatment with the s_0-weighted support.
  for (double c : {0.0, 0.5}) {
    const LabelPair labels = LabelPair::pure_with_overlap(c);
    const double t = labels.trace_dist();
    const double lambda = 8.0 * eps / t;
    const int dim_a = 1 << d;
    const int dim_b = (d + 1) * 2;

    Eigen::MatrixXcd sigma_ab = Eigen::MatrixXcd::Zero(dim_a * dim_b, dim_a * dim_b);
    for (int a = 0; a < dim_a; ++a) {
      Eigen::MatrixXcd rho_a =
          (1.0 - lambda) * kron(basis_projector(d + 1, 0), labels.sigma0.raw());
      for (int i = 0; i < d; ++i) {
        const int ai = (a >> i) & 1;
        rho_a += (lambda / d) * kron(basis_projector(d + 1, i + 1),
                                     labels.state(std::uint8_t(ai)).raw());
      }
      sigma_ab += kron(basis_projector(dim_a, a), rho_a) / double(dim_a);
    }
    Eigen::MatrixXcd sigma_b = Eigen::MatrixXcd::Zero(dim_b, dim_b);
    for (int a = 0; a < dim_a; ++a) {
      sigma_b += sigma_ab.block(a * dim_b, a * dim_b, dim_b, dim_b);
    }
    const double s_ab =
        von_neumann_entropy(DensityMatrix(ComplexMatrix(sigma_ab)));
    const double s_b = von_neumann_entropy(DensityMatrix(ComplexMatrix(sigma_b)));
    const double dense_info = double(d) + s_b - s_ab;

    const InfoReport r = realizable_mutual_info(d, eps, labels);
    CHECK(r.exact_bits == doctest::Approx(dense_info).epsilon(1e-9));
  }
}

TEST_CASE("realizable_mutual_info: closed form, limits, linearity") {
  const LabelPair orth = LabelPair::orthogonal(2);
  // c = 0: closed form reduces to lambda.
  const double eps = 0.05;
  const double lambda = 8.0 * eps / 2.0;
  const InfoReport r = realizable_mutual_info(3, eps, orth);
  CHECK(r.closed_form_bits == doctest::Approx(lambda).epsilon(1e-12));
  CHECK(r.exact_bits == doctest::Approx(lambda).epsilon(1e-10));

  CHECK(realizable_mutual_info(3, 0.0, orth).exact_bits ==
        doctest::Approx(0.0).epsilon(1e-12));

  // Exact linearity in epsilon.
  const InfoReport twice = realizable_mutual_info(3, 2.0 * eps, orth);
  CHECK(twice.closed_form_bits / r.closed_form_bits ==
        doctest::Approx(2.0).epsilon(1e-9));

  // Exact path equals the closed form; the closed form equals
  // lambda * H2((1+c)/2) (independent algebraic route).
  for (double c : {0.2, 0.5, 1.0 / std::sqrt(2.0), 0.9}) {
    const LabelPair pair = LabelPair::pure_with_overlap(c);
    const double t = pair.trace_dist();
    const double lam = 8.0 * 0.01 / t;
    const InfoReport rc = realizable_mutual_info(4, 0.01, pair);
    CHECK(rc.exact_bits == doctest::Approx(rc.closed_form_bits).epsilon(1e-9));
    CHECK(rc.closed_form_bits ==
          doctest::Approx(lam * binary_entropy((1.0 + c) / 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("teacher_game_check: gap equals half the risk") {
  auto dom = Domain::line(4);
  const LabelPair gs = LabelPair::ground_state_pair();
  RandomSource rng(70);

  // Bayes-optimal predictor: zero gap.
  for (int rep = 0; rep < 20; ++rep) {
    const LabeledDistribution mu = random_distribution(dom, rng);
    std::vector<std::uint8_t> bayes(4);
    for (std::size_t x = 0; x < 4; ++x) {
      bayes[x] = mu.mass(x, 1) > mu.mass(x, 0) ? 1 : 0;
    }
    const Hypothesis h{dom, bayes, "bayes"};
    const TeacherGameReport r = teacher_game_check(h, mu, gs);
    CHECK(r.gap == doctest::Approx(r.half_risk).epsilon(1e-9));
  }

  // Wrong everywhere with orthogonal labels: gap = 1/2.
  const LabelPair orth = LabelPair::orthogonal(2);
  const ConceptClass thr = thresholds_class(dom);
  const Concept target = thr.member(2);
  const LabeledDistribution mu = LabeledDistribution::uniform_from_concept(target);
  std::vector<std::uint8_t> flipped;
  for (std::uint8_t b : target.labels()) flipped.push_back(1 - b);
  const TeacherGameReport r =
      teacher_game_check(Hypothesis{dom, flipped, "wrong"}, mu, orth);
  CHECK(r.gap == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.half_risk == doctest::Approx(0.5).epsilon(1e-12));

  // Random hypotheses: gap = R_mu / 2 to 1e-9.
  for (int rep = 0; rep < 50; ++rep) {
    const LabeledDistribution m2 = random_distribution(dom, rng);
    const Hypothesis h = random_hypothesis(dom, rng);
    const TeacherGameReport rr = teacher_game_check(h, m2, gs);
    CHECK(rr.gap == doctest::Approx(rr.half_risk).epsilon(1e-9));
  }

  // Unequal purity is rejected.
  const LabelPair unequal(DensityMatrix::pure(PureState::basis(2, 0)),
                          DensityMatrix::maximally_mixed(2));
  CHECK_THROWS_AS(
      teacher_game_check(constant_hypothesis(dom, 0), mu, unequal), GuardError);
}

TEST_CASE("teacher_game_check: equal-purity mixed qubit labels") {
  // Two qubit states with eigenvalues {0.8, 0.2} in rotated bases.
  Eigen::MatrixXcd d0 = Eigen::MatrixXcd::Zero(2, 2);
  d0(0, 0) = 0.8;
  d0(1, 1) = 0.2;
  const double angle = 0.7;
  Eigen::MatrixXcd u(2, 2);
  u << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  const DensityMatrix s0{ComplexMatrix(d0)};
  const DensityMatrix s1{ComplexMatrix(u * d0 * u.adjoint())};
  const LabelPair labels(s0, s1);
  REQUIRE(std::abs(s0.purity() - s1.purity()) < 1e-12);

  auto dom = Domain::line(4);
  RandomSource rng(72);
  for (int rep = 0; rep < 30; ++rep) {
    const LabeledDistribution mu = random_distribution(dom, rng);
    const Hypothesis h = random_hypothesis(dom, rng);
    const TeacherGameReport r = teacher_game_check(h, mu, labels);
    CHECK(r.gap == doctest::Approx(r.half_risk).epsilon(1e-9));
  }
}

TEST_CASE("hamming_distance and the hard-family excess relation") {
  CHECK(hamming_distance(std::string("0000"), std::string("0000")) == 0);
  CHECK(hamming_distance(std::string("0101"), std::string("1010")) == 4);
  CHECK_THROWS_AS(hamming_distance(std::string("01"), std::string("0")),
                  SpecError);

  // Excess of f_a~ vs f_a under mu_a equals d_H(a, a~) * 4 eps / d, for any
  // label pair.
  auto dom = Domain::line(4);
  RandomSource rng(71);
  for (const LabelPair& labels :
       {LabelPair::orthogonal(2), LabelPair::ground_state_pair()}) {
    const double eps = 0.05;
    for (int rep = 0; rep < 30; ++rep) {
      std::vector<std::uint8_t> a(4), a2(4);
      for (auto& b : a) b = rng.uniform() < 0.5 ? 1 : 0;
      for (auto& b : a2) b = rng.uniform() < 0.5 ? 1 : 0;
      const LabeledDistribution mu =
          agnostic_hard_family(dom, {0, 1, 2, 3}, a, eps, labels);
      const Hypothesis fa{dom, a, "f_a"};
      const Hypothesis fa2{dom, a2, "f_a2"};
      const double excess =
          true_risk(fa2, mu, labels) - true_risk(fa, mu, labels);
      const double expected =
          double(hamming_distance(a, a2)) * 4.0 * eps / 4.0;
      CHECK(excess == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("binary_entropy basics") {
  CHECK(binary_entropy(0.0) == doctest::Approx(0.0));
  CHECK(binary_entropy(1.0) == doctest::Approx(0.0));
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.25) == doctest::Approx(0.8112781244591328).epsilon(1e-12));
  CHECK_THROWS_AS(binary_entropy(1.5), SpecError);
}
