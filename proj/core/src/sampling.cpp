#include "cqlearn/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "cqlearn/errors.hpp"

namespace cqlearn {

namespace {
constexpr double kProbTol = 1e-12;
}

LabelPair::LabelPair(DensityMatrix s0, DensityMatrix s1)
    : sigma0(std::move(s0)), sigma1(std::move(s1)) {
  if (sigma0.dim() != sigma1.dim()) {
    throw SpecError("LabelPair: states must have equal dimension");
  }
  if (trace_distance(sigma0, sigma1) <= 0.0) {
    throw GuardError("LabelPair: states must be distinct");
  }
}

double LabelPair::trace_dist() const { return trace_distance(sigma0, sigma1); }

LabelPair LabelPair::ground_state_pair() {
  Eigen::VectorXcd phi0(3), phi1(3);
  phi0 << 0.0, 1.0, 0.0;
  phi1 << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;
  return LabelPair(DensityMatrix::pure(PureState(phi0)),
                   DensityMatrix::pure(PureState(phi1)));
}

LabelPair LabelPair::orthogonal(int dim) {
  if (dim < 2) throw SpecError("orthogonal pair needs dim >= 2");
  return LabelPair(DensityMatrix::pure(PureState::basis(dim, 0)),
                   DensityMatrix::pure(PureState::basis(dim, 1)));
}

LabelPair LabelPair::pure_with_overlap(double c) {
  if (c < 0.0 || c >= 1.0) throw SpecError("overlap must lie in [0, 1)");
  Eigen::VectorXcd psi0(2), psi1(2);
  psi0 << 1.0, 0.0;
  psi1 << c, std::sqrt(1.0 - c * c);
  return LabelPair(DensityMatrix::pure(PureState(psi0)),
                   DensityMatrix::pure(PureState(psi1)));
}

LabeledDistribution::LabeledDistribution(DomainPtr domain,
                                         std::vector<Atom> support)
    : domain_(std::move(domain)), support_(std::move(support)) {
  if (!domain_) throw SpecError("LabeledDistribution needs a domain");
  double total = 0.0;
  std::vector<std::pair<std::size_t, std::uint8_t>> seen;
  for (const Atom& a : support_) {
    if (a.point >= domain_->size()) {
      throw SpecError("LabeledDistribution: point index out of range");
    }
    if (a.bit > 1) throw SpecError("LabeledDistribution: bit must be 0/1");
    if (a.prob < -kProbTol || a.prob > 1.0 + kProbTol) {
      throw SpecError("LabeledDistribution: probability out of range");
    }
    seen.emplace_back(a.point, a.bit);
    total += a.prob;
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw SpecError("LabeledDistribution: duplicate (instance, bit) pair");
  }
  if (std::abs(total - 1.0) > kProbTol) {
    throw SpecError("LabeledDistribution: probabilities must sum to 1");
  }
}

double LabeledDistribution::mass(std::size_t point, std::uint8_t bit) const {
  for (const Atom& a : support_) {
    if (a.point == point && a.bit == bit) return a.prob;
  }
  return 0.0;
}

double LabeledDistribution::marginal(std::size_t point) const {
  double s = 0.0;
  for (const Atom& a : support_) {
    if (a.point == point) s += a.prob;
  }
  return s;
}

double LabeledDistribution::conditional_one(std::size_t point) const {
  const double m = marginal(point);
  if (m <= 0.0) throw SpecError("conditional on a zero-mass instance");
  return mass(point, 1) / m;
}

LabeledDistribution LabeledDistribution::from_concept(
    DomainPtr domain, const std::vector<double>& marginal, const Concept& f) {
  if (marginal.size() != domain->size()) {
    throw SpecError("marginal must cover the domain");
  }
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    if (marginal[i] < 0.0) throw SpecError("negative marginal mass");
    if (marginal[i] > 0.0) atoms.push_back({i, f(i), marginal[i]});
  }
  return LabeledDistribution(std::move(domain), std::move(atoms));
}

LabeledDistribution LabeledDistribution::uniform_from_concept(const Concept& f) {
  DomainPtr dom = f.domain();
  std::vector<double> marginal(dom->size(), 1.0 / double(dom->size()));
  return from_concept(std::move(dom), marginal, f);
}

LabeledDistribution LabeledDistribution::flip_labels(double q) const {
  if (q < 0.0 || q > 1.0) throw SpecError("flip probability out of range");
  // Collect per-point masses, then recombine.
  std::vector<Atom> atoms;
  std::vector<std::size_t> points;
  for (const Atom& a : support_) points.push_back(a.point);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (std::size_t p : points) {
    const double m0 = mass(p, 0), m1 = mass(p, 1);
    const double f0 = m0 * (1.0 - q) + m1 * q;
    const double f1 = m1 * (1.0 - q) + m0 * q;
    if (f0 > 0.0) atoms.push_back({p, 0, f0});
    if (f1 > 0.0) atoms.push_back({p, 1, f1});
  }
  return LabeledDistribution(domain_, std::move(atoms));
}

QuantumSample draw_quantum_sample(const LabeledDistribution& mu, std::size_t m,
                                  const RandomSource& rng) {
  if (m == 0) throw SpecError("draw_quantum_sample: m must be positive");
  const auto& support = mu.support();
  std::vector<double> cumulative(support.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    acc += support[i].prob;
    cumulative[i] = acc;
  }
  cumulative.back() = 1.0;

  QuantumSample out;
  out.items.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    RandomSource stream = rng.child(i);
    const double u = stream.uniform();
    const std::size_t k =
        std::size_t(std::lower_bound(cumulative.begin(), cumulative.end(), u) -
                    cumulative.begin());
    const auto& atom = support[std::min(k, support.size() - 1)];
    out.items.emplace_back(atom.point, atom.bit);
  }
  return out;
}

ClassicalSample measure_labels(const QuantumSample& sample,
                               const TwoOutcomePovm& povm,
                               const LabelPair& labels,
                               const RandomSource& rng) {
  if (povm.dim() != labels.sigma0.dim()) {
    throw SpecError("measure_labels: povm/label dimension mismatch");
  }
  const double p1_given[2] = {povm.outcome_one_probability(labels.sigma0),
                              povm.outcome_one_probability(labels.sigma1)};
  ClassicalSample out;
  out.items.reserve(sample.items.size());
  for (std::size_t i = 0; i < sample.items.size(); ++i) {
    RandomSource stream = rng.child(i);
    const auto& [point, latent] = sample.items[i];
    const std::uint8_t y = stream.uniform() < p1_given[latent] ? 1 : 0;
    out.items.emplace_back(point, y);
  }
  return out;
}

LabeledDistribution induced_nu(const LabeledDistribution& mu,
                               const TwoOutcomePovm& povm,
                               const LabelPair& labels) {
  const double p1_given[2] = {povm.outcome_one_probability(labels.sigma0),
                              povm.outcome_one_probability(labels.sigma1)};
  std::vector<std::size_t> points;
  for (const auto& a : mu.support()) points.push_back(a.point);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<LabeledDistribution::Atom> atoms;
  for (std::size_t p : points) {
    double mass1 = 0.0, total = 0.0;
    for (std::uint8_t b : {std::uint8_t(0), std::uint8_t(1)}) {
      const double w = mu.mass(p, b);
      total += w;
      mass1 += w * p1_given[b];
    }
    const double mass0 = total - mass1;
    if (mass0 > 0.0) atoms.push_back({p, 0, mass0});
    if (mass1 > 0.0) atoms.push_back({p, 1, mass1});
  }
  return LabeledDistribution(mu.domain(), std::move(atoms));
}

std::pair<LabeledDistribution, LabeledDistribution> agnostic_hard_pair(
    const Concept& f, const Concept& g, std::size_t x, double epsilon,
    const LabelPair& labels) {
  if (f(x) != 0 || g(x) != 1) {
    throw SpecError("agnostic_hard_pair requires f(x)=0 and g(x)=1");
  }
  const double t = labels.trace_dist();
  if (!(epsilon >= 0.0) || epsilon >= t / (2.0 * std::sqrt(2.0))) {
    throw SpecError("agnostic_hard_pair: epsilon out of admissible range");
  }
  const double lambda = epsilon / (2.0 * t);
  DomainPtr dom = f.domain();
  auto dist = [&](double lam) {
    std::vector<LabeledDistribution::Atom> atoms{
        {x, 0, (1.0 + lam) / 2.0},
        {x, 1, (1.0 - lam) / 2.0},
    };
    return LabeledDistribution(dom, std::move(atoms));
  };
  return {dist(lambda), dist(-lambda)};
}

LabeledDistribution agnostic_hard_family(
    DomainPtr domain, const std::vector<std::size_t>& shattered,
    const std::vector<std::uint8_t>& a, double epsilon,
    const LabelPair& labels) {
  const std::size_t d = shattered.size();
  if (d == 0 || a.size() != d) {
    throw SpecError("agnostic_hard_family: bit-string must match instances");
  }
  const double t = labels.trace_dist();
  const double theta = 8.0 * epsilon / t;
  if (!(epsilon >= 0.0) || theta >= 1.0) {
    throw SpecError("agnostic_hard_family: epsilon too large (negative mass)");
  }
  std::vector<LabeledDistribution::Atom> atoms;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::uint8_t b : {std::uint8_t(0), std::uint8_t(1)}) {
      const double sign = ((a[i] + b) % 2 == 0) ? 1.0 : -1.0;
      atoms.push_back({shattered[i], b, (1.0 + sign * theta) / (2.0 * d)});
    }
  }
  return LabeledDistribution(std::move(domain), std::move(atoms));
}

LabeledDistribution realizable_hard_pair(const Concept& target, std::size_t x1,
                                         std::size_t x2, double epsilon,
                                         const LabelPair& labels) {
  const double t = labels.trace_dist();
  const double lambda = 2.0 * epsilon / t;
  if (!(lambda >= 0.0) || lambda >= 1.0) {
    throw SpecError("realizable_hard_pair: lambda must lie in [0, 1)");
  }
  if (x1 == x2) throw SpecError("realizable_hard_pair: points must differ");
  std::vector<LabeledDistribution::Atom> atoms;
  if (lambda < 1.0) atoms.push_back({x1, target(x1), 1.0 - lambda});
  if (lambda > 0.0) atoms.push_back({x2, target(x2), lambda});
  return LabeledDistribution(target.domain(), std::move(atoms));
}

LabeledDistribution realizable_hard_family(
    DomainPtr domain, const std::vector<std::size_t>& s,
    const std::vector<std::uint8_t>& a, double epsilon,
    const LabelPair& labels) {
  if (s.size() < 2 || a.size() != s.size() - 1) {
    throw SpecError(
        "realizable_hard_family: needs s_0..s_d and a bit-string of length d");
  }
  const std::size_t d = a.size();
  const double t = labels.trace_dist();
  const double lambda = 8.0 * epsilon / t;
  if (!(lambda >= 0.0) || lambda >= 1.0) {
    throw SpecError("realizable_hard_family: lambda must lie in [0, 1)");
  }
  std::vector<LabeledDistribution::Atom> atoms;
  if (lambda < 1.0) atoms.push_back({s[0], 0, 1.0 - lambda});
  if (lambda > 0.0) {
    for (std::size_t i = 0; i < d; ++i) {
      atoms.push_back({s[i + 1], a[i], lambda / double(d)});
    }
  }
  return LabeledDistribution(std::move(domain), std::move(atoms));
}

}  // namespace cqlearn
