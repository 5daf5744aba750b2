#include "cqlearn/concepts.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "cqlearn/errors.hpp"

namespace cqlearn {

namespace {
constexpr std::size_t kMaxSubsetSize = 25;
constexpr std::size_t kMaxClassSize = 1000000;
constexpr std::size_t kMaxSubsetEnumeration = 50000000;
}  // namespace

Domain::Domain(std::vector<Instance> points) : points_(std::move(points)) {
  sorted_ids_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    sorted_ids_.emplace_back(points_[i].id, i);
  }
  std::sort(sorted_ids_.begin(), sorted_ids_.end());
  for (std::size_t i = 1; i < sorted_ids_.size(); ++i) {
    if (sorted_ids_[i].first == sorted_ids_[i - 1].first) {
      throw SpecError("Domain: duplicate instance id '" + sorted_ids_[i].first +
                      "'");
    }
  }
}

std::shared_ptr<const Domain> Domain::line(int n) {
  if (n < 1) throw SpecError("Domain::line needs n >= 1");
  std::vector<Instance> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    pts.push_back({std::to_string(i + 1), {double(i + 1)}});
  }
  return std::make_shared<Domain>(std::move(pts));
}

std::shared_ptr<const Domain> Domain::grid(const std::vector<int>& sides) {
  if (sides.empty()) throw SpecError("Domain::grid needs >= 1 axis");
  std::size_t total = 1;
  for (int s : sides) {
    if (s < 1) throw SpecError("Domain::grid sides must be >= 1");
    total *= std::size_t(s);
  }
  std::vector<Instance> pts;
  pts.reserve(total);
  std::vector<int> idx(sides.size(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    std::string id;
    std::vector<double> coords(sides.size());
    for (std::size_t d = 0; d < sides.size(); ++d) {
      if (d) id += '_';
      id += std::to_string(idx[d] + 1);
      coords[d] = double(idx[d] + 1);
    }
    pts.push_back({std::move(id), std::move(coords)});
    for (std::size_t d = sides.size(); d-- > 0;) {
      if (++idx[d] < sides[d]) break;
      idx[d] = 0;
    }
  }
  return std::make_shared<Domain>(std::move(pts));
}

std::size_t Domain::index_of(const std::string& id) const {
  auto r = find(id);
  if (!r) throw SpecError("unknown instance '" + id + "'");
  return *r;
}

std::optional<std::size_t> Domain::find(const std::string& id) const {
  auto it = std::lower_bound(
      sorted_ids_.begin(), sorted_ids_.end(), id,
      [](const auto& p, const std::string& s) { return p.first < s; });
  if (it == sorted_ids_.end() || it->first != id) return std::nullopt;
  return it->second;
}

Concept::Concept(DomainPtr domain, std::vector<std::uint8_t> labels,
                 std::string name)
    : domain_(std::move(domain)), labels_(std::move(labels)),
      name_(std::move(name)) {
  if (!domain_) throw SpecError("Concept needs a domain");
  if (labels_.size() != domain_->size()) {
    throw SpecError("Concept labels must be total over the domain");
  }
}

std::uint8_t Concept::operator()(std::size_t point_index) const {
  if (point_index >= labels_.size()) {
    throw SpecError("Concept: point index out of range");
  }
  return labels_[point_index];
}

std::uint8_t Concept::at_id(const std::string& id) const {
  return labels_[domain_->index_of(id)];
}

ConceptClass::ConceptClass(DomainPtr domain,
                           std::vector<std::vector<std::uint8_t>> members,
                           std::string generator_tag)
    : domain_(std::move(domain)), members_(std::move(members)),
      tag_(std::move(generator_tag)) {
  if (!domain_) throw SpecError("ConceptClass needs a domain");
  if (members_.empty()) throw SpecError("ConceptClass must be non-empty");
  if (members_.size() > kMaxClassSize) {
    throw GuardError("ConceptClass enumeration limit exceeded");
  }
  std::set<std::vector<std::uint8_t>> seen;
  for (const auto& m : members_) {
    if (m.size() != domain_->size()) {
      throw SpecError("ConceptClass member not total over the domain");
    }
    if (!seen.insert(m).second) {
      throw SpecError("ConceptClass members must be distinct label vectors");
    }
  }
}

Concept ConceptClass::member(std::size_t i) const {
  if (i >= members_.size()) throw SpecError("member index out of range");
  return Concept(domain_, members_[i], tag_ + "[" + std::to_string(i) + "]");
}

ConceptClass thresholds_class(DomainPtr line_domain) {
  const std::size_t n = line_domain->size();
  // f_k(x_i) = 1 iff i >= k, k = 0..n. Includes const-1 (k=0) and const-0.
  std::vector<std::vector<std::uint8_t>> members;
  members.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::uint8_t> row(n, 0);
    for (std::size_t i = k; i < n; ++i) row[i] = 1;
    members.push_back(std::move(row));
  }
  return ConceptClass(std::move(line_domain), std::move(members), "thresholds");
}

namespace {

// All axis-aligned rectangles with corners on the distinct coordinate values
// of the domain, as label vectors; duplicates merged, empty set included.
std::vector<std::vector<std::uint8_t>> rectangle_labelings(const Domain& dom) {
  const std::size_t n = dom.size();
  if (n == 0) throw SpecError("empty domain");
  const std::size_t dims = dom.point(0).coords.size();
  if (dims == 0) throw SpecError("rectangle family needs coordinates");
  std::vector<std::vector<double>> axis_values(dims);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = dom.point(i).coords;
    if (c.size() != dims) throw SpecError("inconsistent coordinate dimension");
    for (std::size_t d = 0; d < dims; ++d) axis_values[d].push_back(c[d]);
  }
  for (auto& v : axis_values) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  // Enumerate lower/upper bound index pairs per axis.
  std::vector<std::vector<std::pair<double, double>>> ranges(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    for (std::size_t a = 0; a < axis_values[d].size(); ++a) {
      for (std::size_t b = a; b < axis_values[d].size(); ++b) {
        ranges[d].emplace_back(axis_values[d][a], axis_values[d][b]);
      }
    }
  }
  std::size_t total = 1;
  for (const auto& r : ranges) {
    total *= r.size();
    if (total > kMaxClassSize) {
      throw GuardError("rectangle family enumeration limit exceeded");
    }
  }
  std::set<std::vector<std::uint8_t>> labelings;
  labelings.insert(std::vector<std::uint8_t>(n, 0));  // empty region
  std::vector<std::size_t> pick(dims, 0);
  for (std::size_t k = 0; k < total; ++k) {
    std::vector<std::uint8_t> row(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& c = dom.point(i).coords;
      for (std::size_t d = 0; d < dims; ++d) {
        const auto& [lo, hi] = ranges[d][pick[d]];
        if (c[d] < lo || c[d] > hi) {
          row[i] = 0;
          break;
        }
      }
    }
    labelings.insert(std::move(row));
    for (std::size_t d = dims; d-- > 0;) {
      if (++pick[d] < ranges[d].size()) break;
      pick[d] = 0;
    }
  }
  return {labelings.begin(), labelings.end()};
}

}  // namespace

ConceptClass axis_rectangles_class(DomainPtr grid_domain) {
  auto rows = rectangle_labelings(*grid_domain);
  return ConceptClass(std::move(grid_domain), std::move(rows),
                      "axis-rectangles");
}

ConceptClass balls_class(DomainPtr domain) {
  const Domain& dom = *domain;
  const std::size_t n = dom.size();
  std::set<double> radii_sq{0.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t d = 0; d < dom.point(i).coords.size(); ++d) {
        const double diff = dom.point(i).coords[d] - dom.point(j).coords[d];
        s += diff * diff;
      }
      radii_sq.insert(s);
    }
  }
  std::set<std::vector<std::uint8_t>> labelings;
  labelings.insert(std::vector<std::uint8_t>(n, 0));
  for (std::size_t c = 0; c < n; ++c) {
    for (double r2 : radii_sq) {
      std::vector<std::uint8_t> row(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t d = 0; d < dom.point(i).coords.size(); ++d) {
          const double diff = dom.point(i).coords[d] - dom.point(c).coords[d];
          s += diff * diff;
        }
        if (s <= r2 + 1e-12) row[i] = 1;
      }
      labelings.insert(std::move(row));
    }
  }
  std::vector<std::vector<std::uint8_t>> rows(labelings.begin(),
                                              labelings.end());
  return ConceptClass(std::move(domain), std::move(rows), "balls");
}

ConceptClass ground_state_noise_class(DomainPtr grid_domain) {
  // Noise type 0 never perturbs the prepared state, so every type-0 member
  // collapses to the constant-0 labelling; type 1 gives region indicators.
  auto rows = rectangle_labelings(*grid_domain);
  return ConceptClass(std::move(grid_domain), std::move(rows),
                      "ground-state-noise");
}

ConceptClass full_binary_class(DomainPtr domain) {
  const std::size_t n = domain->size();
  if (n > 20) throw GuardError("full binary class limited to 20 points");
  std::vector<std::vector<std::uint8_t>> rows;
  rows.reserve(std::size_t(1) << n);
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    std::vector<std::uint8_t> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = (mask >> i) & 1u;
    rows.push_back(std::move(row));
  }
  return ConceptClass(std::move(domain), std::move(rows), "full-binary");
}

std::uint8_t evaluate(const Concept& c, const std::string& instance_id) {
  return c.at_id(instance_id);
}

bool shatters(const ConceptClass& cls,
              const std::vector<std::size_t>& subset_points) {
  const std::size_t k = subset_points.size();
  if (k > kMaxSubsetSize) {
    throw GuardError("shatters: subset larger than enumeration guard");
  }
  for (std::size_t p : subset_points) {
    if (p >= cls.domain()->size()) throw SpecError("subset point out of range");
  }
  if (k == 0) return true;
  const std::size_t want = std::size_t(1) << k;
  std::vector<bool> seen(want, false);
  std::size_t found = 0;
  for (std::size_t m = 0; m < cls.size(); ++m) {
    std::size_t pattern = 0;
    for (std::size_t i = 0; i < k; ++i) {
      pattern |= std::size_t(cls.label(m, subset_points[i])) << i;
    }
    if (!seen[pattern]) {
      seen[pattern] = true;
      if (++found == want) return true;
    }
  }
  return false;
}

namespace {

// Visits all k-subsets of {0..n-1}; returns false if the count guard trips.
template <typename F>
bool for_each_subset(std::size_t n, std::size_t k, F&& stop_when_true) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::size_t visited = 0;
  while (true) {
    if (++visited > kMaxSubsetEnumeration) {
      throw GuardError("vc_dimension_bruteforce: enumeration limit exceeded");
    }
    if (stop_when_true(idx)) return true;
    // next combination
    std::size_t i = k;
    while (i-- > 0) {
      if (idx[i] != i + n - k) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return false;
    }
  }
}

}  // namespace

int vc_dimension_bruteforce(const ConceptClass& cls) {
  const std::size_t n = cls.domain()->size();
  int best = 0;
  for (std::size_t k = 1; k <= std::min(n, kMaxSubsetSize); ++k) {
    // Shattering a k-set requires >= 2^k members.
    if (cls.size() < (std::size_t(1) << k)) break;
    bool any = for_each_subset(n, k, [&](const std::vector<std::size_t>& idx) {
      return shatters(cls, idx);
    });
    if (!any) break;
    best = int(k);
  }
  return best;
}

SamplePartition s_equivalence_classes(
    const ConceptClass& cls, const std::vector<std::size_t>& sample_points) {
  for (std::size_t p : sample_points) {
    if (p >= cls.domain()->size()) throw SpecError("sample point out of range");
  }
  // De-duplicate instances; agreement on a multiset equals agreement on the
  // underlying set.
  std::vector<std::size_t> pts = sample_points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  SamplePartition part;
  part.class_index.resize(cls.size());
  std::map<std::vector<std::uint8_t>, std::size_t> cells;
  for (std::size_t m = 0; m < cls.size(); ++m) {
    std::vector<std::uint8_t> sig(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) sig[i] = cls.label(m, pts[i]);
    auto [it, inserted] = cells.emplace(std::move(sig), part.representatives.size());
    if (inserted) part.representatives.push_back(m);
    part.class_index[m] = it->second;
  }
  return part;
}

std::optional<DisagreementWitness> find_disagreement(const ConceptClass& cls) {
  for (std::size_t x = 0; x < cls.domain()->size(); ++x) {
    std::optional<std::size_t> zero, one;
    for (std::size_t m = 0; m < cls.size() && !(zero && one); ++m) {
      if (cls.label(m, x) == 0 && !zero) zero = m;
      if (cls.label(m, x) == 1 && !one) one = m;
    }
    if (zero && one) return DisagreementWitness{*zero, *one, x};
  }
  return std::nullopt;
}

std::optional<PairWitness> find_agreement_and_disagreement(
    const ConceptClass& cls) {
  const std::size_t n = cls.domain()->size();
  for (std::size_t f = 0; f < cls.size(); ++f) {
    for (std::size_t g = f + 1; g < cls.size(); ++g) {
      std::optional<std::size_t> agree, disagree;
      for (std::size_t x = 0; x < n && !(agree && disagree); ++x) {
        if (cls.label(f, x) == cls.label(g, x)) {
          if (!agree) agree = x;
        } else if (!disagree) {
          disagree = x;
        }
      }
      if (agree && disagree) return PairWitness{f, g, *agree, *disagree};
    }
  }
  return std::nullopt;
}

}  // namespace cqlearn
