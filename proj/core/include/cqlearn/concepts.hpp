#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cqlearn {

// One classical instance: an identifier plus optional coordinates in R^D.
struct Instance {
  std::string id;
  std::vector<double> coords;
};

// Finite ordered instance domain. Ordering is fixed at construction and is
// used everywhere for deterministic tie-breaking.
class Domain {
 public:
  explicit Domain(std::vector<Instance> points);

  // 1-D line domain with ids "1".."n" and coordinate i+1.
  static std::shared_ptr<const Domain> line(int n);
  // D-dimensional grid with side lengths per axis; ids "i_j_k..." style.
  static std::shared_ptr<const Domain> grid(const std::vector<int>& sides);

  std::size_t size() const { return points_.size(); }
  const Instance& point(std::size_t i) const { return points_[i]; }
  std::size_t index_of(const std::string& id) const;  // throws if unknown
  std::optional<std::size_t> find(const std::string& id) const;

 private:
  std::vector<Instance> points_;
  std::vector<std::pair<std::string, std::size_t>> sorted_ids_;
};

using DomainPtr = std::shared_ptr<const Domain>;

// Total 0/1 labelling of a domain.
class Concept {
 public:
  Concept(DomainPtr domain, std::vector<std::uint8_t> labels,
          std::string name = "");

  const DomainPtr& domain() const { return domain_; }
  const std::vector<std::uint8_t>& labels() const { return labels_; }
  const std::string& name() const { return name_; }

  std::uint8_t operator()(std::size_t point_index) const;
  std::uint8_t at_id(const std::string& id) const;

 private:
  DomainPtr domain_;
  std::vector<std::uint8_t> labels_;
  std::string name_;
};

// Finite, enumerable family of distinct concepts over a shared domain.
class ConceptClass {
 public:
  ConceptClass(DomainPtr domain, std::vector<std::vector<std::uint8_t>> members,
               std::string generator_tag = "explicit");

  const DomainPtr& domain() const { return domain_; }
  std::size_t size() const { return members_.size(); }
  const std::string& generator_tag() const { return tag_; }

  std::uint8_t label(std::size_t member, std::size_t point) const {
    return members_[member][point];
  }
  const std::vector<std::uint8_t>& member_labels(std::size_t member) const {
    return members_[member];
  }
  Concept member(std::size_t i) const;

 private:
  DomainPtr domain_;
  std::vector<std::vector<std::uint8_t>> members_;
  std::string tag_;
};

// Generators. Domains are finite and explicit; geometric families are
// enumerated over the domain's coordinates.
ConceptClass thresholds_class(DomainPtr line_domain);
ConceptClass axis_rectangles_class(DomainPtr grid_domain);
ConceptClass balls_class(DomainPtr domain);
// Example family {const-0} + {indicator of R : R in rectangle family}; the
// rectangle family is every axis-aligned coordinate rectangle plus the
// empty set, with duplicates (as label vectors) merged.
ConceptClass ground_state_noise_class(DomainPtr grid_domain);
// All 2^n labelings of a small domain (n <= 20).
ConceptClass full_binary_class(DomainPtr domain);

std::uint8_t evaluate(const Concept& c, const std::string& instance_id);

// True iff every labelling of the subset is realized by some member.
// Guard: subset size <= 25.
bool shatters(const ConceptClass& cls,
              const std::vector<std::size_t>& subset_points);

// Largest n such that some n-subset of the domain is shattered.
int vc_dimension_bruteforce(const ConceptClass& cls);

// Partition of the members by agreement on the sampled instances.
// representatives[k] = lowest member index in cell k; cells are ordered by
// first appearance while scanning members in index order.
struct SamplePartition {
  std::vector<std::size_t> representatives;  // member indices
  std::vector<std::size_t> class_index;      // member -> cell
};
SamplePartition s_equivalence_classes(
    const ConceptClass& cls, const std::vector<std::size_t>& sample_points);

// Lower-bound constructions need two members disagreeing at some point
// (returned as f, g, x with f(x)=0, g(x)=1), and the realizable variant
// additionally needs a point where they agree. The sources leave
// "non-trivial" informal; these predicates encode both readings.
struct DisagreementWitness {
  std::size_t f, g, x;
};
std::optional<DisagreementWitness> find_disagreement(const ConceptClass& cls);
struct PairWitness {
  std::size_t f, g, x_agree, x_disagree;
};
std::optional<PairWitness> find_agreement_and_disagreement(
    const ConceptClass& cls);

}  // namespace cqlearn
