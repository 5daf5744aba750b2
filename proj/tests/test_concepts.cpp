#include <doctest.h>

#include <algorithm>

#include "cqlearn/concepts.hpp"
#include "cqlearn/errors.hpp"
#include "cqlearn/random.hpp"

using namespace cqlearn;

TEST_CASE("domain construction and lookup") {
  auto line = Domain::line(5);
  CHECK(line->size() == 5);
  CHECK(line->index_of("3") == 2);
  CHECK(!line->find("nope"));
  CHECK_THROWS_AS(line->index_of("nope"), SpecError);

  CHECK_THROWS_AS(Domain({{"a", {}}, {"a", {}}}), SpecError);

  auto grid = Domain::grid({5, 5});
  CHECK(grid->size() == 25);
  CHECK(grid->point(0).coords == std::vector<double>{1.0, 1.0});
}

TEST_CASE("evaluate: constant, threshold, and noise-region concepts") {
  auto line = Domain::line(5);
  const ConceptClass thr = thresholds_class(line);
  // Member k labels x_i with 1 iff i >= k; member 0 is constant 1, member 5
  // constant 0.
  CHECK(evaluate(thr.member(5), "2") == 0);
  // Threshold at 3 (0-based k=3 -> first 1 at x=4).
  CHECK(evaluate(thr.member(3), "4") == 1);
  CHECK(evaluate(thr.member(3), "3") == 0);
  CHECK_THROWS_AS(evaluate(thr.member(0), "77"), SpecError);

  // Ground-state noise family over a small grid: a type-1 noise region
  // labels its interior 1.
  auto grid = Domain::grid({3, 3});
  const ConceptClass gs = ground_state_noise_class(grid);
  // Find the member matching the full-grid rectangle.
  bool found_full = false;
  for (std::size_t m = 0; m < gs.size(); ++m) {
    bool all_one = true;
    for (std::size_t p = 0; p < grid->size(); ++p) {
      all_one = all_one && gs.label(m, p) == 1;
    }
    if (all_one) {
      found_full = true;
      for (std::size_t p = 0; p < grid->size(); ++p) {
        CHECK(gs.member(m)(p) == 1);
      }
    }
  }
  CHECK(found_full);
  // The benign noise type collapses to the constant-0 member.
  bool found_zero = false;
  for (std::size_t m = 0; m < gs.size(); ++m) {
    bool all_zero = true;
    for (std::size_t p = 0; p < grid->size(); ++p) {
      all_zero = all_zero && gs.label(m, p) == 0;
    }
    found_zero = found_zero || all_zero;
  }
  CHECK(found_zero);
}

TEST_CASE("shatters: empty subset, thresholds, full binary class") {
  auto line = Domain::line(10);
  const ConceptClass thr = thresholds_class(line);
  CHECK(shatters(thr, {}));
  // Labeling (1, 0) on {3, 7} is unrealizable for monotone thresholds.
  CHECK_FALSE(shatters(thr, {2, 6}));
  CHECK(shatters(thr, {4}));

  auto small = Domain::line(3);
  const ConceptClass full = full_binary_class(small);
  CHECK(shatters(full, {0, 1, 2}));

  std::vector<std::size_t> too_big(26, 0);
  CHECK_THROWS_AS(shatters(thr, too_big), GuardError);
}

TEST_CASE("vc_dimension_bruteforce: canonical classes") {
  auto line = Domain::line(20);
  const ConceptClass thr = thresholds_class(line);
  CHECK(vc_dimension_bruteforce(thr) == 1);

  // Single concept.
  const ConceptClass single(line, {std::vector<std::uint8_t>(20, 0)});
  CHECK(vc_dimension_bruteforce(single) == 0);

  for (int n = 1; n <= 4; ++n) {
    auto dom = Domain::line(n);
    CHECK(vc_dimension_bruteforce(full_binary_class(dom)) == n);
  }
}

TEST_CASE("vc_dimension_bruteforce: axis rectangles on a 5x5 grid give 4") {
  auto grid = Domain::grid({5, 5});
  const ConceptClass rects = axis_rectangles_class(grid);
  CHECK(vc_dimension_bruteforce(rects) == 4);
}

TEST_CASE("ground-state noise family has the rectangle class VC dimension") {
  auto grid = Domain::grid({4, 4});
  const ConceptClass gs = ground_state_noise_class(grid);
  const ConceptClass rects = axis_rectangles_class(grid);
  CHECK(vc_dimension_bruteforce(gs) == vc_dimension_bruteforce(rects));
}

TEST_CASE("s_equivalence_classes: representatives and cell counts") {
  auto line = Domain::line(10);
  const ConceptClass thr = thresholds_class(line);

  SUBCASE("empty sample collapses to one cell with representative 0") {
    const SamplePartition p = s_equivalence_classes(thr, {});
    CHECK(p.representatives.size() == 1);
    CHECK(p.representatives[0] == 0);
    for (std::size_t c : p.class_index) CHECK(c == 0);
  }

  SUBCASE("constants split on any non-empty sample") {
    const ConceptClass consts(line, {std::vector<std::uint8_t>(10, 0),
                                     std::vector<std::uint8_t>(10, 1)});
    const SamplePartition p = s_equivalence_classes(consts, {4});
    CHECK(p.representatives.size() == 2);
  }

  SUBCASE("thresholds split at the sampled point") {
    // Sample {4} (index 3): cells = thresholds <= 4 vs > 4.
    const SamplePartition p = s_equivalence_classes(thr, {3});
    CHECK(p.representatives.size() == 2);
    // Members 0..3 label x=4 with 1, members 4..10 with 0.
    for (std::size_t m = 0; m <= 3; ++m) CHECK(p.class_index[m] == 0);
    for (std::size_t m = 4; m <= 10; ++m) CHECK(p.class_index[m] == 1);
  }

  SUBCASE("Sauer-type sanity bound for thresholds") {
    RandomSource rng(17);
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<std::size_t> sample;
      const int k = 1 + int(rng.uniform() * 6);
      for (int i = 0; i < k; ++i) {
        sample.push_back(std::size_t(rng.uniform() * 10));
      }
      const SamplePartition p = s_equivalence_classes(thr, sample);
      CHECK(p.representatives.size() <= sample.size() + 1);
      CHECK(p.representatives.size() <= thr.size());
    }
  }
}

TEST_CASE("property: adding members never decreases brute-force VC dimension") {
  RandomSource rng(19);
  auto dom = Domain::line(6);
  for (int rep = 0; rep < 30; ++rep) {
    // Random base class, then a strict superset.
    std::vector<std::vector<std::uint8_t>> base;
    const int n_base = 2 + int(rng.uniform() * 6);
    for (int i = 0; i < n_base; ++i) {
      std::vector<std::uint8_t> row(6);
      for (auto& b : row) b = rng.uniform() < 0.5 ? 1 : 0;
      base.push_back(row);
    }
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    auto extended = base;
    for (int extra = 0; extra < 4; ++extra) {
      std::vector<std::uint8_t> row(6);
      for (auto& b : row) b = rng.uniform() < 0.5 ? 1 : 0;
      if (std::find(extended.begin(), extended.end(), row) == extended.end()) {
        extended.push_back(row);
      }
    }
    const int vc_base = vc_dimension_bruteforce(ConceptClass(dom, base));
    const int vc_ext = vc_dimension_bruteforce(ConceptClass(dom, extended));
    CHECK(vc_ext >= vc_base);
  }
}

TEST_CASE("non-triviality predicates") {
  auto line = Domain::line(4);
  const ConceptClass thr = thresholds_class(line);
  const auto w = find_disagreement(thr);
  REQUIRE(w);
  CHECK(thr.label(w->f, w->x) == 0);
  CHECK(thr.label(w->g, w->x) == 1);

  const auto pw = find_agreement_and_disagreement(thr);
  REQUIRE(pw);
  CHECK(thr.label(pw->f, pw->x_agree) == thr.label(pw->g, pw->x_agree));
  CHECK(thr.label(pw->f, pw->x_disagree) != thr.label(pw->g, pw->x_disagree));

  const ConceptClass single(line, {std::vector<std::uint8_t>(4, 0)});
  CHECK_FALSE(find_disagreement(single));
  CHECK_FALSE(find_agreement_and_disagreement(single));
}

TEST_CASE("class invariants: distinct members, totality") {
  auto line = Domain::line(3);
  CHECK_THROWS_AS(ConceptClass(line, {{0, 0, 0}, {0, 0, 0}}), SpecError);
  CHECK_THROWS_AS(ConceptClass(line, {{0, 0}}), SpecError);
  CHECK_THROWS_AS(ConceptClass(line, {}), SpecError);
}
