#include <doctest.h>

#include "profdyn/analysis.hpp"
#include "support/generators.hpp"

using namespace profdyn;

namespace {

CompatibleFamily poly(Element p, Level depth, std::vector<std::int64_t> c) {
  return from_polynomial(make_cyclic_tower(p, depth), c);
}

// Oracle: the orbit of 0 under the level map returns to 0 after exactly n steps
// and visits every point on the way.
bool single_orbit_visits_everything(std::span<const Element> table) {
  std::vector<char> seen(table.size(), 0);
  Element x = 0;
  for (std::size_t s = 0; s < table.size(); ++s) {
    if (seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = 1;
    x = table[static_cast<std::size_t>(x)];
  }
  return x == 0;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("cycle_structure") {
    CHECK(cycle_structure(poly(5, 1, {1, 1}), 1).cycle_lengths == std::vector<Element>{5});
    const auto reflect = cycle_structure(poly(2, 2, {1, 3}), 2);
    CHECK(reflect.bijective);
    CHECK(reflect.cycle_lengths == std::vector<Element>{2, 2});
    CHECK(cycle_structure(poly(5, 1, {0, 3}), 1).cycle_lengths == std::vector<Element>{1, 4});

    const auto square = cycle_structure(poly(5, 1, {0, 0, 1}), 1);
    CHECK_FALSE(square.bijective);
    REQUIRE(square.collision.has_value());
    CHECK(*square.collision == Collision{2, 3, 4});
    CHECK(square.cycle_lengths.empty());
  }

  TEST_CASE("is_measure_preserving") {
    const auto plus_one = is_measure_preserving(poly(2, 8, {1, 1}));
    CHECK(plus_one.measure_preserving);
    CHECK(plus_one.certified_depth == 8);

    const auto square = is_measure_preserving(poly(5, 3, {0, 0, 1}));
    CHECK_FALSE(square.measure_preserving);
    CHECK(square.failing_level == 1);
    CHECK(*square.witness == Collision{2, 3, 4});

    CHECK(is_measure_preserving(poly(3, 3, {0, 1})).measure_preserving);
  }

  TEST_CASE("is_ergodic") {
    const auto rotation = is_ergodic(poly(3, 5, {1, 1}));
    CHECK(rotation.ergodic);
    CHECK(rotation.certified_depth == 5);

    const auto affine = is_ergodic(poly(2, 2, {1, 3}));
    CHECK_FALSE(affine.ergodic);
    CHECK(affine.failing_level == 2);
    CHECK(affine.cycle_type == std::vector<Element>{2, 2});

    CHECK(is_ergodic(poly(2, 1, {1, 1})).ergodic);

    const auto square = is_ergodic(poly(5, 2, {0, 0, 1}));
    CHECK_FALSE(square.ergodic);
    CHECK(square.witness.has_value());
  }

  TEST_CASE("equivalence_report") {
    const auto rotation = equivalence_report(poly(2, 6, {1, 1}));
    CHECK(rotation.consistent());
    for (const auto& c : rotation.levels) {
      CHECK(c.bijective);
      CHECK(c.surjective);
      CHECK(c.injective);
      CHECK(c.uniform_pushforward);
    }

    const auto square = equivalence_report(poly(5, 2, {0, 0, 1}));
    CHECK(square.consistent());
    for (Level i = 1; i <= 2; ++i) {
      const auto& c = square.levels[static_cast<std::size_t>(i)];
      CHECK_FALSE(c.bijective);
      CHECK_FALSE(c.surjective);
      CHECK_FALSE(c.injective);
      CHECK_FALSE(c.uniform_pushforward);
    }
    // Preimage counts of x^2 mod 5.
    CHECK(square.levels[1].pushforward ==
          std::vector<Rational>{Rational(1, 5), Rational(2, 5), Rational(0), Rational(0), Rational(2, 5)});

    const auto doubling = equivalence_report(poly(3, 3, {0, 2}));
    CHECK(doubling.consistent());
    for (const auto& c : doubling.levels) CHECK(c.bijective);
  }

  TEST_CASE("total_ergodicity_obstruction") {
    const auto two = total_ergodicity_obstruction(poly(2, 5, {1, 1}));
    REQUIRE(two.has_value());
    CHECK(two->period == 2);
    CHECK(two->level == 1);
    CHECK(two->certified);

    const auto three = total_ergodicity_obstruction(poly(3, 4, {1, 1}));
    REQUIRE(three.has_value());
    CHECK(three->period == 3);

    CHECK_FALSE(total_ergodicity_obstruction(poly(2, 3, {0, 1})).has_value());

    // Not ergodic, yet minimal at level 1: the obstruction still applies there.
    const auto partial = total_ergodicity_obstruction(poly(2, 3, {1, 3}));
    REQUIRE(partial.has_value());
    CHECK(partial->period == 2);
  }

  TEST_CASE("orbit") {
    CHECK(orbit(poly(2, 2, {1, 1}), Point{0, 2}, 2, 5) == std::vector<Element>{0, 1, 2, 3, 0});
    CHECK(orbit(shift_map(make_cyclic_tower(2, 4)), Point{11, 4}, 1, 4) == std::vector<Element>{1, 1, 0, 1});

    // Oracle: iterate 5x+1 mod 8 directly.
    std::vector<Element> expected;
    for (Element x = 0, s = 0; s < 8; ++s, x = (5 * x + 1) % 8) expected.push_back(x);
    CHECK(expected == std::vector<Element>{0, 1, 6, 7, 4, 5, 2, 3});
    CHECK(orbit(poly(2, 3, {1, 5}), Point{0, 3}, 3, 8) == expected);

    CHECK_THROWS_AS(orbit(shift_map(make_cyclic_tower(2, 4)), Point{11, 4}, 1, 5), PrecisionExhausted);
  }

  TEST_CASE("equidistribution_stats") {
    const auto z4 = make_cyclic_tower(2, 2);
    const auto rotation = equidistribution_stats(orbit(poly(2, 2, {1, 1}), Point{0, 2}, 2, 4), 2, z4);
    for (const auto& f : rotation.frequencies) CHECK(f == Rational(1, 4));
    CHECK(rotation.max_deviation == Rational(0));

    const auto reflect = equidistribution_stats(orbit(poly(2, 2, {1, 3}), Point{0, 2}, 2, 4), 2, z4);
    CHECK(reflect.frequencies == std::vector<Rational>{Rational(1, 2), Rational(1, 2), Rational(0), Rational(0)});
    CHECK(reflect.max_deviation == Rational(1, 4));

    const auto z8 = make_cyclic_tower(2, 3);
    CHECK(equidistribution_stats(orbit(poly(2, 3, {1, 1}), Point{0, 3}, 3, 8), 3, z8).max_deviation == Rational(0));
  }

  TEST_CASE("pushforward_uniform for precision maps") {
    const auto t = make_cyclic_tower(2, 4);
    CHECK(pushforward_uniform(shift_map(t), 1) == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(pushforward_uniform(binomial_map(t), 1) == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    const PrecisionMap zero(
        t, [](Level i) { return i; }, [](Element, Level) { return Element{0}; }, "zero");
    CHECK(pushforward_uniform(zero, 1) == std::vector<Rational>{Rational(1), Rational(0)});
    CHECK_THROWS_AS(pushforward_uniform(shift_map(t), 4), PrecisionExhausted);

    // The shift is measure-preserving at every level it can be evaluated.
    for (Level i = 1; i < 4; ++i)
      for (const auto& w : pushforward_uniform(shift_map(t), i)) CHECK(w == Rational(1, t.order(i)));
  }

  TEST_CASE("analyze aggregates verdicts") {
    const auto r = analyze(poly(3, 4, {1, 1}));
    CHECK(r.measure_preserving);
    CHECK(r.ergodic);
    CHECK_FALSE(r.totally_ergodic_possible);
    REQUIRE(r.obstruction.has_value());
    CHECK(r.obstruction->period == 3);
    CHECK(r.cycles.size() == 5);
    CHECK(r.cycles[4].cycle_lengths == std::vector<Element>{81});
  }

  TEST_CASE("property: equivalence chain and minimality oracle on random families") {
    testing::Rng rng(2024);
    int ergodic_seen = 0;
    int bijective_seen = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const auto t = testing::random_tower(rng);
      const auto f = testing::random_family(rng, t);
      const auto report = equivalence_report(f);
      REQUIRE(report.consistent());

      const auto mp = is_measure_preserving(f);
      bool all_bijective = true;
      for (const auto& c : report.levels) all_bijective = all_bijective && c.bijective;
      REQUIRE(mp.measure_preserving == all_bijective);
      bijective_seen += all_bijective ? 1 : 0;

      // Bijectivity descends along compatible surjections.
      for (Level i = 0; i < t.depth(); ++i)
        if (report.levels[static_cast<std::size_t>(i + 1)].bijective) REQUIRE(report.levels[static_cast<std::size_t>(i)].bijective);

      bool oracle_ergodic = true;
      for (Level i = 1; i <= t.depth(); ++i) {
        const bool minimal = cycle_structure(f, i).minimal();
        REQUIRE(minimal == single_orbit_visits_everything(f.table(i)));
        oracle_ergodic = oracle_ergodic && minimal;
      }
      const auto e = is_ergodic(f);
      REQUIRE(e.ergodic == oracle_ergodic);

      if (e.ergodic && t.depth() >= 1) {
        ++ergodic_seen;
        const auto n = t.order(1);
        for (Element x = 0; x < n; ++x) REQUIRE(apply_at_level(f, Point{x, 1}, 1, static_cast<int>(n)) == x);
      }
    }
    CHECK(ergodic_seen > 5);
    CHECK(bijective_seen > 30);
  }
}
