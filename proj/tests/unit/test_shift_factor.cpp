#include <doctest.h>

#include "profdyn/shift_factor.hpp"
#include "support/generators.hpp"

using namespace profdyn;

namespace {

const Rational half(1, 2);

}  // namespace

TEST_SUITE("shift_factor") {
  TEST_CASE("phi_sequence") {
    const Dynamics shift = shift_map(make_cyclic_tower(2, 5));
    const auto digits = phi_sequence(shift, Point{13, 5}, 1, 4);
    CHECK(digits.symbols == std::vector<Element>{1, 0, 1, 1});
    CHECK(digits.source == "shift");

    const Dynamics plus_one = from_polynomial(make_cyclic_tower(2, 3), std::vector<std::int64_t>{1, 1});
    CHECK(phi_sequence(plus_one, Point{0, 3}, 1, 4).symbols == std::vector<Element>{0, 1, 0, 1});

    // f(3) = C(3,2) = 3 needs 3 mod 4; both symbols are 3 mod 2.
    const Dynamics binom = binomial_map(make_cyclic_tower(2, 3));
    CHECK(phi_sequence(binom, Point{3, 3}, 1, 2).symbols == std::vector<Element>{1, 1});

    CHECK_THROWS_AS(phi_sequence(shift, Point{5, 3}, 1, 4), PrecisionExhausted);
  }

  TEST_CASE("csv export") {
    const Dynamics shift = shift_map(make_cyclic_tower(2, 4));
    CHECK(to_csv(phi_sequence(shift, Point{11, 4}, 1, 4)) == "step,symbol\n0,1\n1,1\n2,0\n3,1\n");
    CHECK(to_csv(phi_sequence(shift, Point{11, 4}, 1, 0)) == "step,symbol\n");
  }

  TEST_CASE("is_deterministic_factor") {
    const Dynamics plus_one = from_polynomial(make_cyclic_tower(2, 4), std::vector<std::int64_t>{1, 1});
    CHECK(is_deterministic_factor(plus_one, 1, 8).deterministic);

    const Dynamics identity = from_polynomial(make_cyclic_tower(3, 3), std::vector<std::int64_t>{0, 1});
    for (Level i = 0; i <= 3; ++i) CHECK(is_deterministic_factor(identity, i, 5).deterministic);

    const Dynamics shift = shift_map(make_cyclic_tower(2, 4));
    const auto v = is_deterministic_factor(shift, 1, 2);
    CHECK_FALSE(v.deterministic);
    REQUIRE(v.witness.has_value());
    CHECK(*v.witness == std::pair<Element, Element>{0, 2});
    CHECK(v.first_sequence == std::vector<Element>{0, 0});
    CHECK(v.second_sequence == std::vector<Element>{0, 1});
  }

  TEST_CASE("cylinder_frequencies") {
    const Dynamics shift = shift_map(make_cyclic_tower(2, 4));
    const auto words = cylinder_frequencies(shift, 1, 3, 4);
    CHECK(words.size() == 8);
    for (const auto& [w, f] : words) CHECK(f == Rational(1, 8));
    CHECK(is_uniform_bernoulli(words, 2, 3));

    const Dynamics binom = binomial_map(make_cyclic_tower(2, 2));
    const auto single = cylinder_frequencies(binom, 1, 1, 2);
    CHECK(single == WordFrequencies{{{0}, half}, {{1}, half}});

    const Dynamics plus_one = from_polynomial(make_cyclic_tower(2, 2), std::vector<std::int64_t>{1, 1});
    const auto alternation = cylinder_frequencies(plus_one, 1, 2, 2);
    CHECK(alternation == WordFrequencies{{{0, 1}, half}, {{1, 0}, half}});
    CHECK_FALSE(is_uniform_bernoulli(alternation, 2, 2));

    CHECK_THROWS_AS(cylinder_frequencies(shift, 1, 3, 2), PrecisionExhausted);
    CHECK_THROWS_AS(cylinder_frequencies(shift, 1, 5, 4), PrecisionExhausted);
  }

  TEST_CASE("shift map is Bernoulli at level 1") {
    for (Element p : {2, 3}) {
      const auto t = make_cyclic_tower(p, p == 2 ? 8 : 5);
      const Dynamics shift = shift_map(t);
      for (std::size_t w = 1; w + 1 <= static_cast<std::size_t>(t.depth()); ++w) {
        REQUIRE(is_uniform_bernoulli(cylinder_frequencies(shift, 1, w, static_cast<Level>(w + 1)), p, w));
      }
    }
  }

  TEST_CASE("shift digits reconstruct x mod p^k") {
    const auto t = make_cyclic_tower(3, 5);
    const Dynamics shift = shift_map(t);
    for (Level k = 1; k <= 5; ++k) {
      for (Element x = 0; x < t.order(k); ++x) {
        const auto digits = phi_sequence(shift, Point{x, k}, 1, static_cast<std::size_t>(k)).symbols;
        Element rebuilt = 0;
        for (std::size_t s = digits.size(); s-- > 0;) rebuilt = rebuilt * 3 + digits[s];
        REQUIRE(rebuilt == x);
      }
    }
  }

  TEST_CASE("property: compatible families are deterministic factors") {
    testing::Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
      const auto t = testing::random_tower(rng);
      const Dynamics f = testing::random_family(rng, t);
      for (Level i = 0; i <= t.depth(); ++i) REQUIRE(is_deterministic_factor(f, i, 16).deterministic);
    }
  }
}
