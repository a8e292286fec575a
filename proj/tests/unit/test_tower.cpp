#include <doctest.h>

#include "profdyn/tower.hpp"
#include "support/generators.hpp"

using namespace profdyn;

TEST_SUITE("tower") {
  TEST_CASE("cyclic tower levels and reductions") {
    const auto t = make_cyclic_tower(2, 3);
    CHECK(t.depth() == 3);
    CHECK(t.order(0) == 1);
    CHECK(t.order(1) == 2);
    CHECK(t.order(2) == 4);
    CHECK(t.order(3) == 8);
    std::vector<Element> image;
    for (Element x = 0; x < 4; ++x) image.push_back(t.transition(2)(x));
    CHECK(image == std::vector<Element>{0, 1, 0, 1});

    const auto z5 = make_cyclic_tower(5, 1);
    CHECK(z5.depth() == 1);
    CHECK(z5.order(1) == 5);

    CHECK(project(make_cyclic_tower(3, 4), 80, 4, 2) == 8);
  }

  TEST_CASE("cyclic tower capacity and bad input") {
    CHECK_THROWS_AS(make_cyclic_tower(2, 31), CapacityError);
    CHECK_NOTHROW(make_cyclic_tower(2, 30));
    CHECK_THROWS_AS(make_cyclic_tower(10, 10), CapacityError);
    CHECK_THROWS_AS(make_cyclic_tower(1, 3), InvalidInput);
    CHECK_THROWS_AS(make_cyclic_tower(2, 0), InvalidInput);
  }

  TEST_CASE("composite base gives the Z/n^k chain") {
    const auto t = make_cyclic_tower(6, 2);
    CHECK(t.order(2) == 36);
    CHECK(verify_tower(t).clean());
  }

  TEST_CASE("product towers") {
    const auto t = make_product_tower({make_cyclic_tower(2, 2), make_cyclic_tower(3, 2)});
    CHECK(t.order(2) == 36);
    CHECK(t.order(1) == 6);

    const auto single = make_product_tower({make_cyclic_tower(2, 1)});
    CHECK(single.depth() == 1);
    CHECK(single.order(1) == 2);
    CHECK(project(single, 1, 1, 0) == 0);

    const auto square = make_product_tower({make_cyclic_tower(2, 3), make_cyclic_tower(2, 3)});
    CHECK(square.order(1) == 4);
    CHECK(square.level(1).kind() == FiniteQuotient::Kind::DirectProduct);

    CHECK_THROWS_AS(make_product_tower({}), InvalidInput);
  }

  TEST_CASE("product of unequal depths pads the shallower component") {
    const auto t = make_product_tower({make_cyclic_tower(2, 3), make_cyclic_tower(3, 1)});
    CHECK(t.depth() == 3);
    CHECK(t.order(1) == 6);
    CHECK(t.order(2) == 12);
    CHECK(t.order(3) == 24);
    CHECK(verify_tower(t).clean());
    // (5, 2) at level 3 -> (1, 2) at level 1
    const auto& top = t.level(3);
    const auto& bottom = t.level(1);
    const std::vector<Element> x{5, 2};
    CHECK(bottom.decode(project(t, top.encode(x), 3, 1)) == std::vector<Element>{1, 2});
  }

  TEST_CASE("project") {
    const auto z2 = make_cyclic_tower(2, 3);
    CHECK(project(z2, 5, 3, 1) == 1);
    CHECK(project(z2, 5, 3, 3) == 5);
    CHECK(project(z2, 7, 3, 0) == 0);
    CHECK(project(make_cyclic_tower(3, 3), 22, 3, 2) == 4);
    CHECK_THROWS_AS(project(z2, 1, 1, 2), InvalidInput);
    CHECK_THROWS_AS(project(z2, 8, 3, 1), InvalidInput);
  }

  TEST_CASE("verify_tower reports violations") {
    CHECK(verify_tower(make_cyclic_tower(2, 4)).clean());

    auto z4_to_z2 = [](std::vector<Element> table) {
      return Tower::assemble({FiniteQuotient::cyclic(1), FiniteQuotient::cyclic(2), FiniteQuotient::cyclic(4)},
                             {TransitionMap::from_table(1, {0, 0}), TransitionMap::from_table(2, std::move(table))});
    };

    const auto constant = verify_tower(z4_to_z2({0, 0, 0, 0}));
    REQUIRE_FALSE(constant.clean());
    bool surjectivity = false;
    for (const auto& v : constant.violations) {
      if (v.kind == TowerViolation::Kind::NotSurjective) {
        surjectivity = true;
        CHECK(v.source == 2);
        CHECK(v.target == 1);
        CHECK(v.x == 1);
      }
    }
    CHECK(surjectivity);

    const auto twisted = verify_tower(z4_to_z2({0, 1, 1, 0}));
    REQUIRE_FALSE(twisted.clean());
    const auto& v = twisted.violations.front();
    CHECK(v.kind == TowerViolation::Kind::NotHomomorphism);
    CHECK(v.x == 1);
    CHECK(v.y == 1);
    CHECK(describe(v).find("x=1, y=1") != std::string::npos);
  }

  TEST_CASE("level zero must be trivial") {
    const auto t = Tower::assemble({FiniteQuotient::cyclic(2)}, {});
    const auto report = verify_tower(t);
    REQUIRE_FALSE(report.clean());
    CHECK(report.violations.front().kind == TowerViolation::Kind::LevelZeroNotTrivial);
  }

  TEST_CASE("assemble checks arity") {
    CHECK_THROWS_AS(Tower::assemble({FiniteQuotient::cyclic(1), FiniteQuotient::cyclic(2)}, {}), InvalidInput);
    CHECK_THROWS_AS(Tower::assemble({FiniteQuotient::cyclic(1), FiniteQuotient::cyclic(2)},
                                    {TransitionMap::from_table(2, {0, 0})}),
                    InvalidInput);
  }

  TEST_CASE("table groups") {
    const auto s3 = testing::symmetric3();
    CHECK(s3.order() == 6);
    CHECK(s3.identity() == 0);
    for (Element x = 0; x < 6; ++x) {
      CHECK(s3.op(x, s3.inv(x)) == s3.identity());
      CHECK(s3.op(s3.inv(x), x) == s3.identity());
    }
    // Non-abelian.
    bool commutes = true;
    for (Element x = 0; x < 6; ++x)
      for (Element y = 0; y < 6; ++y) commutes = commutes && s3.op(x, y) == s3.op(y, x);
    CHECK_FALSE(commutes);

    CHECK(verify_tower(testing::symmetric_tower()).clean());

    CHECK_THROWS_AS(FiniteQuotient::from_table({{0, 1}, {1, 1}}), InvalidInput);          // 1 has no inverse
    CHECK_THROWS_AS(FiniteQuotient::from_table({{1, 0}, {0, 0}}), InvalidInput);          // no identity
    CHECK_THROWS_AS(FiniteQuotient::from_table({{0, 1}, {1}}), InvalidInput);             // not square
    // Identity and self-inverses, but (3*1)*1 != 3*(1*1).
    CHECK_THROWS_AS(FiniteQuotient::from_table({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 1, 2, 0}}),
                    InvalidInput);
  }

  TEST_CASE("haar weight is uniform counting measure") {
    const auto t = make_cyclic_tower(3, 2);
    CHECK(t.level(2).haar_weight() == Rational(1, 9));
    CHECK(t.level(0).haar_weight() == Rational(1));
  }

  TEST_CASE("subgroups") {
    const auto t = make_cyclic_tower(3, 2);
    const auto h = make_subgroup(t, 2, {6, 0, 3});
    CHECK(h.elements == std::vector<Element>{0, 3, 6});
    CHECK(h.normal);
    CHECK_THROWS_AS(make_subgroup(t, 2, {0, 1}), InvalidInput);
    CHECK_THROWS_AS(make_subgroup(t, 2, {3, 6}), InvalidInput);

    const auto s3 = testing::symmetric3();
    // A transposition generates a non-normal subgroup of order 2.
    Element transposition = 1;
    const auto c2 = generate_subgroup(s3, 0, std::vector<Element>{transposition});
    CHECK(c2.size() == 2);
    CHECK_FALSE(c2.normal);

    const auto kernel = level_kernel(t, 2, 1);
    CHECK(kernel.elements == std::vector<Element>{0, 3, 6});
  }

  TEST_CASE("property: projections compose, fibers are uniform, mixed radix is bijective") {
    testing::Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
      const auto t = testing::random_tower(rng, 512);
      CHECK(verify_tower(t).clean());
      for (Level j = 0; j <= t.depth(); ++j) {
        for (Level mid = 0; mid <= j; ++mid)
          for (Level i = 0; i <= mid; ++i)
            for (Element x = 0; x < t.order(j); ++x)
              REQUIRE(project(t, x, j, i) == project(t, project(t, x, j, mid), mid, i));

        if (j >= 1) {
          std::vector<Element> fiber(static_cast<std::size_t>(t.order(j - 1)), 0);
          for (Element x = 0; x < t.order(j); ++x) ++fiber[static_cast<std::size_t>(t.transition(j)(x))];
          for (auto size : fiber) REQUIRE(size == t.order(j) / t.order(j - 1));
        }

        const auto& q = t.level(j);
        if (q.kind() == FiniteQuotient::Kind::DirectProduct) {
          for (Element x = 0; x < q.order(); ++x) REQUIRE(q.encode(q.decode(x)) == x);
        }
      }
    }
  }
}
