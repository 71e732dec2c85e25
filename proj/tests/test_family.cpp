#include <doctest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/reference.hpp"
#include "tropical/errors.hpp"
#include "tropical/family.hpp"
#include "tropical/graph.hpp"
#include "tropical/product_lab.hpp"
#include "tropical/trellis.hpp"

using namespace tropical;
using ref::E;

TEST_CASE("boundary matrices") {
  MatrixFamily f = ref::family();
  CHECK(equal(f.sup(), ref::a_sup()));
  CHECK(equal(f.inf(), ref::a_inf()));
  CHECK(f.sup()(0, 1) == Scalar(2));
  CHECK(f.inf()(0, 1) == Scalar(-4));

  MatrixFamily single({ref::A2()});
  CHECK(equal(single.sup(), ref::A2()));
  CHECK(equal(single.inf(), ref::A2()));
  CHECK(single.name(0) == "A1");
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(MatrixFamily({}), DimensionError);
  CHECK_THROWS_AS(MatrixFamily({ref::A1(), identity<Rational>(3)}), DimensionError);
  CHECK_THROWS_AS(MatrixFamily({epsilon_matrix<Rational>(2, 3)}), DimensionError);
}

TEST_CASE("reference family validates") {
  MatrixFamily f = ref::family();
  CHECK(f.valid());
  CHECK_NOTHROW(f.require_valid());
}

TEST_CASE("a member with a negative pivot loop fails member_loop") {
  MatrixXq bad = ref::A2();
  bad(0, 0) = Scalar(-1);
  MatrixFamily f({ref::A1(), bad, ref::A3()});
  const ValidationReport& r = f.validation();
  CHECK(r.common_support.passed);
  CHECK_FALSE(r.member_loop.passed);
  REQUIRE(r.member_loop.member);
  CHECK(*r.member_loop.member == 1);
  CHECK(r.member_loop.witness == std::vector<Index>{0, 0});
  CHECK_THROWS_AS(f.require_valid(), AssumptionError);
  CHECK_THROWS_AS(inf_walks_to_pivot(f), AssumptionError);
}

TEST_CASE("a missing edge fails common_support") {
  MatrixXq cut = ref::A1();
  cut(1, 4) = Scalar();
  MatrixFamily f({ref::A1(), cut});
  CHECK_FALSE(f.validation().common_support.passed);
  CHECK(f.validation().common_support.member == std::optional<std::size_t>{1});
}

TEST_CASE("reducible members fail common_support") {
  MatrixFamily f({from_rows({{0, -1}, {E, -1}})});
  CHECK_FALSE(f.validation().common_support.passed);
}

TEST_CASE("a zero-weight cycle off the pivot fails the loop checks") {
  MatrixFamily f({from_rows({{0, -1, E}, {-1, E, 0}, {E, 0, E}})});
  CHECK(f.validation().common_support.passed);
  CHECK_FALSE(f.validation().member_loop.passed);
  CHECK_FALSE(f.validation().member_loop.witness.empty());
}

TEST_CASE("sup_loop can fail while every member passes") {
  // each member has a negative 2-cycle, but the supremum combines the heavy arcs
  MatrixXq a = from_rows({{0, -1, E}, {-1, E, 1}, {E, -3, E}});
  MatrixXq b = from_rows({{0, -1, E}, {-1, E, -3}, {E, 1, E}});
  MatrixFamily f({a, b});
  CHECK(f.validation().member_loop.passed);
  CHECK_FALSE(f.validation().sup_loop.passed);
}

TEST_CASE("w and v on the infimum") {
  MatrixFamily f = ref::family();
  CHECK(equal(inf_walks_to_pivot(f), ref::w()));
  CHECK(equal(inf_walks_from_pivot(f), ref::v()));
  CHECK(equal(inf_walks_to_pivot(f), oracle::paths_to_pivot(f.inf())));
  CHECK(equal(inf_walks_from_pivot(f), oracle::paths_from_pivot(f.inf())));
}

TEST_CASE("boundary sandwich and w <= w*, v <= v* on random families") {
  gen::Rng rng(29);
  for (int t = 0; t < 100; ++t) {
    MatrixFamily f = gen::valid_family(rng);
    for (const MatrixXq& x : f.members()) {
      CHECK(leq(f.inf(), x));
      CHECK(leq(x, f.sup()));
    }
    ProductSequence seq{gen::sequence(rng, f.size(), gen::uniform(rng, 1, 10)), std::nullopt};
    MatrixXq g = fold(f, seq);
    CHECK(leq(power(f.inf(), seq.size()), g));
    CHECK(leq(g, power(f.sup(), seq.size())));

    // w has no length cap, so the comparison needs room for a simple path
    if (seq.size() < static_cast<std::size_t>(f.dim() - 1)) continue;
    TrellisDigraph tr(f, seq);
    CHECK(leq(inf_walks_to_pivot(f), initial_walk_weights(tr)));
    CHECK(leq(inf_walks_from_pivot(f), final_walk_weights(tr)));
  }
}

TEST_CASE("capped walks on the infimum stop improving at n-1") {
  gen::Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    MatrixFamily f = gen::valid_family(rng);
    const Index n = f.dim();
    // the weight-0 pivot loop makes column 1 of A^m the best walk of length <= m
    MatrixXq small = power(f.inf(), static_cast<std::size_t>(n - 1));
    MatrixXq large = power(f.inf(), static_cast<std::size_t>(3 * n));
    CHECK(equal(small.col(0), inf_walks_to_pivot(f)));
    CHECK(equal(large.col(0), inf_walks_to_pivot(f)));
    CHECK(equal(small.row(0).transpose(), inf_walks_from_pivot(f)));
    CHECK(equal(large.row(0).transpose(), inf_walks_from_pivot(f)));
  }
}
