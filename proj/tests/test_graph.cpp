#include <doctest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/reference.hpp"
#include "tropical/errors.hpp"
#include "tropical/graph.hpp"

using namespace tropical;
using ref::E;

TEST_CASE("support") {
  EdgeSet s = support(ref::A1());
  CHECK(s.edges.size() == 9);
  for (auto [i, j] : {std::pair{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 5}, {3, 4}, {4, 2}, {5, 1}, {5, 4}})
    CHECK(s.contains(i - 1, j - 1));
  CHECK(support(epsilon_matrix<Rational>(3, 3)).edges.empty());
  CHECK(support(identity<Rational>(3)).edges.size() == 3);
}

TEST_CASE("geometric equivalence") {
  CHECK(geometrically_equivalent(ref::A1(), ref::A2()));
  CHECK(geometrically_equivalent(ref::A1(), ref::A1()));
  MatrixXq cut = ref::A1();
  cut(1, 4) = Scalar();
  CHECK_FALSE(geometrically_equivalent(ref::A1(), cut));
  CHECK_THROWS_AS(geometrically_equivalent(ref::A1(), identity<Rational>(3)), DimensionError);
}

TEST_CASE("irreducibility") {
  CHECK(is_irreducible(ref::A1()));
  CHECK_FALSE(is_irreducible(identity<Rational>(2)));
  CHECK(is_irreducible(from_rows({{E, 0}, {0, E}})));
  CHECK(is_irreducible(from_rows({{-1}})));
}

TEST_CASE("maximum cycle mean and lambda*") {
  CycleMean<Rational> top = max_cycle_mean(ref::a_sup());
  CHECK(top.mean == Scalar(0));
  CHECK(top.witness == std::vector<Index>{0});

  CHECK(max_cycle_mean(from_rows({{-5}})).mean == Scalar(-5));
  CHECK(max_cycle_mean(from_rows({{E, 0}, {E, E}})).mean.is_epsilon());

  CycleMean<Rational> ls = lambda_star(ref::a_sup());
  CHECK(ls.mean == ref::q("-2/3"));
  CHECK(ls.witness == std::vector<Index>{1, 4, 3});

  CHECK(lambda_star(from_rows({{0, 1}, {1, E}})).mean.is_epsilon());
  CHECK(lambda_star(from_rows({{0, 1, E}, {1, E, E}, {E, 0, -1}})).mean == Scalar(-1));
}

TEST_CASE("cycle mean witnesses and values match enumeration") {
  gen::Rng rng(3);
  for (int t = 0; t < 300; ++t) {
    const Index n = gen::uniform(rng, 1, 5);
    MatrixXq a = gen::matrix(rng, n, n, 0.5);
    CycleMean<Rational> got = max_cycle_mean(a);
    CHECK(got.mean == oracle::lift(oracle::max_cycle_mean(a)));
    if (got.mean.is_finite()) {
      REQUIRE(!got.witness.empty());
      Rational sum = 0;
      for (std::size_t p = 0; p < got.witness.size(); ++p) {
        Scalar arc = a(got.witness[p], got.witness[(p + 1) % got.witness.size()]);
        REQUIRE(arc.is_finite());
        sum += arc.value();
      }
      CHECK(Scalar(Rational(sum / Rational(static_cast<unsigned long>(got.witness.size())))) == got.mean);
      CHECK(*std::min_element(got.witness.begin(), got.witness.end()) == got.witness.front());
    }
  }
}

TEST_CASE("alpha, beta, gamma on the reference supremum") {
  CHECK(equal(best_paths_to_pivot(ref::a_sup()), ref::alpha()));
  CHECK(equal(best_paths_from_pivot(ref::a_sup()), ref::beta()));
  CHECK(equal(pivot_avoiding_walks(ref::a_sup()), ref::gamma()));
  CHECK(equal(best_paths_to_pivot(from_rows({{0}})), from_values({0})));
  CHECK(pivot_avoiding_walks(from_rows({{0}}))(0, 0).is_epsilon());
  MatrixXq cut = from_rows({{0, E}, {0, -1}});
  CHECK(best_paths_from_pivot(cut)(1).is_epsilon());
}

TEST_CASE("path quantities refuse non-negative cycles off the pivot") {
  MatrixXq a = from_rows({{0, 0}, {0, 0}});
  CHECK_THROWS_AS(best_paths_to_pivot(a), AssumptionError);
  CHECK_THROWS_AS(pivot_avoiding_walks(a), AssumptionError);
}

TEST_CASE("alpha, beta, gamma match simple-path enumeration") {
  gen::Rng rng(17);
  int checked = 0;
  while (checked < 300) {
    const Index n = gen::uniform(rng, 2, 6);
    MatrixXq a = gen::matrix(rng, n, n, 0.45);
    a(0, 0) = Scalar(0);
    if (!(lambda_star(a).mean < Scalar(0))) continue;
    ++checked;
    CHECK(equal(best_paths_to_pivot(a), oracle::paths_to_pivot(a)));
    CHECK(equal(best_paths_from_pivot(a), oracle::paths_from_pivot(a)));
    CHECK(equal(pivot_avoiding_walks(a), oracle::pivot_avoiding(a)));
  }
}

TEST_CASE("gamma is unchanged by longer walk caps") {
  gen::Rng rng(23);
  int checked = 0;
  while (checked < 200) {
    const Index n = gen::uniform(rng, 2, 5);
    MatrixXq a = gen::matrix(rng, n, n, 0.4);
    if (!(lambda_star(a).mean < Scalar(0))) continue;
    ++checked;
    MatrixXq b = oracle::drop_pivot(a);
    MatrixXq acc = b, pw = b;
    for (Index m = 2; m <= 3 * n; ++m) {
      pw = product(pw, b);
      acc = oplus(acc, pw);
    }
    CHECK(equal(pivot_avoiding_walks(a).bottomRightCorner(n - 1, n - 1), acc));
  }
}
