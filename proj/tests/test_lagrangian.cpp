#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "hyperturan/core.hpp"
#include "hyperturan/lagrangian.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace hyperturan;

namespace {

const Hypergraph k3(2, 3, {{0, 1}, {0, 2}, {1, 2}});

LagrangianOptions quick() {
  LagrangianOptions o;
  o.restarts = 40;
  return o;
}

}  // namespace

TEST_CASE("edge polynomial evaluations") {
  for (int r = 2; r <= 6; ++r)
    CHECK(edge_polynomial(single_edge(r), SimplexPoint::uniform(r)) ==
          doctest::Approx(std::pow(r, -r)).epsilon(1e-14));
  CHECK(edge_polynomial(k3, SimplexPoint::uniform(3)) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  Hypergraph t = make_tent(3, 1);
  std::vector<double> corner(t.n(), 0.0);
  corner[2] = 1.0;
  CHECK(edge_polynomial(t, corner) == 0.0);
  CHECK_THROWS_AS(edge_polynomial(k3, std::vector<double>{0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("exact edge polynomial") {
  std::vector<Rational> third(3, Rational(1, 3));
  CHECK(exact_edge_polynomial(k3, third) == Rational(1, 3));
  std::vector<Rational> quarter(4, Rational(1, 4));
  CHECK(exact_edge_polynomial(single_edge(4), quarter) == Rational(1, 256));
}

TEST_CASE("gradient matches finite differences") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    Hypergraph h = testsupport::random_hypergraph(3, 6, 6, rng);
    std::vector<double> x(6);
    for (auto& v : x) v = std::uniform_real_distribution<double>(0.05, 0.3)(rng);
    auto g = edge_polynomial_gradient(h, x);
    auto fd = testsupport::numeric_gradient(h, x);
    for (std::size_t v = 0; v < x.size(); ++v) CHECK(g[v] == doctest::Approx(fd[v]).epsilon(1e-6));
  }
}

TEST_CASE("simplex points") {
  SimplexPoint p({2.0, 2.0});
  CHECK(p[0] == 0.5);
  CHECK_THROWS_AS(SimplexPoint({-1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(SimplexPoint({0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("single edge and K3") {
  for (int r = 2; r <= 6; ++r) {
    auto res = lagrangian(single_edge(r), quick());
    CHECK(res.value == doctest::Approx(std::pow(r, -r)).epsilon(1e-9));
    CHECK(res.blowup_density == res.value * factorial(r).get_d());
    CHECK(res.status == SolveStatus::converged);
  }
  auto res = lagrangian(k3, quick());
  CHECK(std::fabs(res.value - 1.0 / 3) < 1e-9);
  CHECK(std::fabs(edge_polynomial(k3, res.witness) - res.value) < 1e-10);
}

TEST_CASE("empty hypergraph has Lagrangian zero") {
  auto res = lagrangian(Hypergraph(3, 4, {}), quick());
  CHECK(res.value == 0.0);
  CHECK(res.blowup_density == 0.0);
}

TEST_CASE("balanced complete r-partite graphs") {
  for (int r = 2; r <= 4; ++r)
    for (int t = 1; t <= 3; ++t) {
      if (r * t > 12) continue;
      auto res = lagrangian(make_turan_graph(r, r * t), quick());
      double want = single_edge_density(r).get_d();
      CHECK(std::fabs(res.blowup_density - want) < 1e-6);
      CHECK(std::fabs(grid_lagrangian(make_turan_graph(r, r * t)) * factorial(r).get_d() - want) < 1e-6);
    }
}

TEST_CASE("Motzkin-Straus on random graphs") {
  for (const auto& g : testsupport::random_graph_corpus(20, 9, 77)) {
    auto res = lagrangian(g, quick());
    CHECK(std::fabs(res.value - testsupport::motzkin_straus(g)) < 1e-6);
  }
}

TEST_CASE("witness satisfies the fixed-point condition") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    Hypergraph h = testsupport::random_hypergraph(3, 7, 8, rng);
    auto res = lagrangian(h, quick());
    auto g = edge_polynomial_gradient(h, res.witness.weights());
    double lo = 1e300, hi = -1e300;
    for (std::size_t v = 0; v < g.size(); ++v)
      if (res.witness[v] > 1e-9) {
        lo = std::min(lo, g[v]);
        hi = std::max(hi, g[v]);
      }
    CHECK(hi - lo < 1e-6);
    CHECK(std::fabs(edge_polynomial(h, res.witness) - res.value) < 1e-10);
  }
}

TEST_CASE("relabeling invariance and edge monotonicity") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 8; ++trial) {
    Hypergraph h = testsupport::random_hypergraph(3, 7, 7, rng);
    std::vector<int> perm(h.n());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    double a = lagrangian(h, quick()).value;
    double b = lagrangian(relabel(h, perm), quick()).value;
    CHECK(std::fabs(a - b) < 1e-8);
    auto edges = h.edges();
    edges.pop_back();
    double sub = lagrangian(Hypergraph(3, h.n(), edges), quick()).value;
    CHECK(sub <= a + 1e-10);
  }
}

TEST_CASE("deterministic for a fixed seed") {
  Hypergraph h = make_tent(3, 1);
  auto a = lagrangian(h, quick());
  auto b = lagrangian(h, quick());
  CHECK(a.value == b.value);
  CHECK(a.witness.weights() == b.witness.weights());
}

TEST_CASE("rationalize keeps the simplex exact") {
  auto q = rationalize(SimplexPoint({0.2, 0.3, 0.5}));
  Rational total = 0;
  for (const auto& v : q) total += v;
  CHECK(total == 1);
  CHECK(q[0] == Rational(1, 5));
}

TEST_CASE("density lower bounds") {
  for (int r = 3; r <= 6; ++r) {
    auto b = density_lower_bound(single_edge(r), tent_family(r, r / 2), {}, quick());
    REQUIRE(b.has_value());
    CHECK(std::fabs(*b - single_edge_density(r).get_d()) < 1e-9);
  }
  CHECK_FALSE(density_lower_bound(make_tent(4, 1), Family({make_tent(4, 1)}), {}, quick()).has_value());
  auto t36 = density_lower_bound(make_turan_graph(3, 6), tent_family(3, 1), {}, quick());
  REQUIRE(t36.has_value());
  CHECK(std::fabs(*t36 - 2.0 / 9) < 1e-6);
}

TEST_CASE("hom-free hosts stay below r!/r^r") {
  std::mt19937_64 rng(21);
  int checked = 0;
  for (int trial = 0; trial < 80 && checked < 10; ++trial) {
    int r = 3 + trial % 2;
    Hypergraph h = testsupport::random_hypergraph(r, r + 3, 4, rng);
    auto b = density_lower_bound(h, tent_family(r, 1), {}, quick());
    if (!b) continue;
    ++checked;
    CHECK(*b <= single_edge_density(r).get_d() + 1e-6);
  }
  CHECK(checked >= 5);
}

TEST_CASE("density monotonicity hypothesis") {
  for (int r = 3; r <= 6; ++r)
    for (int k = 1; k <= r / 2; ++k) {
      std::vector<int> parts = {r - k};
      for (int t = 0; t < k; ++t) parts.push_back(1);
      Family small({make_general_tent(TentSpec(parts))});
      CHECK(check_density_monotone(small, tent_family(r, k)));
    }
  CHECK(check_density_monotone(tent_family(4, 2), tent_family(4, 2)));
  CHECK_FALSE(check_density_monotone(Family({k3}), Family({single_edge(2)})));
}
