#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "hyperturan/entropy.hpp"
#include "hyperturan/lagrangian.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace hyperturan;

namespace {

using Law = std::map<Outcome, double>;

PartialHypergraph forest_one(int r, int i) {
  Edge base(r), other;
  std::iota(base.begin(), base.end(), 0);
  for (int v = i; v <= r; ++v) other.push_back(v);
  return PartialHypergraph(r, r + 1, {base, other});
}

PartialHypergraph forest_two(int r, int j) {
  Edge base(r), other;
  std::iota(base.begin(), base.end(), 0);
  for (int v = 0; v < r - j; ++v) other.push_back(v);
  other.push_back(r);
  return PartialHypergraph(r, r + 1, {base, other});
}

std::vector<Vertex> identity_order(int n) {
  std::vector<Vertex> o(n);
  std::iota(o.begin(), o.end(), 0);
  return o;
}

}  // namespace

TEST_SUITE("basic entropy") {

TEST_CASE("entropy examples") {
  CHECK(entropy(DiscreteRV::uniform({{0}, {1}})) == doctest::Approx(1.0));
  for (int m = 1; m <= 9; ++m) {
    std::vector<Outcome> os;
    for (int t = 0; t < m; ++t) os.push_back({t});
    CHECK(entropy(DiscreteRV::uniform(os)) == doctest::Approx(std::log2(m)).epsilon(1e-14));
  }
  CHECK(entropy(DiscreteRV::point({3})) == 0.0);
}

TEST_CASE("law validation") {
  CHECK_THROWS_AS(DiscreteRV(Law{{{0}, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteRV(Law{{{0}, 1.5}, {{1}, -0.5}}), std::invalid_argument);
  DiscreteRV x(Law{{{0}, 1.0}, {{1}, 0.0}});
  CHECK(x.support_size() == 1);
  CHECK_THROWS_AS(JointRV(Law{{{0}, 0.5}, {{0, 1}, 0.5}}), std::invalid_argument);
}

TEST_CASE("conditional entropy examples") {
  // independent fair bits
  JointRV indep(Law{{{0, 0}, 0.25}, {{0, 1}, 0.25}, {{1, 0}, 0.25}, {{1, 1}, 0.25}});
  CHECK(conditional_entropy(indep, {0}, {1}) == doctest::Approx(1.0));
  JointRV same(Law{{{0, 0}, 0.3}, {{1, 1}, 0.7}});
  CHECK(std::fabs(conditional_entropy(same, {0}, {1})) < 1e-15);
  CHECK(conditional_entropy(same, {1}) == doctest::Approx(0.0));
}

TEST_CASE("single-edge suffix conditionals") {
  for (int r = 2; r <= 5; ++r) {
    auto law = EdgeDistribution::uniform(single_edge(r)).ordered_law();
    for (int i = 1; i <= r; ++i) {
      std::vector<int> later;
      for (int c = i; c < r; ++c) later.push_back(c);
      CHECK(conditional_entropy(law, {i - 1}, later) == doctest::Approx(std::log2(i)).epsilon(1e-12));
    }
  }
}

TEST_CASE("conditional entropy equals joint minus condition") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    auto xy = testsupport::random_joint(3, 3, 12, rng);
    double lhs = conditional_entropy(xy, {0, 2}, {1});
    double rhs = entropy(xy) - entropy(xy.marginal({1}));
    CHECK(std::fabs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("chain rule, subadditivity, dropping conditions") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    auto xyz = testsupport::random_joint(3, 3, 15, rng);
    double chain = entropy(xyz.marginal({0})) + conditional_entropy(xyz, {1}, {0}) +
                   conditional_entropy(xyz, {2}, {0, 1});
    CHECK(std::fabs(chain - entropy(xyz)) < 1e-10);
    auto xy = xyz.marginal({0, 1});
    CHECK(entropy(xy) <= entropy(xy.marginal({0})) + entropy(xy.marginal({1})) + 1e-12);
    CHECK(conditional_entropy(xyz, {0}, {1, 2}) <= conditional_entropy(xyz, {0}, {1}) + 1e-12);
  }
}

TEST_CASE("uniform bound") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<int> outs(2 + t % 6);
    std::iota(outs.begin(), outs.end(), 0);
    auto x = testsupport::random_rv(outs, rng);
    CHECK(entropy(x) < std::log2(outs.size()) - 1e-10);
  }
}

}  // TEST_SUITE

TEST_SUITE("mixtures") {

TEST_CASE("mixture examples") {
  auto coin = mixture({DiscreteRV::point({0}), DiscreteRV::point({1})}, {0.5, 0.5});
  CHECK(entropy(coin) == doctest::Approx(1.0));
  auto four = mixture({DiscreteRV::uniform({{0}, {1}}), DiscreteRV::uniform({{2}, {3}})}, {0.5, 0.5});
  CHECK(entropy(four) == doctest::Approx(2.0));
  std::mt19937_64 rng(4);
  auto x = testsupport::random_rv({0, 1, 2}, rng);
  auto self = mixture({x, x}, {0.3, 0.7});
  for (const auto& [o, p] : x.law()) CHECK(self.prob(o) == doctest::Approx(p).epsilon(1e-14));
  CHECK_THROWS_AS(mixture({x, x}, {0.5}), std::invalid_argument);
  CHECK_THROWS_AS(mixture({x, x}, {0.5, 0.6}), std::invalid_argument);
}

TEST_CASE("mixture bound examples") {
  auto w = mixture_bound_witness({DiscreteRV::uniform({{0}, {1}}), DiscreteRV::uniform({{2}, {3}})}, 1);
  CHECK(w.lhs == doctest::Approx(4.0));
  CHECK(w.rhs == doctest::Approx(4.0));
  std::mt19937_64 rng(5);
  auto x = testsupport::random_rv({0, 1, 2}, rng);
  auto single = mixture_bound_witness({x}, 1);
  CHECK(single.weights == std::vector<double>{1.0});
  CHECK(single.lhs == doctest::Approx(single.rhs));
  // pairwise overlaps, no triple overlap
  std::vector<DiscreteRV> xs = {testsupport::random_rv({0, 1, 2}, rng),
                                testsupport::random_rv({2, 3, 4}, rng),
                                testsupport::random_rv({4, 5, 0}, rng)};
  auto three = mixture_bound_witness(xs, 2);
  CHECK(three.lhs <= three.rhs + 1e-9);
  CHECK_THROWS_AS(mixture_bound_witness(xs, 1), std::invalid_argument);
}

}  // TEST_SUITE

TEST_SUITE("edge distributions") {

TEST_CASE("ordered law matches enumeration") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 10; ++t) {
    Hypergraph h = testsupport::random_hypergraph(3, 6, 4, rng);
    auto d = random_edge_distribution(h, 100 + t);
    auto mine = d.ordered_law();
    auto oracle = testsupport::ordered_tuple_law(h, d.weights());
    CHECK(mine.support_size() == oracle.size());
    for (const auto& [o, p] : oracle) CHECK(mine.prob(o) == doctest::Approx(p).epsilon(1e-13));
    for (int m = 1; m <= 3; ++m) {
      auto suffix = suffix_law(d, m);
      std::vector<int> coords;
      for (int c = 3 - m; c < 3; ++c) coords.push_back(c);
      auto proj = testsupport::project(oracle, coords);
      CHECK(suffix.support_size() == proj.size());
      for (const auto& [o, p] : proj) CHECK(suffix.prob(o) == doctest::Approx(p).epsilon(1e-13));
    }
  }
}

TEST_CASE("edge distribution validation") {
  CHECK_THROWS_AS(EdgeDistribution(single_edge(3), {0.5}), std::invalid_argument);
  CHECK_THROWS_AS(EdgeDistribution(single_edge(3), {1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(EdgeDistribution(Hypergraph(3, 3, {}), {}), std::invalid_argument);
}

TEST_CASE("ratio sequence examples") {
  for (int r = 2; r <= 6; ++r) {
    auto rs = ratio_sequence(EdgeDistribution::uniform(single_edge(r)));
    for (int i = 1; i <= r; ++i) CHECK(rs.x[i - 1] == doctest::Approx(static_cast<double>(i) / r).epsilon(1e-12));
    std::vector<Edge> two = {{}, {}};
    for (int v = 0; v < r; ++v) {
      two[0].push_back(v);
      two[1].push_back(r + v);
    }
    // The marginal spreads over 2r vertices while the tail still pins the edge.
    Hypergraph h2(r, 2 * r, two);
    auto rs2 = ratio_sequence(EdgeDistribution(h2, {0.5, 0.5}));
    auto oracle = testsupport::ratio_sequence_oracle(h2, {0.5, 0.5});
    for (int i = 1; i < r; ++i) {
      CHECK(rs2.x[i - 1] == doctest::Approx(i / (2.0 * r)).epsilon(1e-12));
      CHECK(std::fabs(rs2.x[i - 1] - oracle[i - 1]) < 1e-12);
    }
    CHECK(rs2.x[r - 1] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("ratio sequences agree with the explicit law") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    int r = 2 + t % 3;
    Hypergraph h = testsupport::random_hypergraph(r, r + 3, 5, rng);
    auto d = random_edge_distribution(h, 200 + t, t % 2 ? 1.0 : 0.3);
    auto rs = ratio_sequence(d);
    auto oracle = testsupport::ratio_sequence_oracle(h, d.weights());
    for (int i = 0; i < r; ++i) CHECK(std::fabs(rs.x[i] - oracle[i]) < 1e-10);
    double prod = 1;
    for (double v : oracle) prod *= v;
    auto law = testsupport::ordered_tuple_law(h, d.weights());
    double ident = std::exp2(testsupport::table_entropy(law) -
                             r * testsupport::table_entropy(testsupport::project(law, {0})));
    CHECK(std::fabs(rs.product() - ident) < 1e-9);
    CHECK(std::fabs(entropic_objective(d) - ident) < 1e-9);
  }
}

TEST_CASE("entropic density examples") {
  for (int r = 2; r <= 5; ++r)
    CHECK(entropic_density(single_edge(r), 10).value ==
          doctest::Approx(single_edge_density(r).get_d()).epsilon(1e-9));
  auto k3 = entropic_density(Hypergraph(2, 3, {{0, 1}, {0, 2}, {1, 2}}), 20);
  CHECK(std::fabs(k3.value - 2.0 / 3) < 1e-6);
  CHECK(k3.agrees_with_blowup);
  auto t36 = entropic_density(make_turan_graph(3, 6), 20);
  CHECK(std::fabs(t36.value - 2.0 / 9) < 1e-6);
  CHECK(std::fabs(entropic_objective(t36.witness) - t36.value) < 1e-12);
}

TEST_CASE("entropic density equals blowup density on a small corpus") {
  for (const auto& h : testsupport::small_hypergraph_corpus(8, 31)) {
    auto res = entropic_density(h, 30);
    LagrangianOptions o;
    o.restarts = 60;
    double b = lagrangian(h, o).blowup_density;
    CHECK(std::fabs(res.value - b) < 1e-5);
  }
}

}  // TEST_SUITE

TEST_SUITE("forests") {

TEST_CASE("forest sequences") {
  for (int r = 3; r <= 6; ++r)
    for (int i = 1; i <= r / 2; ++i) {
      auto f = forest_sequence(forest_one(r, i), identity_order(r + 1));
      REQUIRE(f.has_value());
      for (int l = 1; l <= r; ++l) CHECK((*f)[l - 1] == (l == r + 1 - i ? 2 : 1));
    }
  PartialHypergraph one(4, 4, {{0, 1, 2, 3}});
  auto f = forest_sequence(one, {2, 0, 3, 1});
  REQUIRE(f.has_value());
  CHECK(*f == std::vector<int>{1, 1, 1, 1});
  PartialHypergraph bad(2, 3, {{0, 2}, {1, 2}});
  CHECK_FALSE(forest_sequence(bad, identity_order(3)).has_value());
}

TEST_CASE("tree sampler on a single edge") {
  for (int r = 2; r <= 5; ++r) {
    auto d = EdgeDistribution::uniform(single_edge(r));
    Edge all(r);
    std::iota(all.begin(), all.end(), 0);
    auto s = tree_sampler_entropy(PartialHypergraph(r, r, {all}), identity_order(r), d);
    CHECK(s.law.support_size() == static_cast<std::size_t>(factorial(r).get_d()));
    CHECK(s.realized_entropy == doctest::Approx(std::log2(factorial(r).get_d())).epsilon(1e-12));
    CHECK(s.entropy_matches);
    CHECK(s.marginals_match);
  }
  auto d = EdgeDistribution::uniform(single_edge(3));
  auto s = tree_sampler_entropy(PartialHypergraph(3, 1, {{0}}), {0}, d);
  CHECK(s.realized_entropy == doctest::Approx(std::log2(3.0)));
  CHECK(s.entropy_matches);
}

TEST_CASE("tree sampler on the two-edge forests") {
  // Y is a uniform ordering of the edge plus a free choice for the extra
  // vertex among m remaining vertices, so the entropy is log2(r! * m).
  for (int r = 3; r <= 5; ++r) {
    auto d = EdgeDistribution::uniform(single_edge(r));
    double lr = std::log2(factorial(r).get_d());
    for (int i = 1; i <= r / 2; ++i) {
      auto s = tree_sampler_entropy(forest_one(r, i), identity_order(r + 1), d);
      CHECK(s.realized_entropy == doctest::Approx(lr + std::log2(i)).epsilon(1e-12));
      CHECK(s.entropy_matches);
      CHECK(s.marginals_match);
    }
    for (int j = 1; j < r; ++j) {
      auto s = tree_sampler_entropy(forest_two(r, j), identity_order(r + 1), d);
      CHECK(s.realized_entropy == doctest::Approx(lr + std::log2(j)).epsilon(1e-12));
      CHECK(s.entropy_matches);
      CHECK(s.marginals_match);
    }
  }
}

TEST_CASE("tree sampler on Turan hosts") {
  for (int r = 3; r <= 4; ++r) {
    Hypergraph h = make_turan_graph(r, 2 * r);
    auto d = random_edge_distribution(h, 5);
    auto s = tree_sampler_entropy(forest_one(r, 1), identity_order(r + 1), d);
    CHECK(s.entropy_matches);
    CHECK(s.marginals_match);
  }
}

TEST_CASE("tree sampler rejects non-forests") {
  PartialHypergraph bad(2, 3, {{0, 2}, {1, 2}});
  CHECK_THROWS_AS(tree_sampler_entropy(bad, identity_order(3), EdgeDistribution::uniform(single_edge(2))),
                  std::invalid_argument);
}

}  // TEST_SUITE

TEST_SUITE("ratio constraints") {

TEST_CASE("single edge") {
  for (int r = 3; r <= 6; ++r) {
    auto rep = verify_ratio_constraints(single_edge(r), r / 2, 5);
    CHECK(rep.all_inside());
    CHECK(rep.worst_slack >= -1e-9);
  }
}

TEST_CASE("Turan hosts") {
  for (int r = 3; r <= 5; ++r) {
    auto rep = verify_ratio_constraints(make_turan_graph(r, 2 * r), r / 2, 20, {}, 42, false);
    CHECK(rep.sequences == 20);
    CHECK(rep.all_inside());
    CHECK(rep.worst_slack >= -1e-9);
  }
}

TEST_CASE("hosts containing a tent are rejected") {
  CHECK_THROWS_AS(verify_ratio_constraints(make_tent(4, 1), 1, 3), std::invalid_argument);
}

}  // TEST_SUITE
