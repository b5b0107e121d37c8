#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hyperturan/core.hpp"
#include "hyperturan/hom.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace hyperturan;

namespace {

const Hypergraph k3(2, 3, {{0, 1}, {0, 2}, {1, 2}});

VertexMap compose(const VertexMap& first, const VertexMap& second) {
  VertexMap out(first.size());
  for (std::size_t v = 0; v < first.size(); ++v) out[v] = second[first[v]];
  return out;
}

}  // namespace

TEST_CASE("K3 maps to itself") {
  auto res = find_homomorphism(k3, k3);
  REQUIRE(res.found());
  CHECK(is_homomorphism(k3, k3, *res.map));
}

TEST_CASE("tents do not map into a single edge") {
  for (int r = 2; r <= 7; ++r)
    for (int k = 1; k <= r / 2; ++k) {
      for (const auto& f : tent_family(r, k).members()) {
        auto res = find_homomorphism(f, single_edge(r));
        CHECK(res.status == SearchStatus::none);
      }
      CHECK(is_hom_free(single_edge(r), tent_family(r, k)));
    }
}

TEST_CASE("the (r-k,1,...,1) tent maps into every member of F_{r,k}") {
  for (int r = 3; r <= 7; ++r)
    for (int k = 1; k <= r / 2; ++k) {
      std::vector<int> parts = {r - k};
      for (int t = 0; t < k; ++t) parts.push_back(1);
      Hypergraph src = make_general_tent(TentSpec(parts));
      for (int i = 1; i <= k; ++i) {
        auto res = find_homomorphism(src, make_tent(r, i));
        REQUIRE(res.found());
        CHECK(is_homomorphism(src, make_tent(r, i), *res.map));
      }
    }
}

TEST_CASE("hom search agrees with exhaustive enumeration") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    int r = 2 + trial % 2;
    Hypergraph f = testsupport::random_hypergraph(r, r + 1 + trial % 3, 2 + trial % 3, rng);
    Hypergraph h = testsupport::random_hypergraph(r, r + 2, 1 + trial % 5, rng);
    auto res = find_homomorphism(f, h);
    CHECK(res.found() == testsupport::hom_exists_by_enumeration(f, h));
    if (res.found()) CHECK(is_homomorphism(f, h, *res.map));
  }
}

TEST_CASE("composition of homomorphisms is a homomorphism") {
  std::mt19937_64 rng(9);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 20; ++trial) {
    Hypergraph f = testsupport::random_hypergraph(2, 4, 3, rng);
    Hypergraph h = testsupport::random_hypergraph(2, 5, 6, rng);
    Hypergraph h2 = testsupport::random_hypergraph(2, 5, 6, rng);
    auto a = find_homomorphism(f, h);
    auto b = find_homomorphism(h, h2);
    if (!a.found() || !b.found()) continue;
    ++checked;
    CHECK(is_homomorphism(f, h2, compose(*a.map, *b.map)));
  }
  CHECK(checked >= 5);
}

TEST_CASE("hom-freeness is monotone under edge deletion") {
  std::mt19937_64 rng(13);
  Family fam = tent_family(3, 1);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    Hypergraph h = testsupport::random_hypergraph(3, 7, 2 + trial % 3, rng);
    if (!is_hom_free(h, fam)) continue;
    ++checked;
    auto edges = h.edges();
    edges.erase(edges.begin() + static_cast<long>(trial % edges.size()));
    CHECK(is_hom_free(Hypergraph(3, h.n(), edges), fam));
  }
  CHECK(checked >= 5);
}

TEST_CASE("hom-free examples") {
  CHECK_FALSE(is_hom_free(make_tent(4, 1), Family({make_tent(4, 1)})));
  for (int r = 3; r <= 5; ++r)
    for (int k = 1; k <= r / 2; ++k) CHECK(is_hom_free(make_turan_graph(r, 2 * r), tent_family(r, k)));
  CHECK_THROWS_AS(is_hom_free(single_edge(3), tent_family(4, 1)), std::invalid_argument);
}

TEST_CASE("budget exhaustion is distinct from none") {
  SearchBudget tiny;
  tiny.max_nodes = 1;
  auto res = find_homomorphism(make_tent(5, 2), make_turan_graph(5, 10), tiny);
  CHECK(res.status == SearchStatus::budget_exhausted);
  CHECK_THROWS_AS(is_hom_free(make_turan_graph(5, 10), tent_family(5, 2), tiny), BudgetExhausted);
  SearchBudget bad;
  bad.timeout_seconds = 0;
  CHECK_THROWS_AS(find_homomorphism(k3, k3, bad), std::invalid_argument);
}

TEST_CASE("partial homomorphisms") {
  PartialHypergraph one(4, 4, {{0, 1, 2, 3}});
  auto res = find_partial_homomorphism(one, single_edge(4));
  REQUIRE(res.found());
  CHECK(is_partial_homomorphism(one, single_edge(4), *res.map));
  for (int r = 2; r <= 6; ++r)
    for (int i = 1; i <= r / 2; ++i) {
      auto p = make_partial_tent(r, i);
      CHECK_FALSE(find_partial_homomorphism(p, single_edge(r)).found());
      auto to_tent = find_partial_homomorphism(p, make_tent(r, i));
      REQUIRE(to_tent.found());
      CHECK(is_partial_homomorphism(p, make_tent(r, i), *to_tent.map));
    }
}

TEST_CASE("partial hom search agrees with enumeration") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    int r = 3 + trial % 2;
    Hypergraph h = testsupport::random_hypergraph(r, r + 2, 1 + trial % 4, rng);
    auto p = make_partial_tent(r, 1 + trial % (r / 2));
    CHECK(find_partial_homomorphism(p, h).found() ==
          testsupport::partial_hom_exists_by_enumeration(p, h));
  }
}

TEST_CASE("extension equivalence") {
  CHECK(verify_extension_equivalence(make_partial_tent(4, 2), make_tent(4, 2)));
  PartialHypergraph one(3, 3, {{0, 1, 2}});
  std::mt19937_64 rng(19);
  for (int t = 0; t < 10; ++t) CHECK(verify_extension_equivalence(one, testsupport::random_hypergraph(3, 6, 3, rng)));
  for (int r = 2; r <= 5; ++r)
    for (const auto& h : testsupport::host_corpus(r, 15, 8, 4, 100 + r))
      for (int i = 1; i <= r / 2; ++i) CHECK(verify_extension_equivalence(make_partial_tent(r, i), h));
}

TEST_CASE("brute-force Turan numbers") {
  Family tri({k3});
  auto five = brute_force_ex(5, tri);
  CHECK(five.max_edges == 6);
  REQUIRE(five.extremal.size() == 1);
  CHECK(are_isomorphic(five.extremal[0], make_turan_graph(2, 5)));
  auto six = brute_force_ex(6, tri);
  CHECK(six.max_edges == 9);
  REQUIRE(six.extremal.size() == 1);
  CHECK(are_isomorphic(six.extremal[0], make_turan_graph(2, 6)));
  for (int n = 3; n <= 4; ++n) CHECK(brute_force_ex(n, tri).max_edges == n * n / 4);
  for (int r = 3; r <= 5; ++r) {
    auto res = brute_force_ex(r, tent_family(r, 1));
    CHECK(res.max_edges == 1);
    REQUIRE(res.extremal.size() == 1);
    CHECK(res.extremal[0] == single_edge(r));
  }
  CHECK_THROWS_AS(brute_force_ex(9, tri), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_ex(8, tent_family(3, 1)), std::invalid_argument);
}

TEST_CASE("brute-force Turan number for the 3-tent at n = 6") {
  // every 3-graph on 6 vertices with more edges contains an injective tent copy
  auto res = brute_force_ex(6, tent_family(3, 1));
  CHECK(res.max_edges >= static_cast<int>(make_turan_graph(3, 6).edge_count()));
  for (const auto& h : res.extremal) {
    CHECK(static_cast<int>(h.edge_count()) == res.max_edges);
    CHECK_FALSE(find_injective_homomorphism(make_tent(3, 1), h).found());
  }
}
