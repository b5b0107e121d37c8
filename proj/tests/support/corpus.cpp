#include "corpus.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hyperturan/region.hpp"

namespace testsupport {

using hyperturan::Edge;

Hypergraph random_hypergraph(int r, int n, int m, std::mt19937_64& rng) {
  std::set<Edge> edges;
  std::vector<int> verts(n);
  for (int v = 0; v < n; ++v) verts[v] = v;
  // enough attempts to saturate small complete hypergraphs
  for (int attempt = 0; attempt < 50 * m && static_cast<int>(edges.size()) < m; ++attempt) {
    std::shuffle(verts.begin(), verts.end(), rng);
    Edge e(verts.begin(), verts.begin() + r);
    std::sort(e.begin(), e.end());
    edges.insert(e);
  }
  return Hypergraph(r, n, {edges.begin(), edges.end()});
}

std::vector<Hypergraph> random_graph_corpus(int count, int max_n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> nd(3, max_n);
  std::uniform_real_distribution<double> pd(0.2, 0.9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Hypergraph> out;
  while (static_cast<int>(out.size()) < count) {
    int n = nd(rng);
    double p = pd(rng);
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (u(rng) < p) edges.push_back({a, b});
    if (edges.empty()) continue;
    out.emplace_back(2, n, edges);
  }
  return out;
}

std::vector<Hypergraph> small_hypergraph_corpus(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Hypergraph> out;
  for (int t = 0; t < count; ++t) {
    int r = 2 + t % 3;
    int n = std::uniform_int_distribution<int>(r, std::min(10, r + 5))(rng);
    int m = std::uniform_int_distribution<int>(1, 6)(rng);
    out.push_back(random_hypergraph(r, n, m, rng));
  }
  return out;
}

std::vector<Hypergraph> host_corpus(int r, int count, int max_n, int max_edges,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Hypergraph> out;
  for (int t = 0; t < count; ++t) {
    int n = std::uniform_int_distribution<int>(r, std::max(r, max_n))(rng);
    int m = std::uniform_int_distribution<int>(1, max_edges)(rng);
    out.push_back(random_hypergraph(r, n, m, rng));
  }
  return out;
}

std::vector<double> CorpusPoint::as_double() const {
  std::vector<double> out;
  for (const auto& q : x) out.push_back(q.get_d());
  return out;
}

std::vector<CorpusPoint> perturbation_corpus(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int a = 4;
  const std::vector<int> larger = {5, 6, 7, 8, 10};
  std::vector<CorpusPoint> out;
  std::set<std::vector<Rational>> seen;
  for (int attempt = 0; attempt < 200000 && static_cast<int>(out.size()) < count; ++attempt) {
    int r = std::uniform_int_distribution<int>(6, 12)(rng);
    int kmax = r / 2 - 1;
    if (kmax < 2) continue;
    int k = std::uniform_int_distribution<int>(2, kmax)(rng);
    int big_i = std::uniform_int_distribution<int>(1, k - 1)(rng);
    double p_small = std::uniform_real_distribution<double>(0.2, 0.7)(rng);
    auto draw = [&] {
      if (std::uniform_real_distribution<double>(0, 1)(rng) < p_small) return a;
      return larger[std::uniform_int_distribution<std::size_t>(0, larger.size() - 1)(rng)];
    };
    // increments inc[t] = x_t - x_{t-1} for t = 1..r
    std::vector<int> inc(r + 1, 0);
    for (int t = 1; t <= big_i; ++t) inc[t] = a;
    inc[big_i + 1] = larger[std::uniform_int_distribution<std::size_t>(0, larger.size() - 1)(rng)];
    for (int t = big_i + 2; t <= k; ++t) inc[t] = draw();
    for (int t = k + 1; t <= r - k; ++t) inc[t] = draw();
    for (int j = 1; j <= k; ++j) inc[r - j + 1] = inc[j];
    long total = 0;
    std::vector<long> cum(r + 1, 0);
    for (int t = 1; t <= r; ++t) cum[t] = cum[t - 1] + inc[t];
    total = cum[r];
    std::vector<Rational> x(r);
    for (int t = 1; t <= r; ++t) {
      x[t - 1] = Rational(cum[t], total);
      x[t - 1].canonicalize();
    }
    if (!hyperturan::check_feasible_exact(x, r, k).feasible) continue;
    if (!seen.insert(x).second) continue;
    out.push_back({r, k, x});
  }
  return out;
}

hyperturan::JointRV random_joint(int arity, int alphabet, int support, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> sym(0, alphabet - 1);
  std::exponential_distribution<double> ex(1.0);
  std::map<hyperturan::Outcome, double> law;
  for (int s = 0; s < support; ++s) {
    hyperturan::Outcome o(arity);
    for (auto& c : o) c = sym(rng);
    law[o] += ex(rng) + 1e-3;
  }
  double total = 0.0;
  for (const auto& [o, p] : law) total += p;
  for (auto& [o, p] : law) p /= total;
  return hyperturan::JointRV(law);
}

hyperturan::DiscreteRV random_rv(const std::vector<int>& outcomes, std::mt19937_64& rng) {
  std::exponential_distribution<double> ex(1.0);
  std::map<hyperturan::Outcome, double> law;
  double total = 0.0;
  for (int o : outcomes) {
    double w = ex(rng) + 1e-3;
    law[{o}] = w;
    total += w;
  }
  for (auto& [o, p] : law) p /= total;
  return hyperturan::DiscreteRV(law);
}

}  // namespace testsupport
