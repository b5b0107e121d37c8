#include "hyperturan/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

#include "hyperturan/parallel.hpp"

namespace hyperturan {

namespace {

constexpr double kTinyValue = 1e-300;
constexpr double kPruneWeight = 1e-9;
constexpr double kResidualConverged = 1e-8;

void normalize(std::vector<double>& x) {
  double sum = 0.0;
  for (double& v : x) {
    if (!(v >= 0.0)) v = 0.0;
    sum += v;
  }
  if (sum <= 0.0) {
    std::fill(x.begin(), x.end(), 1.0 / static_cast<double>(x.size()));
    return;
  }
  for (double& v : x) v /= sum;
}

/// Euclidean projection onto the probability simplex.
void project_to_simplex(std::vector<double>& x) {
  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t t = 0; t < sorted.size(); ++t) {
    cumulative += sorted[t];
    double candidate = (cumulative - 1.0) / static_cast<double>(t + 1);
    if (sorted[t] - candidate > 0.0) theta = candidate;
  }
  for (double& v : x) v = std::max(0.0, v - theta);
}

double residual_on_support(const Hypergraph& h, const std::vector<double>& x) {
  const double p = edge_polynomial(h, x);
  if (p <= kTinyValue) return 0.0;
  auto g = edge_polynomial_gradient(h, x);
  double worst = 0.0;
  for (std::size_t v = 0; v < x.size(); ++v)
    if (x[v] > 0.0) worst = std::max(worst, std::abs(g[v] / (h.r() * p) - 1.0));
  return worst;
}

struct AscentResult {
  std::vector<double> x;
  double value = 0.0;
  bool hit_iteration_cap = false;
};

/// One replicator step x_v <- x_v * dP/dx_v / (r P). Falls back to a
/// projected gradient step when P vanishes.
void replicator_step(const Hypergraph& h, std::vector<double>& x) {
  const double p = edge_polynomial(h, x);
  auto g = edge_polynomial_gradient(h, x);
  if (p > kTinyValue) {
    const double scale = 1.0 / (h.r() * p);
    for (std::size_t v = 0; v < x.size(); ++v) x[v] *= g[v] * scale;
    normalize(x);
    return;
  }
  bool flat = std::all_of(g.begin(), g.end(), [](double d) { return d == 0.0; });
  if (flat) {
    // Every edge has two or more empty coordinates; restart from the centre.
    std::fill(x.begin(), x.end(), 1.0 / static_cast<double>(x.size()));
    return;
  }
  for (std::size_t v = 0; v < x.size(); ++v) x[v] += g[v];
  project_to_simplex(x);
}

AscentResult ascend(const Hypergraph& h, std::vector<double> x, const LagrangianOptions& opts) {
  AscentResult out;
  auto run = [&](int cap) {
    std::vector<double> history;
    history.reserve(static_cast<std::size_t>(cap) + 1);
    history.push_back(edge_polynomial(h, x));
    for (int it = 1; it <= cap; ++it) {
      replicator_step(h, x);
      history.push_back(edge_polynomial(h, x));
      if (it >= opts.stall_window &&
          history.back() - history[it - opts.stall_window] < opts.tol)
        return false;
    }
    return true;
  };
  bool capped = run(opts.max_iterations);
  // Drop coordinates that are only decaying towards zero, then settle on the
  // remaining face.
  bool pruned = false;
  for (double& v : x)
    if (v > 0.0 && v < kPruneWeight) {
      v = 0.0;
      pruned = true;
    }
  if (pruned) {
    normalize(x);
    capped = run(std::max(opts.stall_window * 4, opts.max_iterations / 10)) || capped;
  }
  out.value = edge_polynomial(h, x);
  out.x = std::move(x);
  out.hit_iteration_cap = capped;
  return out;
}

std::vector<double> dirichlet_start(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> x(n);
  for (double& v : x) v = expo(rng);
  normalize(x);
  return x;
}

bool better(double value_a, const std::vector<double>& xa, double value_b,
            const std::vector<double>& xb) {
  if (value_a != value_b) return value_a > value_b;
  return std::lexicographical_compare(xa.begin(), xa.end(), xb.begin(), xb.end());
}

double binomial_double(int n, int k) {
  double out = 1.0;
  for (int t = 1; t <= k; ++t) out = out * (n - k + t) / t;
  return out;
}

struct GridBest {
  double value = 0.0;
  std::vector<double> x;
};

GridBest grid_search(const Hypergraph& h, int max_steps) {
  std::vector<Vertex> active;
  for (Vertex v = 0; v < h.n(); ++v)
    if (h.degree(v) > 0) active.push_back(v);
  GridBest best;
  best.x.assign(h.n(), h.n() ? 1.0 / h.n() : 0.0);
  if (active.empty()) return best;
  const int dims = static_cast<int>(active.size());
  int steps = std::max(1, max_steps);
  while (steps > 1 && binomial_double(steps + dims - 1, dims - 1) > 2e5) --steps;

  constexpr std::size_t kKeep = 5;
  std::vector<std::pair<double, std::vector<double>>> top;
  std::vector<double> x(h.n(), 0.0);
  std::vector<int> counts(dims, 0);
  auto consider = [&] {
    for (int t = 0; t < dims; ++t) x[active[t]] = static_cast<double>(counts[t]) / steps;
    double value = edge_polynomial(h, x);
    if (top.size() < kKeep || value > top.back().first) {
      top.emplace_back(value, x);
      std::stable_sort(top.begin(), top.end(),
                       [](const auto& a, const auto& b) { return a.first > b.first; });
      if (top.size() > kKeep) top.pop_back();
    }
  };
  std::function<void(int, int)> rec = [&](int t, int left) {
    if (t == dims - 1) {
      counts[t] = left;
      consider();
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[t] = c;
      rec(t + 1, left - c);
    }
  };
  rec(0, steps);

  LagrangianOptions polish;
  polish.max_iterations = 20000;
  for (const auto& [value, point] : top) {
    std::vector<std::vector<double>> starts{point, point};
    for (Vertex v : active) starts[1][v] += 1e-3;
    normalize(starts[1]);
    for (auto& s : starts) {
      auto res = ascend(h, s, polish);
      if (res.value > best.value) {
        best.value = res.value;
        best.x = res.x;
      }
    }
    if (value > best.value) {
      best.value = value;
      best.x = point;
    }
  }
  return best;
}

}  // namespace

SimplexPoint::SimplexPoint(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("SimplexPoint: empty weight vector");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("SimplexPoint: weights must be finite and nonnegative");
    sum += w;
  }
  if (sum <= 0.0) throw std::invalid_argument("SimplexPoint: weights sum to zero");
  for (double& w : weights_) w /= sum;
}

SimplexPoint SimplexPoint::uniform(std::size_t n) {
  return SimplexPoint(std::vector<double>(n, 1.0));
}

double edge_polynomial(const Hypergraph& h, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != h.n())
    throw std::invalid_argument("edge_polynomial: dimension mismatch");
  double total = 0.0;
  for (const Edge& e : h.edges()) {
    double term = 1.0;
    for (Vertex v : e) term *= x[v];
    total += term;
  }
  return total;
}

double edge_polynomial(const Hypergraph& h, const SimplexPoint& x) {
  return edge_polynomial(h, x.weights());
}

std::vector<double> edge_polynomial_gradient(const Hypergraph& h, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != h.n())
    throw std::invalid_argument("edge_polynomial_gradient: dimension mismatch");
  std::vector<double> g(h.n(), 0.0);
  for (const Edge& e : h.edges())
    for (Vertex v : e) {
      double term = 1.0;
      for (Vertex u : e)
        if (u != v) term *= x[u];
      g[v] += term;
    }
  return g;
}

Rational exact_edge_polynomial(const Hypergraph& h, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != h.n())
    throw std::invalid_argument("exact_edge_polynomial: dimension mismatch");
  Rational total = 0;
  for (const Edge& e : h.edges()) {
    Rational term = 1;
    for (Vertex v : e) term *= x[v];
    total += term;
  }
  return total;
}

LagrangianResult lagrangian(const Hypergraph& h, const LagrangianOptions& opts) {
  if (opts.restarts < 1) throw std::invalid_argument("lagrangian: need at least one restart");
  if (h.n() == 0) throw std::invalid_argument("lagrangian: host has no vertices");
  LagrangianResult result;
  result.witness = SimplexPoint::uniform(h.n());
  const double r_factorial = std::tgamma(h.r() + 1.0);
  if (h.edge_count() == 0) {
    result.status = SolveStatus::converged;
    return result;
  }

  std::mt19937_64 rng(opts.seed);
  std::vector<std::vector<double>> starts;
  starts.push_back(std::vector<double>(h.n(), 1.0 / h.n()));
  while (static_cast<int>(starts.size()) < opts.restarts) starts.push_back(dirichlet_start(h.n(), rng));

  std::vector<AscentResult> runs(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) { runs[i] = ascend(h, starts[i], opts); });

  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (better(runs[i].value, runs[i].x, runs[best].value, runs[best].x)) best = i;

  std::vector<double> x = runs[best].x;
  double value = runs[best].value;
  bool capped = runs[best].hit_iteration_cap;

  int active = 0;
  for (Vertex v = 0; v < h.n(); ++v) active += h.degree(v) > 0;
  if (opts.grid_check && active <= 12) {
    GridBest grid = grid_search(h, 40);
    if (grid.value > value) {
      value = grid.value;
      x = grid.x;
      capped = false;
    }
    result.grid_confirmed = std::abs(grid.value - value) <= 1e-6;
  }

  result.value = value;
  result.witness = SimplexPoint(x);
  result.blowup_density = r_factorial * value;
  result.restarts_used = static_cast<int>(starts.size());
  result.fixed_point_residual = residual_on_support(h, result.witness.weights());
  result.status = (!capped && result.fixed_point_residual < kResidualConverged)
                      ? SolveStatus::converged
                      : SolveStatus::budget_limited;
  return result;
}

double grid_lagrangian(const Hypergraph& h, int max_steps) {
  return grid_search(h, max_steps).value;
}

std::vector<Rational> rationalize(const SimplexPoint& x, long max_denominator) {
  std::vector<Rational> out;
  std::size_t largest = 0;
  for (std::size_t v = 0; v < x.size(); ++v) {
    out.push_back(best_rational(x[v], max_denominator));
    if (x[v] > x[largest]) largest = v;
  }
  Rational others = 0;
  for (std::size_t v = 0; v < out.size(); ++v)
    if (v != largest) others += out[v];
  out[largest] = 1 - others;
  return out;
}

std::optional<double> density_lower_bound(const Hypergraph& h, const Family& family,
                                          const SearchBudget& budget,
                                          const LagrangianOptions& opts) {
  if (!is_hom_free(h, family, budget)) return std::nullopt;
  return lagrangian(h, opts).blowup_density;
}

bool check_density_monotone(const Family& sources, const Family& targets,
                            const SearchBudget& budget) {
  if (sources.r() != targets.r())
    throw std::invalid_argument("check_density_monotone: uniformities differ");
  for (const auto& target : targets.members()) {
    bool mapped = false;
    for (const auto& source : sources.members()) {
      auto res = find_homomorphism(source, target, budget);
      if (res.status == SearchStatus::budget_exhausted)
        throw BudgetExhausted("check_density_monotone: search budget exhausted");
      if (res.found()) {
        mapped = true;
        break;
      }
    }
    if (!mapped) return false;
  }
  return true;
}

}  // namespace hyperturan
