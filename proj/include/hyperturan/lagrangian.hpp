#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hyperturan/core.hpp"
#include "hyperturan/hom.hpp"
#include "hyperturan/rational.hpp"

namespace hyperturan {

/// Nonnegative weights on V(H) summing to one; renormalized on construction.
class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<double> weights);

  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t v) const { return weights_[v]; }

  static SimplexPoint uniform(std::size_t n);

 private:
  std::vector<double> weights_;
};

enum class SolveStatus { converged, budget_limited };

struct LagrangianOptions {
  int restarts = 200;
  /// Stop a restart once the objective gains less than tol over stall_window
  /// iterations.
  double tol = 1e-12;
  int stall_window = 50;
  int max_iterations = 20000;
  std::uint64_t seed = 42;
  /// Cross-check against the lattice oracle for hosts with <= 12 vertices.
  bool grid_check = true;
};

struct LagrangianResult {
  double value = 0.0;
  SimplexPoint witness{std::vector<double>{1.0}};
  double blowup_density = 0.0;
  SolveStatus status = SolveStatus::converged;
  int restarts_used = 0;
  /// max over the support of |dP/dx_v / (r P) - 1|.
  double fixed_point_residual = 0.0;
  /// The lattice oracle ran and agreed within 1e-6.
  bool grid_confirmed = false;
};

double edge_polynomial(const Hypergraph& h, const SimplexPoint& x);
double edge_polynomial(const Hypergraph& h, const std::vector<double>& x);
/// dP/dx_v for every vertex.
std::vector<double> edge_polynomial_gradient(const Hypergraph& h, const std::vector<double>& x);

Rational exact_edge_polynomial(const Hypergraph& h, const std::vector<Rational>& x);

/// Best local maximum of the edge polynomial over the simplex across
/// multistart replicator ascent from Dirichlet(1) starts.
LagrangianResult lagrangian(const Hypergraph& h, const LagrangianOptions& opts = {});

/// Lattice oracle: scans every point of {c/N : sum c = N} over the
/// non-isolated vertices (N <= 40, coarsened to at most 2e5 points) and
/// polishes the best few by replicator ascent. Returns the best value.
double grid_lagrangian(const Hypergraph& h, int max_steps = 40);

/// Rounds the witness to fractions with bounded denominators, then fixes the
/// sum to exactly one on the largest coordinate.
std::vector<Rational> rationalize(const SimplexPoint& x, long max_denominator = 1'000'000);

/// b(H) when H is family-hom-free (a certified lower bound on the Turan
/// density of the family); empty otherwise.
std::optional<double> density_lower_bound(const Hypergraph& h, const Family& family,
                                          const SearchBudget& budget = {},
                                          const LagrangianOptions& opts = {});

/// True iff every member of `targets` receives a homomorphism from some member
/// of `sources`; then the Turan density of `sources` is at most that of
/// `targets`.
bool check_density_monotone(const Family& sources, const Family& targets,
                            const SearchBudget& budget = {});

}  // namespace hyperturan
