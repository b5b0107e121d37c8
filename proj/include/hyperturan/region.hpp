#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperturan/rational.hpp"

namespace hyperturan {

// Tolerances for the region X_{r,k} (see README for how they were chosen).
inline constexpr double kFeasibilityTol = 1e-9;
inline constexpr double kSegmentTol = 1e-7;
inline constexpr double kOptimalityResidual = 1e-8;

/// ceil(r/e) and floor(r/e), computed in long double. Throws if r/e is within
/// 1e-9 of an integer, where rounding could flip the result.
int ceil_r_over_e(int r);
int floor_r_over_e(int r);

/// One tent constraint x_i + x_j <= x_{i+j} (1-based indices, x_r = 1).
struct TentConstraint {
  int i = 0;
  int j = 0;

  friend bool operator==(const TentConstraint&, const TentConstraint&) = default;
};

/// All (i, j) with 1 <= i <= k and i <= j <= r - i.
std::vector<TentConstraint> tent_constraints(int r, int k);

/// A point (x_1, ..., x_r) of X_{r,k}: 0 < x_1 <= ... <= x_r = 1 and every
/// tent constraint holds, all within tol. x is stored 0-based: x()[i-1] = x_i.
class FeasiblePoint {
 public:
  FeasiblePoint(int r, int k, std::vector<double> x, double tol = kFeasibilityTol);

  int r() const { return r_; }
  int k() const { return k_; }
  const std::vector<double>& x() const { return x_; }
  /// 1-based access with x_0 = 0.
  double at(int i) const { return i == 0 ? 0.0 : x_[i - 1]; }
  double product() const;

 private:
  int r_;
  int k_;
  std::vector<double> x_;
};

struct Violation {
  std::string kind;  // "positivity", "monotonicity", "endpoint", "tent"
  int i = 0;
  int j = 0;
  /// Signed slack; negative beyond -tol means violated.
  double slack = 0.0;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Violation> violations;
  /// Smallest tent-constraint slack x_{i+j} - x_i - x_j.
  double worst_tent_slack = 0.0;
};

FeasibilityReport check_feasible(const std::vector<double>& x, int r, int k,
                                 double tol = kFeasibilityTol);

struct ExactFeasibility {
  bool feasible = false;
  bool all_tent_tight = false;
  Rational product;
};

/// Exact membership test; x is 0-based like FeasiblePoint.
ExactFeasibility check_feasible_exact(const std::vector<Rational>& x, int r, int k);

/// The point x_i = i/r in exact arithmetic.
std::vector<Rational> uniform_point_exact(int r);

struct KktCertificate {
  bool optimal = false;
  std::vector<TentConstraint> active;
  /// Multiplier per active constraint (nonnegative).
  std::vector<double> multipliers;
  /// Multiplier of the equality x_r = 1.
  double endpoint_multiplier = 0.0;
  /// Sup-norm of grad - sum(multiplier * normal) over x_1..x_{r-1}.
  double residual = 0.0;
  /// When not optimal: a first-order feasible direction (x_r component zero)
  /// along which the log-product strictly increases.
  std::vector<double> improving_direction;
  double directional_gain = 0.0;
};

/// Certifies optimality of sum(log x_i) over X_{r,k} at x by a nonnegative
/// least-squares fit of the gradient in the cone of active constraint
/// normals. Constraints with slack <= active_tol count as active.
KktCertificate kkt_certificate(const FeasiblePoint& x, double active_tol = 1e-7,
                              const std::vector<double>& weights = {});

/// General linear constraint sum_t coeffs[t] * x_{t+1} <= bound.
struct LinearConstraint {
  std::vector<double> coeffs;
  double bound = 0.0;
};

struct RegionSolveOptions {
  /// Strictly feasible start; defaults to x_i = (i/r)^2.
  std::optional<std::vector<double>> start;
  /// Objective sum_i weights[i] * log x_{i+1}; defaults to all ones.
  std::optional<std::vector<double>> weights;
  /// Extra constraints intersected with X_{r,k}.
  std::vector<LinearConstraint> extra;
  /// Re-check the candidate x_i = i/r in exact arithmetic.
  bool exact = false;
  int max_newton_steps = 2000;
};

enum class RegionStatus { converged, not_converged };

struct ExactCandidateCheck {
  bool feasible = false;
  bool all_tent_tight = false;
  Rational product;
  bool product_equals_bound = false;
};

struct OptimizationReport {
  int r = 0;
  int k = 0;
  double value = 0.0;
  FeasiblePoint argmax{2, 1, {0.5, 1.0}};
  double bound = 0.0;
  Rational bound_exact;
  KktCertificate kkt;
  RegionStatus status = RegionStatus::not_converged;
  /// Sup-norm distance of the argmax from (i/r)_i.
  double deviation_from_uniform = 0.0;
  std::optional<ExactCandidateCheck> exact;
};

/// Maximizes prod x_i over X_{r,k} by a log-barrier interior-point method on
/// sum(log x_i), followed by an active-set polish and a KKT certificate.
OptimizationReport maximize_product(int r, int k, const RegionSolveOptions& opts = {});

/// x_i = i/r - i*eps/r for i <= k and x_i = i/r + (r-i)*eps/r otherwise,
/// in exact arithmetic (0-based like FeasiblePoint).
std::vector<Rational> counterexample_coordinates(int r, int k, const Rational& eps);

struct CounterexampleResult {
  FeasiblePoint point{2, 1, {0.5, 1.0}};
  std::vector<Rational> exact_x;
  Rational eps;
  bool exact_feasible = false;
  Rational product;
  Rational bound;
  /// product > bound, decided exactly.
  bool exceeds_bound = false;
};

/// Requires 1 <= k < floor(r/e). Starting from eps (1/(4r) by default),
/// halves eps until the point is exactly feasible and its product strictly
/// exceeds r!/r^r. eps = 0 returns x_i = i/r unchanged.
CounterexampleResult counterexample_point(int r, int k, std::optional<Rational> eps = {});

/// -k + sum_{i=k+1}^{r} (r-i)/i, exactly.
Rational fprime_zero(int r, int k);

/// r (log r - log k - 1); nonpositive iff r <= k e.
double upper_bound_gap(int r, int k);

struct Segment {
  int left = 0;
  int right = 0;
  bool central = false;
  bool left_crossing = false;
  bool right_crossing = false;
  bool super = false;

  int length() const { return right - left + 1; }
};

struct SegmentDecomposition {
  /// Every maximal uniform interval of {0..r}, ordered by left endpoint.
  std::vector<Segment> segments;
  /// Right endpoint of the initial segment [0, I].
  int initial_length = 0;

  /// The segment containing index i with the smallest left endpoint.
  const Segment& containing(int i) const;
};

/// [L, R] is uniform when x_i = x_L + (i - L) x_1 for L <= i <= R (x_0 = 0).
SegmentDecomposition segments(const FeasiblePoint& x, double tol = kSegmentTol);

/// Index moves of the improving perturbation for points whose initial
/// segment is shorter than k: +1/-1 per index 1..r-1, 0 for untouched.
std::vector<int> perturbation_pattern(const FeasiblePoint& x, double tol = kSegmentTol);

/// x + eps * perturbation_pattern(x). Requires I <= k - 1 and
/// x_j + x_{r-j} = 1 for j in [k].
std::vector<double> perturb(const FeasiblePoint& x, double eps, double tol = kSegmentTol);

struct QuarticCheck {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double fprime_zero = 0.0;
};

/// Compares (a+eps)(b-eps)(1-a-eps)(1-b+eps) against ab(1-a)(1-b) for
/// 0 < a <= b < 1/2 and eps > 0; also returns the linear coefficient
/// (b-a)((1-a)(1-b)+ab).
QuarticCheck quartic_inequality(double a, double b, double eps);

struct FloorProbe {
  int r = 0;
  int k = 0;
  OptimizationReport report;
  bool exceeds_bound = false;
};

/// maximize_product(r, floor(r/e)) and whether the optimum beats r!/r^r.
FloorProbe probe_floor_case(int r);

}  // namespace hyperturan
