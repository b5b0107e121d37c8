#include "hyperturan/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hyperturan {

namespace {

void check_rk(int r, int k) {
  if (r < 2) throw std::invalid_argument("region: r must be at least 2");
  if (k < 1 || k > r / 2) throw std::invalid_argument("region: k must lie in [1, floor(r/2)]");
}

long double r_over_e(int r) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  long double q = static_cast<long double>(r) / std::numbers::e_v<long double>;
  if (std::fabs(q - std::nearbyint(q)) < 1e-9L)
    throw std::domain_error("r/e is too close to an integer");
  return q;
}

// Constraints a . y <= b over y = (x_1, ..., x_{r-1}); x_r = 1 is substituted.
struct Polytope {
  int dim = 0;
  std::vector<Eigen::VectorXd> a;
  std::vector<double> b;
  std::vector<int> tent_index;  // index into the tent list, -1 for extras
};

Polytope build_polytope(int r, const std::vector<TentConstraint>& tents,
                        const std::vector<LinearConstraint>& extra) {
  Polytope p;
  p.dim = r - 1;
  for (std::size_t c = 0; c < tents.size(); ++c) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(p.dim);
    const auto [i, j] = tents[c];
    a[i - 1] += 1.0;
    a[j - 1] += 1.0;
    double b = 0.0;
    if (i + j < r)
      a[i + j - 1] -= 1.0;
    else
      b = 1.0;
    p.a.push_back(a);
    p.b.push_back(b);
    p.tent_index.push_back(static_cast<int>(c));
  }
  for (const auto& lc : extra) {
    if (static_cast<int>(lc.coeffs.size()) != r)
      throw std::invalid_argument("extra constraint must have r coefficients");
    Eigen::VectorXd a(p.dim);
    for (int t = 0; t < p.dim; ++t) a[t] = lc.coeffs[t];
    p.a.push_back(a);
    p.b.push_back(lc.bound - lc.coeffs[r - 1]);
    p.tent_index.push_back(-1);
  }
  return p;
}

double slack(const Polytope& p, std::size_t c, const Eigen::VectorXd& y) {
  return p.b[c] - p.a[c].dot(y);
}

bool strictly_inside(const Polytope& p, const Eigen::VectorXd& y) {
  if ((y.array() <= 0.0).any()) return false;
  for (std::size_t c = 0; c < p.a.size(); ++c)
    if (slack(p, c, y) <= 0.0) return false;
  return true;
}

double barrier_value(const Polytope& p, const Eigen::VectorXd& w, double t,
                     const Eigen::VectorXd& y) {
  double v = -t * (w.array() * y.array().log()).sum();
  for (std::size_t c = 0; c < p.a.size(); ++c) v -= std::log(slack(p, c, y));
  return v;
}

// Damped Newton on the barrier problem for fixed t. Returns steps used.
int center(const Polytope& p, const Eigen::VectorXd& w, double t, Eigen::VectorXd& y,
           int max_steps) {
  const int n = p.dim;
  int steps = 0;
  while (steps < max_steps) {
    ++steps;
    Eigen::VectorXd grad = -t * w.cwiseQuotient(y);
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n, n);
    hess.diagonal() = t * w.cwiseQuotient(y.cwiseProduct(y));
    for (std::size_t c = 0; c < p.a.size(); ++c) {
      double s = slack(p, c, y);
      grad += p.a[c] / s;
      hess.noalias() += p.a[c] * p.a[c].transpose() / (s * s);
    }
    Eigen::VectorXd d = hess.ldlt().solve(-grad);
    double decrement = -grad.dot(d);
    if (!std::isfinite(decrement) || decrement / 2.0 < 1e-10) break;
    double f0 = barrier_value(p, w, t, y);
    double alpha = 1.0;
    while (alpha > 1e-16 && !strictly_inside(p, y + alpha * d)) alpha *= 0.5;
    while (alpha > 1e-16 && barrier_value(p, w, t, y + alpha * d) > f0 - 0.25 * alpha * decrement)
      alpha *= 0.5;
    if (alpha <= 1e-16) break;
    y += alpha * d;
  }
  return steps;
}

// Newton on the face {a_c . y = b_c, c active}, kept only if it stays feasible.
std::optional<Eigen::VectorXd> polish(const Polytope& p, const Eigen::VectorXd& w,
                                      const Eigen::VectorXd& y_in, double active_tol) {
  const int n = p.dim;
  std::vector<std::size_t> active;
  for (std::size_t c = 0; c < p.a.size(); ++c)
    if (slack(p, c, y_in) <= active_tol) active.push_back(c);
  Eigen::VectorXd y0 = y_in;
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(n, n);
  if (!active.empty()) {
    Eigen::MatrixXd a(active.size(), n);
    Eigen::VectorXd b(active.size());
    for (std::size_t q = 0; q < active.size(); ++q) {
      a.row(q) = p.a[active[q]].transpose();
      b[q] = p.b[active[q]];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cutoff = 1e-10 * (sv.size() ? sv[0] : 1.0);
    int rank = 0;
    for (int q = 0; q < sv.size(); ++q)
      if (sv[q] > cutoff) ++rank;
    // Closest point of the affine face to y_in.
    Eigen::VectorXd res = b - a * y_in;
    Eigen::VectorXd corr = Eigen::VectorXd::Zero(n);
    for (int q = 0; q < rank; ++q)
      corr += svd.matrixV().col(q) * (svd.matrixU().col(q).dot(res) / sv[q]);
    y0 = y_in + corr;
    if ((a * y0 - b).cwiseAbs().maxCoeff() > 1e-10) return std::nullopt;
    basis = svd.matrixV().rightCols(n - rank);
  }
  Eigen::VectorXd y = y0;
  if (basis.cols() > 0) {
    for (int it = 0; it < 100; ++it) {
      if ((y.array() <= 0.0).any()) return std::nullopt;
      Eigen::VectorXd g = w.cwiseQuotient(y);
      Eigen::VectorXd gz = basis.transpose() * g;
      if (gz.cwiseAbs().maxCoeff() < 1e-15) break;
      Eigen::MatrixXd hz =
          basis.transpose() * w.cwiseQuotient(y.cwiseProduct(y)).asDiagonal() * basis;
      Eigen::VectorXd dz = hz.ldlt().solve(gz);
      Eigen::VectorXd d = basis * dz;
      double alpha = 1.0;
      while (alpha > 1e-16 && ((y + alpha * d).array() <= 0.0).any()) alpha *= 0.5;
      y += alpha * d;
      if (d.cwiseAbs().maxCoeff() * alpha < 1e-16) break;
    }
  }
  if ((y.array() <= 0.0).any()) return std::nullopt;
  for (std::size_t c = 0; c < p.a.size(); ++c)
    if (slack(p, c, y) < -1e-12) return std::nullopt;
  return y;
}

// Lawson-Hanson: min ||G lambda - g|| subject to lambda >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& g_mat, const Eigen::VectorXd& g) {
  const int m = static_cast<int>(g_mat.cols());
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(m);
  if (m == 0) return lambda;
  std::vector<bool> passive(m, false);
  const double tol = 1e-13 * std::max(1.0, g_mat.cwiseAbs().maxCoeff()) *
                     std::max(1.0, g.cwiseAbs().maxCoeff()) * m;
  auto solve_passive = [&](Eigen::VectorXd& z) {
    std::vector<int> idx;
    for (int q = 0; q < m; ++q)
      if (passive[q]) idx.push_back(q);
    Eigen::MatrixXd sub(g_mat.rows(), idx.size());
    for (std::size_t q = 0; q < idx.size(); ++q) sub.col(q) = g_mat.col(idx[q]);
    Eigen::VectorXd sol = sub.completeOrthogonalDecomposition().solve(g);
    z = Eigen::VectorXd::Zero(m);
    for (std::size_t q = 0; q < idx.size(); ++q) z[idx[q]] = sol[q];
  };
  for (int outer = 0; outer < 3 * m + 10; ++outer) {
    Eigen::VectorXd w = g_mat.transpose() * (g - g_mat * lambda);
    int best = -1;
    double best_w = tol;
    for (int q = 0; q < m; ++q)
      if (!passive[q] && w[q] > best_w) {
        best_w = w[q];
        best = q;
      }
    if (best < 0) break;
    passive[best] = true;
    for (int inner = 0; inner < 3 * m + 10; ++inner) {
      Eigen::VectorXd z;
      solve_passive(z);
      bool ok = true;
      for (int q = 0; q < m; ++q)
        if (passive[q] && z[q] <= 0.0) ok = false;
      if (ok) {
        lambda = z;
        break;
      }
      double alpha = 1.0;
      for (int q = 0; q < m; ++q)
        if (passive[q] && z[q] <= 0.0)
          alpha = std::min(alpha, lambda[q] / (lambda[q] - z[q]));
      lambda += alpha * (z - lambda);
      for (int q = 0; q < m; ++q)
        if (passive[q] && lambda[q] <= 1e-15) {
          passive[q] = false;
          lambda[q] = 0.0;
        }
    }
  }
  return lambda;
}

std::vector<double> to_std(const Eigen::VectorXd& y) {
  std::vector<double> x(y.data(), y.data() + y.size());
  x.push_back(1.0);
  return x;
}

}  // namespace

int ceil_r_over_e(int r) { return static_cast<int>(std::ceil(r_over_e(r))); }
int floor_r_over_e(int r) { return static_cast<int>(std::floor(r_over_e(r))); }

std::vector<TentConstraint> tent_constraints(int r, int k) {
  check_rk(r, k);
  std::vector<TentConstraint> out;
  for (int i = 1; i <= k; ++i)
    for (int j = i; j <= r - i; ++j) out.push_back({i, j});
  return out;
}

FeasibilityReport check_feasible(const std::vector<double>& x, int r, int k, double tol) {
  check_rk(r, k);
  if (static_cast<int>(x.size()) != r)
    throw std::invalid_argument("check_feasible: x must have r coordinates");
  FeasibilityReport rep;
  auto at = [&](int i) { return i == 0 ? 0.0 : x[i - 1]; };
  auto add = [&](std::string kind, int i, int j, double s) {
    rep.feasible = false;
    rep.violations.push_back({std::move(kind), i, j, s});
  };
  for (double v : x)
    if (!std::isfinite(v)) throw std::invalid_argument("check_feasible: non-finite coordinate");
  if (!(x[0] > 0.0)) add("positivity", 1, 0, x[0]);
  for (int i = 1; i < r; ++i) {
    double s = at(i + 1) - at(i);
    if (s < -tol) add("monotonicity", i, i + 1, s);
  }
  if (std::fabs(x[r - 1] - 1.0) > tol) add("endpoint", r, 0, 1.0 - x[r - 1]);
  rep.worst_tent_slack = std::numeric_limits<double>::infinity();
  for (const auto& [i, j] : tent_constraints(r, k)) {
    double s = at(i + j) - at(i) - at(j);
    rep.worst_tent_slack = std::min(rep.worst_tent_slack, s);
    if (s < -tol) add("tent", i, j, s);
  }
  return rep;
}

FeasiblePoint::FeasiblePoint(int r, int k, std::vector<double> x, double tol)
    : r_(r), k_(k), x_(std::move(x)) {
  auto rep = check_feasible(x_, r, k, tol);
  if (!rep.feasible) {
    const auto& v = rep.violations.front();
    throw std::invalid_argument("infeasible point: " + v.kind + " constraint (" +
                                std::to_string(v.i) + ", " + std::to_string(v.j) +
                                ") has slack " + std::to_string(v.slack));
  }
}

double FeasiblePoint::product() const {
  double p = 1.0;
  for (double v : x_) p *= v;
  return p;
}

ExactFeasibility check_feasible_exact(const std::vector<Rational>& x, int r, int k) {
  check_rk(r, k);
  if (static_cast<int>(x.size()) != r)
    throw std::invalid_argument("check_feasible_exact: x must have r coordinates");
  ExactFeasibility out;
  auto at = [&](int i) { return i == 0 ? Rational(0) : x[i - 1]; };
  bool ok = x[0] > 0 && x[r - 1] == 1;
  for (int i = 1; i < r; ++i)
    if (x[i] < x[i - 1]) ok = false;
  bool tight = true;
  for (const auto& [i, j] : tent_constraints(r, k)) {
    Rational s = at(i + j) - at(i) - at(j);
    if (s < 0) ok = false;
    if (s != 0) tight = false;
  }
  out.feasible = ok;
  out.all_tent_tight = tight;
  out.product = 1;
  for (const auto& v : x) out.product *= v;
  return out;
}

std::vector<Rational> uniform_point_exact(int r) {
  if (r < 1) throw std::invalid_argument("uniform_point_exact: r must be positive");
  std::vector<Rational> x;
  for (int i = 1; i <= r; ++i) {
    Rational v(i, r);
    v.canonicalize();
    x.push_back(v);
  }
  return x;
}

KktCertificate kkt_certificate(const FeasiblePoint& x, double active_tol,
                               const std::vector<double>& weights) {
  const int r = x.r();
  const int n = r - 1;
  if (!weights.empty() && static_cast<int>(weights.size()) != r)
    throw std::invalid_argument("kkt_certificate: weights must have r entries");
  auto weight = [&](int i) { return weights.empty() ? 1.0 : weights[i - 1]; };
  KktCertificate cert;
  Eigen::VectorXd g(n);
  for (int i = 1; i <= n; ++i) g[i - 1] = weight(i) / x.at(i);
  for (const auto& c : tent_constraints(r, x.k()))
    if (x.at(c.i + c.j) - x.at(c.i) - x.at(c.j) <= active_tol) cert.active.push_back(c);
  Eigen::MatrixXd gm = Eigen::MatrixXd::Zero(n, cert.active.size());
  for (std::size_t q = 0; q < cert.active.size(); ++q) {
    const auto [i, j] = cert.active[q];
    gm(i - 1, q) += 1.0;
    gm(j - 1, q) += 1.0;
    if (i + j < r) gm(i + j - 1, q) -= 1.0;
  }
  Eigen::VectorXd lambda = nnls(gm, g);
  Eigen::VectorXd res = g - gm * lambda;
  cert.multipliers.assign(lambda.data(), lambda.data() + lambda.size());
  cert.residual = n > 0 ? res.cwiseAbs().maxCoeff() : 0.0;
  cert.endpoint_multiplier = weight(r) / x.at(r);
  for (std::size_t q = 0; q < cert.active.size(); ++q)
    if (cert.active[q].i + cert.active[q].j == r) cert.endpoint_multiplier += lambda[q];
  cert.optimal = cert.residual < kOptimalityResidual;
  if (!cert.optimal) {
    cert.improving_direction.assign(res.data(), res.data() + res.size());
    cert.improving_direction.push_back(0.0);
    cert.directional_gain = g.dot(res);
  }
  return cert;
}

OptimizationReport maximize_product(int r, int k, const RegionSolveOptions& opts) {
  check_rk(r, k);
  const auto tents = tent_constraints(r, k);
  const Polytope poly = build_polytope(r, tents, opts.extra);
  const int n = r - 1;

  Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
  std::vector<double> weights;
  if (opts.weights) {
    if (static_cast<int>(opts.weights->size()) != r)
      throw std::invalid_argument("maximize_product: weights must have r entries");
    for (int t = 0; t < n; ++t) {
      if (!((*opts.weights)[t] > 0.0))
        throw std::invalid_argument("maximize_product: weights must be positive");
      w[t] = (*opts.weights)[t];
    }
    weights = *opts.weights;
  }

  Eigen::VectorXd y(n);
  if (opts.start) {
    if (static_cast<int>(opts.start->size()) != r)
      throw std::invalid_argument("maximize_product: start must have r coordinates");
    for (int t = 0; t < n; ++t) y[t] = (*opts.start)[t];
  } else {
    for (int t = 0; t < n; ++t) y[t] = std::pow(static_cast<double>(t + 1) / r, 2);
  }
  if (!strictly_inside(poly, y))
    throw std::invalid_argument("maximize_product: start is not strictly feasible");

  const double m = static_cast<double>(poly.a.size());
  double t = 1.0;
  int steps = 0;
  bool budget_hit = false;
  while (true) {
    int left = opts.max_newton_steps - steps;
    if (left <= 0) {
      budget_hit = true;
      break;
    }
    steps += center(poly, w, t, y, std::min(left, 60));
    if (m / t < 1e-12) break;
    t *= 10.0;
  }
  if (auto yp = polish(poly, w, y, 1e-7)) y = *yp;

  OptimizationReport rep;
  rep.r = r;
  rep.k = k;
  rep.argmax = FeasiblePoint(r, k, to_std(y));
  rep.value = rep.argmax.product();
  rep.bound_exact = single_edge_density(r);
  rep.bound = rep.bound_exact.get_d();
  rep.kkt = kkt_certificate(rep.argmax, 1e-7, weights);
  bool extra_ok = true;
  for (std::size_t c = tents.size(); c < poly.a.size(); ++c)
    if (slack(poly, c, y) <= 1e-7) extra_ok = false;  // certificate ignores extras
  rep.status = rep.kkt.optimal && extra_ok && !budget_hit
                   ? RegionStatus::converged
                   : RegionStatus::not_converged;
  for (int i = 1; i <= r; ++i)
    rep.deviation_from_uniform = std::max(
        rep.deviation_from_uniform, std::fabs(rep.argmax.at(i) - static_cast<double>(i) / r));
  if (opts.exact) {
    auto u = check_feasible_exact(uniform_point_exact(r), r, k);
    ExactCandidateCheck ec;
    ec.feasible = u.feasible;
    ec.all_tent_tight = u.all_tent_tight;
    ec.product = u.product;
    ec.product_equals_bound = u.product == rep.bound_exact;
    rep.exact = ec;
  }
  return rep;
}

std::vector<Rational> counterexample_coordinates(int r, int k, const Rational& eps) {
  check_rk(r, k);
  std::vector<Rational> x;
  for (int i = 1; i <= r; ++i) {
    Rational v = Rational(i, r) + (i <= k ? Rational(-i) : Rational(r - i)) * eps / r;
    v.canonicalize();
    x.push_back(v);
  }
  return x;
}

CounterexampleResult counterexample_point(int r, int k, std::optional<Rational> eps) {
  check_rk(r, k);
  if (k >= floor_r_over_e(r))
    throw std::invalid_argument("counterexample_point: requires k < floor(r/e)");
  Rational e = eps ? *eps : Rational(1, 4 * r);
  e.canonicalize();
  if (e < 0) throw std::invalid_argument("counterexample_point: eps must be nonnegative");
  CounterexampleResult out;
  out.bound = single_edge_density(r);
  for (int halvings = 0; halvings < 200; ++halvings) {
    auto x = counterexample_coordinates(r, k, e);
    auto chk = check_feasible_exact(x, r, k);
    bool done = e == 0 || (chk.feasible && chk.product > out.bound);
    if (done) {
      std::vector<double> xd;
      for (const auto& v : x) xd.push_back(v.get_d());
      out.point = FeasiblePoint(r, k, xd);
      out.exact_x = x;
      out.eps = e;
      out.exact_feasible = chk.feasible;
      out.product = chk.product;
      out.exceeds_bound = chk.product > out.bound;
      return out;
    }
    e /= 2;
  }
  throw std::runtime_error("counterexample_point: no admissible eps found");
}

Rational fprime_zero(int r, int k) {
  if (r < 1 || k < 1 || k > r) throw std::invalid_argument("fprime_zero: need 1 <= k <= r");
  Rational s = -k;
  for (int i = k + 1; i <= r; ++i) s += Rational(r - i, i);
  s.canonicalize();
  return s;
}

double upper_bound_gap(int r, int k) {
  if (r < 1 || k < 1) throw std::invalid_argument("upper_bound_gap: need r, k >= 1");
  return r * (std::log(static_cast<double>(r)) - std::log(static_cast<double>(k)) - 1.0);
}

const Segment& SegmentDecomposition::containing(int i) const {
  for (const auto& s : segments)
    if (s.left <= i && i <= s.right) return s;
  throw std::out_of_range("no segment contains index " + std::to_string(i));
}

SegmentDecomposition segments(const FeasiblePoint& x, double tol) {
  const int r = x.r();
  const int k = x.k();
  const double step = x.at(1);
  std::vector<int> reach(r + 1);
  for (int left = 0; left <= r; ++left) {
    int right = left;
    while (right + 1 <= r &&
           std::fabs(x.at(right + 1) - x.at(left) - (right + 1 - left) * step) <= tol)
      ++right;
    reach[left] = right;
  }
  SegmentDecomposition dec;
  dec.initial_length = reach[0];
  int covered = -1;
  for (int left = 0; left <= r; ++left) {
    if (reach[left] <= covered) continue;
    covered = reach[left];
    Segment s;
    s.left = left;
    s.right = reach[left];
    s.central = s.left >= k + 1 && s.right <= r - k - 1;
    s.left_crossing = s.left <= k && s.right >= k + 1;
    s.right_crossing = s.left <= r - k - 1 && s.right >= r - k;
    s.super = s.length() == dec.initial_length + 1;
    dec.segments.push_back(s);
  }
  return dec;
}

std::vector<int> perturbation_pattern(const FeasiblePoint& x, double tol) {
  const int r = x.r();
  const int k = x.k();
  const auto dec = segments(x, tol);
  const int big_i = dec.initial_length;
  if (big_i > k - 1)
    throw std::invalid_argument("perturbation_pattern: initial segment must be shorter than k");
  for (int j = 1; j <= k; ++j)
    if (std::fabs(x.at(j) + x.at(r - j) - 1.0) > tol)
      throw std::invalid_argument("perturbation_pattern: point is not symmetric on [k]");
  std::vector<int> dir(r + 1, 0);
  auto mark = [&](int idx, int s) {
    if (idx <= 0 || idx >= r)
      throw std::logic_error("perturbation_pattern: move outside 1..r-1 at " +
                             std::to_string(idx));
    if (dir[idx] != 0 && dir[idx] != s)
      throw std::logic_error("perturbation_pattern: conflicting moves at " +
                             std::to_string(idx));
    dir[idx] = s;
  };
  mark(big_i, +1);
  mark(r - big_i, -1);
  for (const auto& s : dec.segments) {
    if (!s.super) continue;
    bool initial = s.left == 0 && s.right == big_i;
    bool final = s.left == r - big_i && s.right == r;
    if (s.central) {
      mark(s.right, +1);
      continue;
    }
    if (!initial && !final) {
      mark(s.left, -1);
      mark(s.right, +1);
    }
    if (s.left_crossing && !s.right_crossing) mark(r - s.left, +1);
    if (s.right_crossing && !s.left_crossing) mark(r - s.right, -1);
  }
  return {dir.begin() + 1, dir.end()};
}

std::vector<double> perturb(const FeasiblePoint& x, double eps, double tol) {
  auto dir = perturbation_pattern(x, tol);
  std::vector<double> out = x.x();
  for (int i = 0; i < x.r(); ++i) out[i] += eps * dir[i];
  return out;
}

QuarticCheck quartic_inequality(double a, double b, double eps) {
  if (!(a > 0.0 && a <= b && b < 0.5))
    throw std::invalid_argument("quartic_inequality: need 0 < a <= b < 1/2");
  if (!(eps > 0.0)) throw std::invalid_argument("quartic_inequality: eps must be positive");
  QuarticCheck q;
  q.lhs = (a + eps) * (b - eps) * (1 - a - eps) * (1 - b + eps);
  q.rhs = a * b * (1 - a) * (1 - b);
  q.fprime_zero = (b - a) * ((1 - a) * (1 - b) + a * b);
  q.holds = q.lhs > q.rhs;
  return q;
}

FloorProbe probe_floor_case(int r) {
  FloorProbe p;
  p.r = r;
  p.k = floor_r_over_e(r);
  if (p.k < 1) throw std::invalid_argument("probe_floor_case: floor(r/e) must be at least 1");
  RegionSolveOptions opts;
  opts.exact = true;
  p.report = maximize_product(r, p.k, opts);
  p.exceeds_bound = p.report.value > p.report.bound * (1.0 + 1e-9);
  return p;
}

}  // namespace hyperturan
