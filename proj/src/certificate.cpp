#include "hyperturan/certificate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hyperturan {

namespace {

const char* status_name(RegionStatus s) {
  return s == RegionStatus::converged ? "converged" : "not_converged";
}

template <class T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw std::invalid_argument(std::string("certificate: missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw std::invalid_argument(std::string("certificate: field \"") + key + "\" has the wrong type");
  }
}

void check_range(int r_min, int r_max) {
  if (r_min < 2 || r_max > 40 || r_min > r_max)
    throw std::invalid_argument("r range must satisfy 2 <= r_min <= r_max <= 40");
}

struct RowChecker {
  VerifyResult& out;
  std::string prefix;

  void require(bool ok, const std::string& condition) {
    if (!ok) {
      out.pass = false;
      out.failures.push_back(prefix + condition);
    }
  }
};

void verify_region_row(const Json& row, double tol, RowChecker& c) {
  const int r = get<int>(row, "r");
  const int k = get<int>(row, "k");
  if (r < 2 || k < 1 || k > r / 2) {
    c.require(false, "k range");
    return;
  }
  const auto x = get<std::vector<double>>(row, "argmax");
  if (static_cast<int>(x.size()) != r) {
    c.require(false, "argmax length");
    return;
  }
  const auto fr = check_feasible(x, r, k, tol);
  c.require(fr.feasible, "feasibility");
  if (!fr.feasible) return;
  const FeasiblePoint p(r, k, x, tol);

  const double optimum = get<double>(row, "optimum");
  c.require(std::fabs(p.product() - optimum) <= 1e-12 * std::fabs(optimum),
            "objective value");

  const Rational bound_exact = rational_from_string(get<std::string>(row, "bound_exact"));
  const double bound = get<double>(row, "bound");
  c.require(bound_exact == single_edge_density(r), "bound value");
  c.require(std::fabs(bound - bound_exact.get_d()) <= 1e-15 * bound, "bound value");

  if (get<bool>(row, "claims_bound")) {
    c.require(k >= ceil_r_over_e(r), "theorem hypothesis k >= ceil(r/e)");
    c.require(std::fabs(optimum - bound) / bound < 1e-6, "optimum equals bound");
    double dev = 0.0;
    for (int i = 1; i <= r; ++i) dev = std::max(dev, std::fabs(p.at(i) - static_cast<double>(i) / r));
    c.require(dev < 1e-4, "argmax equals (i/r)_i");
  }

  const auto active = get<std::vector<std::vector<int>>>(row, "active");
  const auto mult = get<std::vector<double>>(row, "multipliers");
  if (active.size() != mult.size()) {
    c.require(false, "one multiplier per active constraint");
    return;
  }
  std::vector<double> residual(r - 1);
  for (int i = 1; i < r; ++i) residual[i - 1] = 1.0 / p.at(i);
  double endpoint = 1.0 / p.at(r);
  bool tight = true;
  bool shape = true;
  bool nonneg = true;
  for (std::size_t q = 0; q < active.size(); ++q) {
    if (active[q].size() != 2) {
      shape = false;
      continue;
    }
    const int i = active[q][0];
    const int j = active[q][1];
    if (i < 1 || i > k || j < i || i + j > r) {
      shape = false;
      continue;
    }
    if (p.at(i + j) - p.at(i) - p.at(j) > 1e-7) tight = false;
    if (!(mult[q] >= 0.0)) nonneg = false;
    residual[i - 1] -= mult[q];
    residual[j - 1] -= mult[q];
    if (i + j < r)
      residual[i + j - 1] += mult[q];
    else
      endpoint += mult[q];
  }
  c.require(shape, "active constraint index");
  c.require(tight, "active constraint tightness");
  c.require(nonneg, "multiplier nonnegativity");
  double res = 0.0;
  for (double v : residual) res = std::max(res, std::fabs(v));
  c.require(res < kOptimalityResidual, "stationarity residual");
  const double recorded_endpoint = get<double>(row, "endpoint_multiplier");
  c.require(std::fabs(recorded_endpoint - endpoint) <= 1e-9 * std::max(1.0, std::fabs(endpoint)),
            "endpoint multiplier");

  if (row.contains("exact") && !row.at("exact").is_null()) {
    const Json& ex = row.at("exact");
    const auto u = check_feasible_exact(uniform_point_exact(r), r, k);
    c.require(get<bool>(ex, "uniform_feasible") == u.feasible, "exact feasibility of i/r");
    c.require(get<bool>(ex, "all_tent_tight") == u.all_tent_tight, "exact tightness of i/r");
    c.require(rational_from_string(get<std::string>(ex, "product")) == u.product,
              "exact product of i/r");
    c.require(get<bool>(ex, "product_equals_bound") == (u.product == bound_exact),
              "exact product equals bound");
  }
}

void verify_counterexample_row(const Json& row, RowChecker& c) {
  const int r = get<int>(row, "r");
  const int k = get<int>(row, "k");
  if (r < 2 || k < 1 || k > r / 2 || k >= floor_r_over_e(r)) {
    c.require(false, "k range 1 <= k < floor(r/e)");
    return;
  }
  const Rational eps = rational_from_string(get<std::string>(row, "eps"));
  c.require(eps > 0, "eps positive");
  const auto x = counterexample_coordinates(r, k, eps);
  c.require(rationals_from_json(row.at("x")) == x, "coordinates");
  const auto chk = check_feasible_exact(x, r, k);
  c.require(chk.feasible && get<bool>(row, "exact_feasible"), "exact feasibility");
  c.require(rational_from_string(get<std::string>(row, "product")) == chk.product, "product value");
  const Rational bound = single_edge_density(r);
  c.require(rational_from_string(get<std::string>(row, "bound")) == bound, "bound value");
  c.require(chk.product > bound && get<bool>(row, "exceeds_bound"), "strict improvement");
}

}  // namespace

const std::vector<Anchor>& anchor_index() {
  static const std::vector<Anchor> index = {
      {"region-optimum",
       "For r >= 4 and k = ceil(r/e), the maximum of x_1 x_2 ... x_r over X_{r,k} is r!/r^r, "
       "attained only at x_i = i/r. X_{r,k'} lies inside X_{r,k} for k <= k', so the value "
       "persists for every k >= ceil(r/e)."},
      {"region-kkt",
       "sum log x_i is concave and X_{r,k} is a polytope, so a feasible point with nonnegative "
       "multipliers on tight constraints and zero stationarity residual is a global maximum."},
      {"counterexample-construction",
       "For 1 <= k < floor(r/e), the point x_i = i/r - i eps/r (i <= k), "
       "x_i = i/r + (r-i) eps/r (i > k) lies in X_{r,k} for small eps > 0 and its product "
       "exceeds r!/r^r."},
  };
  return index;
}

const Anchor* find_anchor(const std::string& key) {
  for (const auto& a : anchor_index())
    if (a.key == key) return &a;
  return nullptr;
}

Json region_row(const OptimizationReport& rep) {
  Json row;
  row["r"] = rep.r;
  row["k"] = rep.k;
  row["optimum"] = rep.value;
  row["bound"] = rep.bound;
  row["bound_exact"] = to_string(rep.bound_exact);
  row["relative_gap"] = (rep.value - rep.bound) / rep.bound;
  row["max_deviation"] = rep.deviation_from_uniform;
  row["kkt_residual"] = rep.kkt.residual;
  row["optimal"] = rep.kkt.optimal;
  row["status"] = status_name(rep.status);
  row["argmax"] = rep.argmax.x();
  Json active = Json::array();
  for (const auto& c : rep.kkt.active) active.push_back({c.i, c.j});
  row["active"] = active;
  row["multipliers"] = rep.kkt.multipliers;
  row["endpoint_multiplier"] = rep.kkt.endpoint_multiplier;
  row["claims_bound"] = rep.k >= ceil_r_over_e(rep.r);
  if (rep.exact) {
    row["exact"] = {{"uniform_feasible", rep.exact->feasible},
                    {"all_tent_tight", rep.exact->all_tent_tight},
                    {"product", to_string(rep.exact->product)},
                    {"product_equals_bound", rep.exact->product_equals_bound}};
  } else {
    row["exact"] = nullptr;
  }
  return row;
}

Json region_max_certificate(int r, int k, bool exact) {
  RegionSolveOptions opts;
  opts.exact = exact;
  const auto rep = maximize_product(r, k, opts);
  Json row = region_row(rep);
  Json cert;
  cert["kind"] = "region-max";
  const bool claims = row["claims_bound"].get<bool>();
  cert["claim"] = claims ? "max prod x_i over X_{r,k} equals r!/r^r"
                         : "max prod x_i over X_{r,k} is attained at argmax (KKT certified)";
  cert["paper_anchor"] = claims ? "region-optimum" : "region-kkt";
  cert["rows"] = Json::array({row});
  return cert;
}

Json theorem_table(int r_min, int r_max) {
  check_range(r_min, r_max);
  Json rows = Json::array();
  Json excluded = Json::array();
  for (int r = r_min; r <= r_max; ++r) {
    const int k = ceil_r_over_e(r);
    if (k > r / 2) {
      excluded.push_back({{"r", r},
                          {"note", "ceil(r/e) = " + std::to_string(k) + " exceeds floor(r/2) = " +
                                       std::to_string(r / 2) + ", so X_{r,k} is undefined"}});
      continue;
    }
    RegionSolveOptions opts;
    opts.exact = true;
    rows.push_back(region_row(maximize_product(r, k, opts)));
  }
  Json cert;
  cert["kind"] = "theorem-table";
  cert["claim"] = "for k = ceil(r/e), max prod x_i over X_{r,k} equals r!/r^r at x_i = i/r";
  cert["paper_anchor"] = "region-optimum";
  cert["rows"] = rows;
  cert["excluded"] = excluded;
  return cert;
}

Json counterexample_row(const CounterexampleResult& c, int r, int k) {
  Json row;
  row["r"] = r;
  row["k"] = k;
  row["eps"] = to_string(c.eps);
  row["x"] = rationals_to_json(c.exact_x);
  row["x_float"] = c.point.x();
  row["exact_feasible"] = c.exact_feasible;
  row["product"] = to_string(c.product);
  row["bound"] = to_string(c.bound);
  row["product_float"] = c.product.get_d();
  row["bound_float"] = c.bound.get_d();
  row["margin"] = Rational(c.product / c.bound - 1).get_d();
  row["exceeds_bound"] = c.exceeds_bound;
  return row;
}

Json counterexample_certificate(int r, int k, std::optional<Rational> eps) {
  Json cert;
  cert["kind"] = "counterexample";
  cert["claim"] = "the listed point lies in X_{r,k} and its product exceeds r!/r^r (exact)";
  cert["paper_anchor"] = "counterexample-construction";
  cert["rows"] = Json::array({counterexample_row(counterexample_point(r, k, eps), r, k)});
  return cert;
}

Json counterexample_table(int r_min, int r_max) {
  check_range(r_min, r_max);
  Json rows = Json::array();
  for (int r = r_min; r <= r_max; ++r)
    for (int k = 1; k < floor_r_over_e(r); ++k)
      rows.push_back(counterexample_row(counterexample_point(r, k), r, k));
  Json cert;
  cert["kind"] = "counterexample-table";
  cert["claim"] = "for 1 <= k < floor(r/e), each listed point lies in X_{r,k} with product above r!/r^r";
  cert["paper_anchor"] = "counterexample-construction";
  cert["rows"] = rows;
  return cert;
}

std::string theorem_table_csv(const Json& cert) {
  std::ostringstream out;
  out.precision(17);
  out << "r,k,optimum,bound,relative_gap,max_deviation,kkt_residual\n";
  for (const auto& row : cert.at("rows"))
    out << row.at("r").get<int>() << ',' << row.at("k").get<int>() << ','
        << row.at("optimum").get<double>() << ',' << row.at("bound").get<double>() << ','
        << row.at("relative_gap").get<double>() << ',' << row.at("max_deviation").get<double>()
        << ',' << row.at("kkt_residual").get<double>() << '\n';
  return out.str();
}

std::string counterexample_table_csv(const Json& cert) {
  std::ostringstream out;
  out.precision(17);
  out << "r,k,eps,exact_feasible,product,bound,margin\n";
  for (const auto& row : cert.at("rows"))
    out << row.at("r").get<int>() << ',' << row.at("k").get<int>() << ','
        << row.at("eps").get<std::string>() << ','
        << (row.at("exact_feasible").get<bool>() ? "true" : "false") << ','
        << row.at("product_float").get<double>() << ',' << row.at("bound_float").get<double>()
        << ',' << row.at("margin").get<double>() << '\n';
  return out.str();
}

VerifyResult verify_certificate(const Json& cert, double tol) {
  VerifyResult out;
  const auto kind = get<std::string>(cert, "kind");
  const auto anchor = get<std::string>(cert, "paper_anchor");
  if (!find_anchor(anchor)) {
    out.pass = false;
    out.failures.push_back("paper_anchor \"" + anchor + "\" is not in the citation index");
  }
  const Json& rows = cert.contains("rows") ? cert.at("rows") : Json();
  if (!rows.is_array()) throw std::invalid_argument("certificate: rows must be an array");
  const bool region = kind == "theorem-table" || kind == "region-max";
  const bool counter = kind == "counterexample-table" || kind == "counterexample";
  if (!region && !counter) throw std::invalid_argument("certificate: unknown kind \"" + kind + "\"");
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const Json& row = rows[t];
    RowChecker c{out, "row " + std::to_string(t) + " (r=" + std::to_string(get<int>(row, "r")) +
                          ", k=" + std::to_string(get<int>(row, "k")) + "): "};
    if (region)
      verify_region_row(row, tol, c);
    else
      verify_counterexample_row(row, c);
  }
  return out;
}

}  // namespace hyperturan
