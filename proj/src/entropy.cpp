#include "hyperturan/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "hyperturan/lagrangian.hpp"
#include "hyperturan/parallel.hpp"
#include "hyperturan/region.hpp"

namespace hyperturan {

namespace {

constexpr double kSumTol = 1e-12;

double plogp_sum(const std::map<Outcome, double>& law) {
  double h = 0.0;
  for (const auto& [o, p] : law) h -= p * std::log2(p);
  return h;
}

double log2_factorial(int n) { return std::lgamma(n + 1.0) / std::log(2.0); }

double falling_inverse(int r, int m) {
  // (r-m)!/r!
  double out = 1.0;
  for (int t = 0; t < m; ++t) out /= (r - t);
  return out;
}

std::vector<double> normalized(std::vector<double> w) {
  double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= s;
  return w;
}

double phi_bits(int r, const std::vector<Edge>& edges, int n, const std::vector<double>& w) {
  std::vector<double> m(n, 0.0);
  double hw = 0.0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (w[e] <= 0.0) continue;
    hw -= w[e] * std::log2(w[e]);
    for (int v : edges[e]) m[v] += w[e] / r;
  }
  double hm = 0.0;
  for (double p : m)
    if (p > 0.0) hm -= p * std::log2(p);
  return log2_factorial(r) + hw - r * hm;
}

// Damped exponentiated-gradient ascent: w_e <- w_e^(1-eta) prod_{v in e} m_v^eta.
std::vector<double> entropic_ascent(const Hypergraph& h, std::vector<double> w) {
  const int r = h.r();
  const auto& edges = h.edges();
  double cur = phi_bits(r, edges, h.n(), w);
  std::vector<double> history{cur};
  for (int it = 0; it < 5000; ++it) {
    std::vector<double> m(h.n(), 0.0);
    for (std::size_t e = 0; e < edges.size(); ++e)
      for (int v : edges[e]) m[v] += w[e] / r;
    double eta = 1.0;
    bool moved = false;
    while (eta > 1e-4) {
      std::vector<double> cand(edges.size());
      for (std::size_t e = 0; e < edges.size(); ++e) {
        double prod = 1.0;
        for (int v : edges[e]) prod *= m[v];
        cand[e] = (w[e] > 0.0 || eta == 1.0) ? std::pow(w[e], 1.0 - eta) * std::pow(prod, eta) : 0.0;
      }
      double s = std::accumulate(cand.begin(), cand.end(), 0.0);
      if (s > 0.0) {
        for (double& v : cand) v /= s;
        double val = phi_bits(r, edges, h.n(), cand);
        if (val >= cur) {
          w = std::move(cand);
          cur = val;
          moved = true;
          break;
        }
      }
      eta *= 0.5;
    }
    history.push_back(cur);
    if (!moved) break;
    if (history.size() > 50 && cur - history[history.size() - 51] < 1e-14) break;
  }
  return w;
}

}  // namespace

DiscreteRV::DiscreteRV(std::map<Outcome, double> law) {
  double s = 0.0;
  for (const auto& [o, p] : law) {
    if (!std::isfinite(p) || p < 0.0)
      throw std::invalid_argument("DiscreteRV: probabilities must be nonnegative");
    s += p;
  }
  if (std::fabs(s - 1.0) > kSumTol)
    throw std::invalid_argument("DiscreteRV: probabilities must sum to one");
  for (auto& [o, p] : law)
    if (p > 0.0) law_.emplace(o, p);
}

DiscreteRV DiscreteRV::point(const Outcome& o) { return DiscreteRV({{o, 1.0}}); }

DiscreteRV DiscreteRV::uniform(const std::vector<Outcome>& outcomes) {
  std::set<Outcome> distinct(outcomes.begin(), outcomes.end());
  if (distinct.empty() || distinct.size() != outcomes.size())
    throw std::invalid_argument("DiscreteRV::uniform: need distinct outcomes");
  std::map<Outcome, double> law;
  for (const auto& o : distinct) law[o] = 1.0 / distinct.size();
  return DiscreteRV(std::move(law));
}

double DiscreteRV::prob(const Outcome& o) const {
  auto it = law_.find(o);
  return it == law_.end() ? 0.0 : it->second;
}

JointRV::JointRV(std::map<Outcome, double> law) : JointRV(DiscreteRV(std::move(law))) {}

JointRV::JointRV(const DiscreteRV& rv) : DiscreteRV(rv) {
  if (law().empty()) throw std::invalid_argument("JointRV: empty support");
  arity_ = static_cast<int>(law().begin()->first.size());
  for (const auto& [o, p] : law())
    if (static_cast<int>(o.size()) != arity_)
      throw std::invalid_argument("JointRV: outcomes must share one arity");
}

JointRV JointRV::marginal(const std::vector<int>& coords) const {
  for (int c : coords)
    if (c < 0 || c >= arity_) throw std::invalid_argument("JointRV::marginal: bad coordinate");
  std::map<Outcome, double> out;
  Outcome key(coords.size());
  for (const auto& [o, p] : law()) {
    for (std::size_t t = 0; t < coords.size(); ++t) key[t] = o[coords[t]];
    out[key] += p;
  }
  // Re-summing can drift by a few ulps; renormalize before validation.
  double s = 0.0;
  for (const auto& [o, p] : out) s += p;
  for (auto& [o, p] : out) p /= s;
  return JointRV(std::move(out));
}

double entropy(const DiscreteRV& x) { return plogp_sum(x.law()); }

double conditional_entropy(const JointRV& xy, const std::vector<int>& target,
                           const std::vector<int>& condition_on) {
  std::vector<int> both = condition_on;
  both.insert(both.end(), target.begin(), target.end());
  auto joint = xy.marginal(both);
  auto cond = xy.marginal(condition_on);
  const std::size_t nc = condition_on.size();
  double h = 0.0;
  for (const auto& [o, p] : joint.law()) {
    Outcome y(o.begin(), o.begin() + static_cast<long>(nc));
    h -= p * std::log2(p / cond.prob(y));
  }
  return h;
}

double conditional_entropy(const JointRV& xy, const std::vector<int>& condition_on) {
  std::vector<int> target;
  for (int c = 0; c < xy.arity(); ++c)
    if (std::find(condition_on.begin(), condition_on.end(), c) == condition_on.end())
      target.push_back(c);
  return conditional_entropy(xy, target, condition_on);
}

DiscreteRV mixture(const std::vector<DiscreteRV>& xs, const std::vector<double>& w) {
  if (xs.empty() || xs.size() != w.size())
    throw std::invalid_argument("mixture: need one weight per variable");
  double s = 0.0;
  for (double v : w) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("mixture: negative weight");
    s += v;
  }
  if (std::fabs(s - 1.0) > kSumTol) throw std::invalid_argument("mixture: weights must sum to one");
  std::map<Outcome, double> law;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (const auto& [o, p] : xs[i].law()) law[o] += w[i] * p;
  double total = 0.0;
  for (const auto& [o, p] : law) total += p;
  for (auto& [o, p] : law) p /= total;
  return DiscreteRV(std::move(law));
}

MixtureWitness mixture_bound_witness(const std::vector<DiscreteRV>& xs, int a) {
  if (xs.empty()) throw std::invalid_argument("mixture_bound_witness: no variables");
  if (a < 1) throw std::invalid_argument("mixture_bound_witness: a must be positive");
  std::map<Outcome, int> multiplicity;
  for (const auto& x : xs)
    for (const auto& [o, p] : x.law())
      if (++multiplicity[o] > a)
        throw std::invalid_argument("mixture_bound_witness: an outcome lies in more than a supports");
  MixtureWitness out;
  for (const auto& x : xs) out.weights.push_back(std::exp2(entropy(x)));
  out.lhs = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
  for (double& v : out.weights) v /= out.lhs;
  out.z = mixture(xs, out.weights);
  out.rhs = a * std::exp2(entropy(out.z));
  return out;
}

EdgeDistribution::EdgeDistribution(Hypergraph host, std::vector<double> w)
    : host_(std::move(host)), w_(std::move(w)) {
  if (host_.edge_count() == 0) throw std::invalid_argument("EdgeDistribution: host has no edges");
  if (w_.size() != host_.edge_count())
    throw std::invalid_argument("EdgeDistribution: need one weight per edge");
  double s = 0.0;
  for (double v : w_) {
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("EdgeDistribution: weights must be nonnegative");
    s += v;
  }
  if (std::fabs(s - 1.0) > kSumTol)
    throw std::invalid_argument("EdgeDistribution: weights must sum to one");
}

EdgeDistribution EdgeDistribution::uniform(const Hypergraph& host) {
  return EdgeDistribution(host,
                          std::vector<double>(host.edge_count(), 1.0 / host.edge_count()));
}

std::vector<double> EdgeDistribution::vertex_marginal() const {
  std::vector<double> m(host_.n(), 0.0);
  for (std::size_t e = 0; e < w_.size(); ++e)
    for (int v : host_.edges()[e]) m[v] += w_[e] / host_.r();
  return m;
}

std::map<Edge, double> EdgeDistribution::subset_weights() const {
  const int r = host_.r();
  std::map<Edge, double> out;
  for (std::size_t e = 0; e < w_.size(); ++e) {
    if (w_[e] <= 0.0) continue;
    const Edge& edge = host_.edges()[e];
    for (unsigned mask = 1; mask < (1u << r); ++mask) {
      Edge s;
      for (int t = 0; t < r; ++t)
        if (mask >> t & 1u) s.push_back(edge[t]);
      out[s] += w_[e];
    }
  }
  return out;
}

JointRV EdgeDistribution::ordered_law() const {
  std::map<Outcome, double> law;
  const double per = falling_inverse(host_.r(), host_.r());
  for (std::size_t e = 0; e < w_.size(); ++e) {
    if (w_[e] <= 0.0) continue;
    Outcome perm = host_.edges()[e];
    do {
      law[perm] += w_[e] * per;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return JointRV(std::move(law));
}

JointRV suffix_law(const EdgeDistribution& d, int m) {
  const int r = d.host().r();
  if (m < 1 || m > r) throw std::invalid_argument("suffix_law: m must lie in [1, r]");
  const double coeff = falling_inverse(r, m);
  std::map<Outcome, double> law;
  for (const auto& [s, wt] : d.subset_weights()) {
    if (static_cast<int>(s.size()) != m) continue;
    Outcome perm = s;
    do {
      law[perm] = coeff * wt;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  double total = 0.0;
  for (const auto& [o, p] : law) total += p;
  for (auto& [o, p] : law) p /= total;
  return JointRV(std::move(law));
}

double RatioSequence::product() const {
  double p = 1.0;
  for (double v : x) p *= v;
  return p;
}

RatioSequence ratio_sequence(const EdgeDistribution& d) {
  const int r = d.host().r();
  // suffix[m] = H(X_{r-m+1}, ..., X_r); by symmetry only |S| matters.
  std::vector<double> suffix(r + 1, 0.0);
  std::vector<double> perms(r + 1, 1.0);
  for (int m = 1; m <= r; ++m) perms[m] = perms[m - 1] * m;
  for (const auto& [s, wt] : d.subset_weights()) {
    const int m = static_cast<int>(s.size());
    double p = falling_inverse(r, m) * wt;
    suffix[m] -= perms[m] * p * std::log2(p);
  }
  RatioSequence out;
  out.marginal_entropy = suffix[1];
  out.joint_entropy = suffix[r];
  for (int i = 1; i <= r; ++i)
    out.x.push_back(std::exp2(suffix[r - i + 1] - suffix[r - i] - suffix[1]));
  if (std::fabs(out.x[r - 1] - 1.0) > 1e-12)
    throw std::logic_error("ratio_sequence: x_r differs from 1");
  out.x[r - 1] = 1.0;
  if (!(out.x[0] > 0.0)) throw std::logic_error("ratio_sequence: x_1 is not positive");
  for (int i = 1; i < r; ++i)
    if (out.x[i] < out.x[i - 1] - 1e-9) throw std::logic_error("ratio_sequence: not monotone");
  double expected = std::exp2(out.joint_entropy - r * out.marginal_entropy);
  if (std::fabs(out.product() - expected) > 1e-9)
    throw std::logic_error("ratio_sequence: product identity fails");
  return out;
}

double entropic_objective(const EdgeDistribution& d) {
  return std::exp2(phi_bits(d.host().r(), d.host().edges(), d.host().n(), d.weights()));
}

EdgeDistribution random_edge_distribution(const Hypergraph& h, std::uint64_t seed, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("random_edge_distribution: alpha must be positive");
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gamma(alpha, 1.0);
  std::vector<double> w(h.edge_count());
  double s = 0.0;
  while (!(s > 0.0)) {
    for (double& v : w) v = gamma(rng);
    s = std::accumulate(w.begin(), w.end(), 0.0);
  }
  return EdgeDistribution(h, normalized(std::move(w)));
}

EntropicDensityResult entropic_density(const Hypergraph& h, int restarts, std::uint64_t seed) {
  if (h.edge_count() == 0) throw std::invalid_argument("entropic_density: host has no edges");
  if (restarts < 0) throw std::invalid_argument("entropic_density: restarts must be nonnegative");
  const auto lag = lagrangian(h);
  std::vector<std::vector<double>> starts;
  {
    std::vector<double> w;
    for (const auto& e : h.edges()) {
      double p = 1.0;
      for (int v : e) p *= lag.witness[v];
      w.push_back(p);
    }
    if (std::accumulate(w.begin(), w.end(), 0.0) > 0.0) starts.push_back(normalized(w));
  }
  for (int t = 0; t < restarts; ++t)
    starts.push_back(random_edge_distribution(h, seed + static_cast<std::uint64_t>(t)).weights());

  std::vector<std::vector<double>> finals(starts.size());
  std::vector<double> values(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    finals[i] = entropic_ascent(h, starts[i]);
    values[i] = std::exp2(phi_bits(h.r(), h.edges(), h.n(), finals[i]));
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < finals.size(); ++i)
    if (values[i] > values[best]) best = i;
  EntropicDensityResult out{values[best], EdgeDistribution(h, normalized(finals[best])),
                            lag.blowup_density, false};
  out.agrees_with_blowup = std::fabs(out.value - out.blowup_density) < 1e-5;
  return out;
}

std::optional<std::vector<Edge>> forest_edges(const PartialHypergraph& f,
                                              const std::vector<Vertex>& order) {
  const int n = f.n();
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("forest_edges: order must list every vertex once");
  std::vector<int> pos(n, -1);
  for (int t = 0; t < n; ++t) {
    int v = order[t];
    if (v < 0 || v >= n || pos[v] != -1)
      throw std::invalid_argument("forest_edges: order must list every vertex once");
    pos[v] = t;
  }
  std::vector<Edge> out(n);
  for (int v = 0; v < n; ++v) {
    std::set<Edge> cands;
    for (const auto& e : f.maximal_edges()) {
      if (std::find(e.begin(), e.end(), v) == e.end()) continue;
      Edge prefix;
      for (int u : e)
        if (pos[u] <= pos[v]) prefix.push_back(u);
      cands.insert(prefix);
    }
    std::vector<Edge> maximal;
    for (const auto& c : cands) {
      bool dominated = false;
      for (const auto& d : cands)
        if (d != c && std::includes(d.begin(), d.end(), c.begin(), c.end())) dominated = true;
      if (!dominated) maximal.push_back(c);
    }
    if (maximal.size() != 1) return std::nullopt;
    out[v] = maximal.front();
  }
  return out;
}

std::optional<std::vector<int>> forest_sequence(const PartialHypergraph& f,
                                                const std::vector<Vertex>& order) {
  auto ev = forest_edges(f, order);
  if (!ev) return std::nullopt;
  std::vector<int> seq(f.r(), 0);
  for (const auto& e : *ev) ++seq[e.size() - 1];
  return seq;
}

TreeSample tree_sampler_entropy(const PartialHypergraph& f, const std::vector<Vertex>& order,
                                const EdgeDistribution& d) {
  const int r = f.r();
  if (d.host().r() != r) throw std::invalid_argument("tree_sampler_entropy: uniformity mismatch");
  auto ev = forest_edges(f, order);
  if (!ev) throw std::invalid_argument("tree_sampler_entropy: not a partial forest under order");
  const auto fseq = *forest_sequence(f, order);
  const auto w = d.subset_weights();
  auto weight_of = [&](const Edge& s) {
    if (s.empty()) return 1.0;
    auto it = w.find(s);
    return it == w.end() ? 0.0 : it->second;
  };
  const int n = f.n();
  const int hn = d.host().n();

  std::map<Outcome, double> law;
  Outcome y(n, -1);
  auto place = [&](auto&& self, int t, double p) -> void {
    if (t == n) {
      law[y] += p;
      return;
    }
    const int v = order[t];
    Edge img;
    for (int u : (*ev)[v])
      if (u != v) img.push_back(y[u]);
    std::sort(img.begin(), img.end());
    const double base = weight_of(img);
    if (!(base > 0.0)) throw std::runtime_error("tree_sampler_entropy: missing conditional support");
    const double denom = (r - static_cast<int>(img.size())) * base;
    for (int z = 0; z < hn; ++z) {
      if (std::binary_search(img.begin(), img.end(), z)) continue;
      Edge ext = img;
      ext.insert(std::upper_bound(ext.begin(), ext.end(), z), z);
      double q = weight_of(ext);
      if (q <= 0.0) continue;
      y[v] = z;
      self(self, t + 1, p * q / denom);
    }
    y[v] = -1;
  };
  place(place, 0, 1.0);
  double total = 0.0;
  for (const auto& [o, p] : law) total += p;
  for (auto& [o, p] : law) p /= total;

  TreeSample out;
  out.law = JointRV(std::move(law));
  const auto rs = ratio_sequence(d);
  out.predicted_entropy = n * rs.marginal_entropy;
  for (int i = 1; i <= r; ++i) out.predicted_entropy += fseq[r - i] * std::log2(rs.x[i - 1]);
  out.realized_entropy = entropy(out.law);
  out.entropy_matches = std::fabs(out.realized_entropy - out.predicted_entropy) <= 1e-9;

  std::vector<int> pos(n);
  for (int t = 0; t < n; ++t) pos[order[t]] = t;
  std::set<Edge> faces;
  for (const auto& e : f.maximal_edges())
    for (unsigned mask = 1; mask < (1u << e.size()); ++mask) {
      Edge s;
      for (std::size_t t = 0; t < e.size(); ++t)
        if (mask >> t & 1u) s.push_back(e[t]);
      faces.insert(s);
    }
  out.marginals_match = true;
  for (const auto& face : faces) {
    std::vector<int> coords = face;
    std::sort(coords.begin(), coords.end(), [&](int a, int b) { return pos[a] < pos[b]; });
    auto got = out.law.marginal(coords);
    auto want = suffix_law(d, static_cast<int>(face.size()));
    if (got.support_size() != want.support_size()) {
      out.marginals_match = false;
      break;
    }
    for (const auto& [o, p] : want.law())
      if (std::fabs(got.prob(o) - p) > 1e-12) out.marginals_match = false;
    if (!out.marginals_match) break;
  }
  return out;
}

RatioConstraintReport verify_ratio_constraints(const Hypergraph& h, int k, int trials,
                                               const SearchBudget& budget, std::uint64_t seed,
                                               bool include_witness) {
  const int r = h.r();
  if (trials < 0) throw std::invalid_argument("verify_ratio_constraints: trials must be nonnegative");
  const Family family = tent_family(r, k);
  if (!is_hom_free(h, family, budget))
    throw std::invalid_argument("verify_ratio_constraints: host is not hom-free for the tent family");
  RatioConstraintReport rep;
  rep.r = r;
  rep.k = k;
  rep.worst_slack = std::numeric_limits<double>::infinity();
  auto consider = [&](const EdgeDistribution& d) {
    const auto rs = ratio_sequence(d);
    const auto fr = check_feasible(rs.x, r, k, kFeasibilityTol);
    ++rep.sequences;
    if (fr.feasible) ++rep.inside;
    double slack = fr.worst_tent_slack;
    for (const auto& v : fr.violations) slack = std::min(slack, v.slack);
    if (slack < rep.worst_slack) {
      rep.worst_slack = slack;
      rep.worst_point = rs.x;
    }
  };
  for (int t = 0; t < trials; ++t)
    consider(random_edge_distribution(h, seed + static_cast<std::uint64_t>(t),
                                      t % 2 == 0 ? 1.0 : 0.25));
  if (include_witness) consider(entropic_density(h, 100, seed).witness);
  return rep;
}

}  // namespace hyperturan
