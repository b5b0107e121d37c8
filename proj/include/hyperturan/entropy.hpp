#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hyperturan/core.hpp"
#include "hyperturan/hom.hpp"

namespace hyperturan {

/// Outcomes are integer tuples; scalar variables use 1-tuples.
using Outcome = std::vector<int>;

/// Finite-support law. Zero-probability outcomes are dropped on construction.
class DiscreteRV {
 public:
  explicit DiscreteRV(std::map<Outcome, double> law);

  static DiscreteRV point(const Outcome& o);
  static DiscreteRV uniform(const std::vector<Outcome>& outcomes);

  const std::map<Outcome, double>& law() const { return law_; }
  std::size_t support_size() const { return law_.size(); }
  double prob(const Outcome& o) const;

 private:
  std::map<Outcome, double> law_;
};

/// A DiscreteRV whose outcomes all have the same length.
class JointRV : public DiscreteRV {
 public:
  explicit JointRV(std::map<Outcome, double> law);
  explicit JointRV(const DiscreteRV& rv);

  int arity() const { return arity_; }
  /// Law of the coordinates listed in coords, in that order.
  JointRV marginal(const std::vector<int>& coords) const;

 private:
  int arity_ = 0;
};

/// Shannon entropy in bits.
double entropy(const DiscreteRV& x);

/// H(X_target | X_condition) by the double-sum definition.
double conditional_entropy(const JointRV& xy, const std::vector<int>& target,
                           const std::vector<int>& condition_on);
/// Conditions on condition_on; the target is every other coordinate.
double conditional_entropy(const JointRV& xy, const std::vector<int>& condition_on);

DiscreteRV mixture(const std::vector<DiscreteRV>& xs, const std::vector<double>& w);

struct MixtureWitness {
  std::vector<double> weights;
  DiscreteRV z = DiscreteRV::point({0});
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Weights proportional to 2^H(X_i). Throws if some outcome lies in more than
/// a of the supports.
MixtureWitness mixture_bound_witness(const std::vector<DiscreteRV>& xs, int a);

/// A random edge with uniform ordering: edge e is drawn with probability w[e]
/// (indexed like host.edges()) and its vertices are put in uniform order.
class EdgeDistribution {
 public:
  EdgeDistribution(Hypergraph host, std::vector<double> w);

  static EdgeDistribution uniform(const Hypergraph& host);

  const Hypergraph& host() const { return host_; }
  const std::vector<double>& weights() const { return w_; }
  /// Vertex marginal m_v = (1/r) sum_{e contains v} w_e.
  std::vector<double> vertex_marginal() const;
  /// W(S) = sum of w_e over edges e containing S, for every nonempty S inside
  /// some edge with W(S) > 0.
  std::map<Edge, double> subset_weights() const;
  /// The explicit law of (X_1, ..., X_r) over all r! orderings of each edge.
  JointRV ordered_law() const;

 private:
  Hypergraph host_;
  std::vector<double> w_;
};

/// Law of (X_{r-m+1}, ..., X_r) from subset weights: each ordering of S gets
/// (r-m)!/r! * W(S).
JointRV suffix_law(const EdgeDistribution& d, int m);

struct RatioSequence {
  /// x[i-1] = x_i = 2^(H(X_i | X_{i+1}, ..., X_r) - H(X_i)).
  std::vector<double> x;
  double marginal_entropy = 0.0;
  double joint_entropy = 0.0;

  double product() const;
};

/// Throws std::logic_error if 0 < x_1 <= ... <= x_r = 1 or the product identity
/// fails by more than 1e-9.
RatioSequence ratio_sequence(const EdgeDistribution& d);

/// 2^(H(X_1..X_r) - r H(X_1)) = 2^(log2 r! + H(w) - r H(m)).
double entropic_objective(const EdgeDistribution& d);

struct EntropicDensityResult {
  double value = 0.0;
  EdgeDistribution witness;
  /// b(H) from the Lagrangian, used to seed and cross-check.
  double blowup_density = 0.0;
  bool agrees_with_blowup = false;
};

EntropicDensityResult entropic_density(const Hypergraph& h, int restarts = 100,
                                       std::uint64_t seed = 42);

/// e_v for every vertex when F is a partial forest under order (listed from
/// smallest to largest), otherwise nullopt.
std::optional<std::vector<Edge>> forest_edges(const PartialHypergraph& f,
                                              const std::vector<Vertex>& order);

/// (f_1, ..., f_r) with f[s-1] = #{v : |e_v| = s}.
std::optional<std::vector<int>> forest_sequence(const PartialHypergraph& f,
                                                const std::vector<Vertex>& order);

struct TreeSample {
  /// Law of (Y_0, ..., Y_{n-1}) indexed by vertex of F.
  JointRV law{DiscreteRV::point({0})};
  double predicted_entropy = 0.0;
  double realized_entropy = 0.0;
  bool entropy_matches = false;
  /// Every face e of F has (Y_v)_{v in e} distributed like (X_{r-|e|+1..r}).
  bool marginals_match = false;
};

/// Samples Y_v along the order from the law of X_{r-|e_v|+1} given the
/// already placed vertices of e_v. Throws if F is not a partial forest.
TreeSample tree_sampler_entropy(const PartialHypergraph& f, const std::vector<Vertex>& order,
                                const EdgeDistribution& d);

struct RatioConstraintReport {
  int r = 0;
  int k = 0;
  int sequences = 0;
  int inside = 0;
  double worst_slack = 0.0;
  std::vector<double> worst_point;

  bool all_inside() const { return inside == sequences; }
};

/// Checks ratio sequences of trials random edge distributions on h (plus the
/// entropic-density witness when include_witness) against X_{r,k}. Requires h
/// to be hom-free for the tent family F_{r,k}.
RatioConstraintReport verify_ratio_constraints(const Hypergraph& h, int k, int trials,
                                               const SearchBudget& budget = {},
                                               std::uint64_t seed = 42,
                                               bool include_witness = true);

/// Dirichlet(alpha) edge weights.
EdgeDistribution random_edge_distribution(const Hypergraph& h, std::uint64_t seed,
                                          double alpha = 1.0);

}  // namespace hyperturan
