#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperturan {

using Vertex = int;
/// Sorted list of distinct vertices.
using Edge = std::vector<Vertex>;

/// An r-uniform hypergraph on vertices 0..n-1. Edges are stored sorted,
/// in lexicographic order, so two hypergraphs with the same labelled edge set
/// compare equal. Repeated edges are rejected.
class Hypergraph {
 public:
  Hypergraph(int r, int n, std::vector<Edge> edges);

  int r() const { return r_; }
  int n() const { return n_; }
  const std::vector<Edge>& edges() const& { return edges_; }
  std::vector<Edge> edges() && { return std::move(edges_); }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_edge(const Edge& sorted_edge) const;
  /// Indices of edges containing v.
  const std::vector<int>& incident(Vertex v) const { return incidence_[v]; }
  int degree(Vertex v) const { return static_cast<int>(incidence_[v].size()); }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.r_ == b.r_ && a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int r_;
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incidence_;
};

/// A simplicial complex given by its maximal edges (each of size <= r).
/// The downward closure is never materialized.
class PartialHypergraph {
 public:
  PartialHypergraph(int r, int n, std::vector<Edge> maximal_edges);

  int r() const { return r_; }
  int n() const { return n_; }
  const std::vector<Edge>& maximal_edges() const& { return maximal_; }
  std::vector<Edge> maximal_edges() && { return std::move(maximal_); }

  /// True iff s (sorted) is a face of the complex, i.e. contained in some
  /// maximal edge. The empty set is not considered a face.
  bool is_face(const Edge& s) const;

 private:
  int r_;
  int n_;
  std::vector<Edge> maximal_;
};

/// A partition lambda_1 >= ... >= lambda_m >= 1 of r with lambda_1 < r.
class TentSpec {
 public:
  explicit TentSpec(std::vector<int> parts);

  int r() const { return r_; }
  const std::vector<int>& parts() const { return parts_; }

 private:
  std::vector<int> parts_;
  int r_;
};

/// Nonempty list of hypergraphs sharing one uniformity.
class Family {
 public:
  explicit Family(std::vector<Hypergraph> members);

  int r() const { return members_.front().r(); }
  const std::vector<Hypergraph>& members() const& { return members_; }
  std::vector<Hypergraph> members() && { return std::move(members_); }
  std::size_t size() const { return members_.size(); }

 private:
  std::vector<Hypergraph> members_;
};

// Constructions.

/// The (r-i, i)-tent on 2r-1 vertices: a base edge {0..r-1} plus two edges
/// meeting it in i and r-i vertices and each other in the single apex 2r-2.
Hypergraph make_tent(int r, int i);

/// The lambda-tent. Base edge e0 = {0..r-1} is cut into consecutive blocks of
/// sizes lambda_1..lambda_m; edge e_t is block t plus the apex r plus fresh
/// vertices.
Hypergraph make_general_tent(const TentSpec& spec);

/// The partial tent on r+1 vertices with maximal edges {0..r-1}, {0..i-1, r}
/// and {i..r}.
PartialHypergraph make_partial_tent(int r, int i);

/// Pads every maximal edge to size r with fresh vertices numbered from n
/// upward, in the order the maximal edges are stored.
Hypergraph extend(const PartialHypergraph& f);

/// Balanced complete r-partite r-graph T^r(n); vertex v lies in part v mod r.
Hypergraph make_turan_graph(int r, int n);

/// {Delta_(r-1,1), ..., Delta_(r-k,k)}.
Family tent_family(int r, int k);

/// Replaces vertex v by sizes[v] clones (numbered consecutively, vertex 0's
/// clones first). An r-set of clones is an edge iff it projects bijectively
/// onto an edge of h.
Hypergraph blowup(const Hypergraph& h, const std::vector<int>& sizes);

Hypergraph single_edge(int r);

// Predicates.

bool is_two_covered(const Hypergraph& h);
bool is_L_intersecting(const Hypergraph& h, const std::set<int>& allowed);

/// A subset of B u C, (B n C) \ A nonempty, |A n B| >= r - k.
bool is_T_rk_triple(const Edge& a, const Edge& b, const Edge& c, int r, int k);

/// True iff some ordered triple of distinct edges of h satisfies
/// is_T_rk_triple, i.e. h contains a member of the family T_{r,k}.
bool contains_T_rk(const Hypergraph& h, int k);

/// Backtracking isomorphism test with degree pruning.
bool are_isomorphic(const Hypergraph& a, const Hypergraph& b);

/// Relabels vertices: vertex v becomes perm[v].
Hypergraph relabel(const Hypergraph& h, const std::vector<Vertex>& perm);

/// Pairwise intersection sizes |e_a n e_b| for a < b, in (a, b) order.
std::vector<int> intersection_profile(const Hypergraph& h);

}  // namespace hyperturan
