#include "hyperturan/core.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace hyperturan {

namespace {

std::string edge_str(const Edge& e) {
  std::string s = "{";
  for (std::size_t t = 0; t < e.size(); ++t) {
    if (t) s += ",";
    s += std::to_string(e[t]);
  }
  return s + "}";
}

bool is_subset(const Edge& small, const Edge& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::size_t intersection_size(const Edge& a, const Edge& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

void check_range(int r, int i, const char* what) {
  if (r < 2) throw std::invalid_argument(std::string(what) + ": r must be >= 2");
  if (i < 1 || i > r / 2)
    throw std::invalid_argument(std::string(what) + ": index must lie in [1, floor(r/2)]");
}

}  // namespace

Hypergraph::Hypergraph(int r, int n, std::vector<Edge> edges) : r_(r), n_(n) {
  if (r < 1) throw std::invalid_argument("Hypergraph: uniformity must be positive");
  if (n < 0) throw std::invalid_argument("Hypergraph: negative vertex count");
  for (auto& e : edges) {
    std::sort(e.begin(), e.end());
    if (static_cast<int>(e.size()) != r)
      throw std::invalid_argument("Hypergraph: edge " + edge_str(e) + " does not have r vertices");
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw std::invalid_argument("Hypergraph: edge " + edge_str(e) + " repeats a vertex");
    if (e.front() < 0 || e.back() >= n)
      throw std::invalid_argument("Hypergraph: edge " + edge_str(e) + " leaves [0, n)");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("Hypergraph: duplicate edge");
  edges_ = std::move(edges);
  incidence_.assign(n_, {});
  for (std::size_t t = 0; t < edges_.size(); ++t)
    for (Vertex v : edges_[t]) incidence_[v].push_back(static_cast<int>(t));
}

bool Hypergraph::has_edge(const Edge& sorted_edge) const {
  return std::binary_search(edges_.begin(), edges_.end(), sorted_edge);
}

PartialHypergraph::PartialHypergraph(int r, int n, std::vector<Edge> maximal_edges)
    : r_(r), n_(n) {
  if (r < 1) throw std::invalid_argument("PartialHypergraph: r must be positive");
  for (auto& e : maximal_edges) {
    std::sort(e.begin(), e.end());
    if (e.empty() || static_cast<int>(e.size()) > r)
      throw std::invalid_argument("PartialHypergraph: maximal edge size must lie in [1, r]");
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw std::invalid_argument("PartialHypergraph: repeated vertex in " + edge_str(e));
    if (e.front() < 0 || e.back() >= n)
      throw std::invalid_argument("PartialHypergraph: edge " + edge_str(e) + " leaves [0, n)");
  }
  for (std::size_t a = 0; a < maximal_edges.size(); ++a)
    for (std::size_t b = 0; b < maximal_edges.size(); ++b)
      if (a != b && is_subset(maximal_edges[a], maximal_edges[b]))
        throw std::invalid_argument("PartialHypergraph: maximal edges must form an antichain");
  maximal_ = std::move(maximal_edges);
}

bool PartialHypergraph::is_face(const Edge& s) const {
  if (s.empty()) return false;
  return std::any_of(maximal_.begin(), maximal_.end(),
                     [&](const Edge& m) { return is_subset(s, m); });
}

TentSpec::TentSpec(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.size() < 2) throw std::invalid_argument("TentSpec: need at least two parts");
  for (std::size_t t = 0; t < parts_.size(); ++t) {
    if (parts_[t] < 1) throw std::invalid_argument("TentSpec: parts must be positive");
    if (t && parts_[t] > parts_[t - 1])
      throw std::invalid_argument("TentSpec: parts must be weakly decreasing");
  }
  r_ = std::accumulate(parts_.begin(), parts_.end(), 0);
  if (parts_.front() >= r_) throw std::invalid_argument("TentSpec: largest part must be < r");
}

Family::Family(std::vector<Hypergraph> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("Family: must be nonempty");
  for (const auto& m : members_)
    if (m.r() != members_.front().r())
      throw std::invalid_argument("Family: members must share uniformity");
}

Hypergraph make_tent(int r, int i) {
  check_range(r, i, "make_tent");
  Edge base(r);
  std::iota(base.begin(), base.end(), 0);
  Edge left;
  for (int v = 0; v < i; ++v) left.push_back(v);
  for (int v = r; v <= 2 * r - i - 2; ++v) left.push_back(v);
  left.push_back(2 * r - 2);
  Edge right;
  for (int v = i; v < r; ++v) right.push_back(v);
  for (int v = 2 * r - i - 1; v <= 2 * r - 2; ++v) right.push_back(v);
  return Hypergraph(r, 2 * r - 1, {base, left, right});
}

Hypergraph make_general_tent(const TentSpec& spec) {
  const int r = spec.r();
  Edge base(r);
  std::iota(base.begin(), base.end(), 0);
  const Vertex apex = r;
  Vertex next = r + 1;
  Vertex block_start = 0;
  std::vector<Edge> edges{base};
  for (int part : spec.parts()) {
    Edge e;
    for (int t = 0; t < part; ++t) e.push_back(block_start + t);
    block_start += part;
    e.push_back(apex);
    for (int t = 0; t < r - part - 1; ++t) e.push_back(next++);
    edges.push_back(std::move(e));
  }
  return Hypergraph(r, next, std::move(edges));
}

PartialHypergraph make_partial_tent(int r, int i) {
  check_range(r, i, "make_partial_tent");
  Edge base(r);
  std::iota(base.begin(), base.end(), 0);
  Edge small(i);
  std::iota(small.begin(), small.end(), 0);
  small.push_back(r);
  Edge large;
  for (int v = i; v <= r; ++v) large.push_back(v);
  return PartialHypergraph(r, r + 1, {base, small, large});
}

Hypergraph extend(const PartialHypergraph& f) {
  Vertex next = f.n();
  std::vector<Edge> edges;
  for (const Edge& m : f.maximal_edges()) {
    Edge e = m;
    while (static_cast<int>(e.size()) < f.r()) e.push_back(next++);
    edges.push_back(std::move(e));
  }
  return Hypergraph(f.r(), next, std::move(edges));
}

Hypergraph make_turan_graph(int r, int n) {
  if (r < 1 || n < r) throw std::invalid_argument("make_turan_graph: need n >= r >= 1");
  std::vector<std::vector<Vertex>> parts(r);
  for (Vertex v = 0; v < n; ++v) parts[v % r].push_back(v);
  std::vector<Edge> edges;
  Edge current;
  std::function<void(int)> rec = [&](int p) {
    if (p == r) {
      edges.push_back(current);
      return;
    }
    for (Vertex v : parts[p]) {
      current.push_back(v);
      rec(p + 1);
      current.pop_back();
    }
  };
  rec(0);
  return Hypergraph(r, n, std::move(edges));
}

Family tent_family(int r, int k) {
  if (r < 2 || k < 1 || k > r / 2)
    throw std::invalid_argument("tent_family: need 1 <= k <= floor(r/2)");
  std::vector<Hypergraph> members;
  for (int i = 1; i <= k; ++i) members.push_back(make_tent(r, i));
  return Family(std::move(members));
}

Hypergraph blowup(const Hypergraph& h, const std::vector<int>& sizes) {
  if (static_cast<int>(sizes.size()) != h.n())
    throw std::invalid_argument("blowup: sizes must have one entry per vertex");
  std::vector<Vertex> offset(h.n() + 1, 0);
  for (int v = 0; v < h.n(); ++v) {
    if (sizes[v] < 1) throw std::invalid_argument("blowup: sizes must be positive");
    offset[v + 1] = offset[v] + sizes[v];
  }
  std::vector<Edge> edges;
  Edge current;
  for (const Edge& e : h.edges()) {
    std::function<void(std::size_t)> rec = [&](std::size_t t) {
      if (t == e.size()) {
        edges.push_back(current);
        return;
      }
      for (Vertex c = offset[e[t]]; c < offset[e[t] + 1]; ++c) {
        current.push_back(c);
        rec(t + 1);
        current.pop_back();
      }
    };
    rec(0);
  }
  return Hypergraph(h.r(), offset.back(), std::move(edges));
}

Hypergraph single_edge(int r) {
  Edge e(r);
  std::iota(e.begin(), e.end(), 0);
  return Hypergraph(r, r, {e});
}

bool is_two_covered(const Hypergraph& h) {
  std::vector<std::vector<char>> covered(h.n(), std::vector<char>(h.n(), 0));
  for (const Edge& e : h.edges())
    for (Vertex a : e)
      for (Vertex b : e) covered[a][b] = 1;
  for (Vertex a = 0; a < h.n(); ++a)
    for (Vertex b = a + 1; b < h.n(); ++b)
      if (!covered[a][b]) return false;
  return true;
}

bool is_L_intersecting(const Hypergraph& h, const std::set<int>& allowed) {
  const auto& es = h.edges();
  for (std::size_t a = 0; a < es.size(); ++a)
    for (std::size_t b = a + 1; b < es.size(); ++b)
      if (!allowed.count(static_cast<int>(intersection_size(es[a], es[b])))) return false;
  return true;
}

bool is_T_rk_triple(const Edge& a, const Edge& b, const Edge& c, int r, int k) {
  if (static_cast<int>(a.size()) != r || static_cast<int>(b.size()) != r ||
      static_cast<int>(c.size()) != r)
    throw std::invalid_argument("is_T_rk_triple: edges must have r vertices");
  Edge bc;
  std::set_union(b.begin(), b.end(), c.begin(), c.end(), std::back_inserter(bc));
  if (!is_subset(a, bc)) return false;
  Edge b_and_c;
  std::set_intersection(b.begin(), b.end(), c.begin(), c.end(), std::back_inserter(b_and_c));
  bool outside_a = std::any_of(b_and_c.begin(), b_and_c.end(), [&](Vertex v) {
    return !std::binary_search(a.begin(), a.end(), v);
  });
  if (!outside_a) return false;
  return static_cast<int>(intersection_size(a, b)) >= r - k;
}

bool contains_T_rk(const Hypergraph& h, int k) {
  const auto& es = h.edges();
  const std::size_t m = es.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (b == a) continue;
      if (static_cast<int>(intersection_size(es[a], es[b])) < h.r() - k) continue;
      for (std::size_t c = 0; c < m; ++c) {
        if (c == a || c == b) continue;
        if (is_T_rk_triple(es[a], es[b], es[c], h.r(), k)) return true;
      }
    }
  return false;
}

Hypergraph relabel(const Hypergraph& h, const std::vector<Vertex>& perm) {
  if (static_cast<int>(perm.size()) != h.n())
    throw std::invalid_argument("relabel: permutation size mismatch");
  std::vector<Edge> edges;
  for (const Edge& e : h.edges()) {
    Edge img;
    for (Vertex v : e) img.push_back(perm[v]);
    edges.push_back(std::move(img));
  }
  return Hypergraph(h.r(), h.n(), std::move(edges));
}

std::vector<int> intersection_profile(const Hypergraph& h) {
  std::vector<int> out;
  const auto& es = h.edges();
  for (std::size_t a = 0; a < es.size(); ++a)
    for (std::size_t b = a + 1; b < es.size(); ++b)
      out.push_back(static_cast<int>(intersection_size(es[a], es[b])));
  return out;
}

bool are_isomorphic(const Hypergraph& a, const Hypergraph& b) {
  if (a.r() != b.r() || a.n() != b.n() || a.edge_count() != b.edge_count()) return false;
  const int n = a.n();
  std::vector<int> da(n), db(n);
  for (int v = 0; v < n; ++v) {
    da[v] = a.degree(v);
    db[v] = b.degree(v);
  }
  {
    auto sa = da, sb = db;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
    auto pa = intersection_profile(a), pb = intersection_profile(b);
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    if (pa != pb) return false;
  }

  // Map a's vertices in order of decreasing degree; an edge of a is checked as
  // soon as its last vertex is mapped.
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex x, Vertex y) { return da[x] > da[y]; });
  std::vector<int> position(n);
  for (int t = 0; t < n; ++t) position[order[t]] = t;
  std::vector<std::vector<int>> closing(n);
  for (std::size_t t = 0; t < a.edges().size(); ++t) {
    int last = 0;
    for (Vertex v : a.edges()[t]) last = std::max(last, position[v]);
    closing[last].push_back(static_cast<int>(t));
  }

  std::vector<Vertex> image(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(int)> rec = [&](int t) {
    if (t == n) return true;
    Vertex v = order[t];
    for (Vertex w = 0; w < n; ++w) {
      if (used[w] || db[w] != da[v]) continue;
      image[v] = w;
      bool ok = true;
      for (int ei : closing[t]) {
        Edge img;
        for (Vertex u : a.edges()[ei]) img.push_back(image[u]);
        std::sort(img.begin(), img.end());
        if (!b.has_edge(img)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        used[w] = 1;
        if (rec(t + 1)) return true;
        used[w] = 0;
      }
    }
    image[v] = -1;
    return false;
  };
  return rec(0);
}

}  // namespace hyperturan
