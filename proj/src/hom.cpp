#include "hyperturan/hom.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>

namespace hyperturan {

namespace {

using Mask = std::uint64_t;

/// Edge masks of a host with at most 64 vertices, indexed by vertex.
struct HostIndex {
  int n = 0;
  std::vector<Mask> edge_masks;
  std::vector<std::vector<Mask>> incident_masks;

  explicit HostIndex(const Hypergraph& h) : n(h.n()) {
    if (h.n() > 64) throw std::invalid_argument("homomorphism search: host exceeds 64 vertices");
    incident_masks.assign(n, {});
    for (const Edge& e : h.edges()) {
      Mask m = 0;
      for (Vertex v : e) m |= Mask{1} << v;
      edge_masks.push_back(m);
      for (Vertex v : e) incident_masks[v].push_back(m);
    }
  }

  /// True iff the vertex set m lies inside some edge.
  bool covered(Mask m, Vertex some_member) const {
    for (Mask e : incident_masks[some_member])
      if ((e & m) == m) return true;
    return false;
  }
};

/// Backtracking search for maps V(F) -> V(H) such that every constraint set
/// of F is mapped injectively into some edge of H. Full homomorphisms of
/// uniform F are the case where constraints are the edges themselves.
class ConstraintSearch {
 public:
  ConstraintSearch(int source_n, std::vector<Edge> constraints, const HostIndex& host,
                   bool globally_injective, const SearchBudget& budget)
      : n_(source_n),
        constraints_(std::move(constraints)),
        host_(host),
        injective_(globally_injective),
        budget_(budget) {
    budget_.validate();
    build_order();
  }

  HomSearchResult run() {
    start_ = std::chrono::steady_clock::now();
    image_.assign(n_, -1);
    used_.assign(host_.n, 0);
    HomSearchResult result;
    if (host_.n == 0 && n_ > 0) {
      result.status = SearchStatus::none;
      return result;
    }
    bool ok = recurse(0);
    result.nodes = nodes_;
    if (exhausted_) {
      result.status = SearchStatus::budget_exhausted;
    } else if (ok) {
      result.status = SearchStatus::found;
      VertexMap map = image_;
      for (auto& v : map)
        if (v < 0) v = 0;
      result.map = std::move(map);
    } else {
      result.status = SearchStatus::none;
    }
    return result;
  }

 private:
  void build_order() {
    std::vector<int> degree(n_, 0);
    for (const auto& c : constraints_)
      for (Vertex v : c) ++degree[v];
    std::vector<char> placed(n_, 0);
    std::vector<int> touching(constraints_.size(), 0);
    std::vector<Vertex> constrained;
    for (Vertex v = 0; v < n_; ++v)
      if (degree[v] > 0) constrained.push_back(v);
    std::vector<std::vector<int>> member_of(n_);
    for (std::size_t c = 0; c < constraints_.size(); ++c)
      for (Vertex v : constraints_[c]) member_of[v].push_back(static_cast<int>(c));

    while (order_.size() < constrained.size()) {
      Vertex best = -1;
      int best_shared = -1;
      for (Vertex v : constrained) {
        if (placed[v]) continue;
        int shared = 0;
        for (int c : member_of[v]) shared += touching[c] > 0 ? touching[c] : 0;
        if (shared > best_shared || (shared == best_shared && degree[v] > degree[best])) {
          best = v;
          best_shared = shared;
        }
      }
      placed[best] = 1;
      order_.push_back(best);
      for (int c : member_of[best]) ++touching[c];
    }

    position_.assign(n_, -1);
    for (std::size_t t = 0; t < order_.size(); ++t) position_[order_[t]] = static_cast<int>(t);
    // For each depth, the constraints containing the newly placed vertex,
    // restricted to the vertices placed so far.
    checks_.assign(order_.size(), {});
    for (std::size_t t = 0; t < order_.size(); ++t) {
      Vertex v = order_[t];
      for (int c : member_of[v]) {
        Edge placed_part;
        for (Vertex u : constraints_[c])
          if (position_[u] <= static_cast<int>(t)) placed_part.push_back(u);
        checks_[t].push_back(std::move(placed_part));
      }
    }
  }

  bool out_of_budget() {
    if (exhausted_) return true;
    if (nodes_ >= budget_.max_nodes) {
      exhausted_ = true;
    } else if ((nodes_ & 0xfff) == 0) {
      std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
      if (elapsed.count() > budget_.timeout_seconds) exhausted_ = true;
    }
    return exhausted_;
  }

  bool consistent(std::size_t depth) const {
    for (const Edge& part : checks_[depth]) {
      Mask m = 0;
      for (Vertex u : part) m |= Mask{1} << image_[u];
      if (std::popcount(m) != static_cast<int>(part.size())) return false;
      if (!host_.covered(m, image_[order_[depth]])) return false;
    }
    return true;
  }

  bool recurse(std::size_t depth) {
    if (depth == order_.size()) return true;
    Vertex v = order_[depth];
    for (Vertex w = 0; w < host_.n; ++w) {
      if (injective_ && used_[w]) continue;
      if (host_.incident_masks[w].empty()) continue;
      ++nodes_;
      if (out_of_budget()) return false;
      image_[v] = w;
      if (consistent(depth)) {
        used_[w] = 1;
        if (recurse(depth + 1)) return true;
        used_[w] = 0;
        if (exhausted_) return false;
      }
    }
    image_[v] = -1;
    return false;
  }

  int n_;
  std::vector<Edge> constraints_;
  const HostIndex& host_;
  bool injective_;
  SearchBudget budget_;
  std::vector<Vertex> order_;
  std::vector<int> position_;
  std::vector<std::vector<Edge>> checks_;
  std::vector<Vertex> image_;
  std::vector<char> used_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::chrono::steady_clock::time_point start_;
};

HomSearchResult search_uniform(const Hypergraph& f, const Hypergraph& h, bool injective,
                               const SearchBudget& budget) {
  if (f.r() != h.r()) throw std::invalid_argument("homomorphism search: uniformities differ");
  HostIndex host(h);
  if (injective && f.n() > h.n()) return HomSearchResult{SearchStatus::none, std::nullopt, 0};
  ConstraintSearch search(f.n(), f.edges(), host, injective, budget);
  return search.run();
}

}  // namespace

HomSearchResult find_homomorphism(const Hypergraph& f, const Hypergraph& h,
                                  const SearchBudget& budget) {
  return search_uniform(f, h, false, budget);
}

HomSearchResult find_injective_homomorphism(const Hypergraph& f, const Hypergraph& h,
                                            const SearchBudget& budget) {
  return search_uniform(f, h, true, budget);
}

HomSearchResult find_partial_homomorphism(const PartialHypergraph& f, const Hypergraph& h,
                                          const SearchBudget& budget) {
  if (f.r() > h.r()) throw std::invalid_argument("partial homomorphism: F.r exceeds H.r");
  HostIndex host(h);
  ConstraintSearch search(f.n(), f.maximal_edges(), host, false, budget);
  return search.run();
}

bool is_homomorphism(const Hypergraph& f, const Hypergraph& h, const VertexMap& map) {
  if (static_cast<int>(map.size()) != f.n() || f.r() != h.r()) return false;
  for (Vertex w : map)
    if (w < 0 || w >= h.n()) return false;
  for (const Edge& e : f.edges()) {
    Edge img;
    for (Vertex v : e) img.push_back(map[v]);
    std::sort(img.begin(), img.end());
    if (std::adjacent_find(img.begin(), img.end()) != img.end()) return false;
    if (!h.has_edge(img)) return false;
  }
  return true;
}

bool is_partial_homomorphism(const PartialHypergraph& f, const Hypergraph& h,
                             const VertexMap& map) {
  if (static_cast<int>(map.size()) != f.n()) return false;
  for (Vertex w : map)
    if (w < 0 || w >= h.n()) return false;
  for (const Edge& e : f.maximal_edges()) {
    Edge img;
    for (Vertex v : e) img.push_back(map[v]);
    std::sort(img.begin(), img.end());
    if (std::adjacent_find(img.begin(), img.end()) != img.end()) return false;
    bool inside = std::any_of(h.edges().begin(), h.edges().end(), [&](const Edge& he) {
      return std::includes(he.begin(), he.end(), img.begin(), img.end());
    });
    if (!inside) return false;
  }
  return true;
}

bool is_hom_free(const Hypergraph& h, const Family& family, const SearchBudget& budget) {
  if (family.r() != h.r()) throw std::invalid_argument("is_hom_free: uniformities differ");
  for (const auto& member : family.members()) {
    auto result = find_homomorphism(member, h, budget);
    if (result.status == SearchStatus::budget_exhausted)
      throw BudgetExhausted("is_hom_free: search budget exhausted");
    if (result.found()) return false;
  }
  return true;
}

bool verify_extension_equivalence(const PartialHypergraph& f, const Hypergraph& h,
                                  const SearchBudget& budget) {
  auto partial = find_partial_homomorphism(f, h, budget);
  auto full = find_homomorphism(extend(f), h, budget);
  if (partial.status == SearchStatus::budget_exhausted ||
      full.status == SearchStatus::budget_exhausted)
    throw BudgetExhausted("verify_extension_equivalence: search budget exhausted");
  return partial.found() == full.found();
}

TuranSearchResult brute_force_ex(int n, const Family& family, const SearchBudget& budget) {
  budget.validate();
  const int r = family.r();
  if (n < r) throw std::invalid_argument("brute_force_ex: need n >= r");
  if ((r == 2 && n > 8) || (r >= 3 && n > r + 3))
    throw std::invalid_argument("brute_force_ex: instance too large for exhaustive search");

  std::vector<Edge> candidates;
  {
    std::vector<int> pick(r);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      candidates.push_back(pick);
      int t = r - 1;
      while (t >= 0 && pick[t] == n - r + t) --t;
      if (t < 0) break;
      ++pick[t];
      for (int s = t + 1; s < r; ++s) pick[s] = pick[s - 1] + 1;
    }
  }
  const int m = static_cast<int>(candidates.size());

  TuranSearchResult result;
  result.max_edges = -1;
  std::vector<Hypergraph> labelled_best;
  std::vector<Edge> current;
  const auto start = std::chrono::steady_clock::now();
  SearchBudget inner = budget;

  auto free_after_adding = [&](const Edge& e) {
    current.push_back(e);
    Hypergraph g(r, n, current);
    current.pop_back();
    for (const auto& member : family.members()) {
      auto found = find_injective_homomorphism(member, g, inner);
      if (found.status == SearchStatus::budget_exhausted)
        throw BudgetExhausted("brute_force_ex: containment search exhausted its budget");
      if (found.found()) return false;
    }
    return true;
  };

  auto check_budget = [&] {
    ++result.nodes;
    if (result.nodes > budget.max_nodes)
      throw BudgetExhausted("brute_force_ex: node budget exhausted");
    if ((result.nodes & 0x3ff) == 0) {
      std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      if (elapsed.count() > budget.timeout_seconds)
        throw BudgetExhausted("brute_force_ex: timeout");
    }
  };

  // Include-first DFS over candidate edges in lexicographic order. Branches
  // that cannot reach the best count are pruned; ties are kept so every
  // labelled maximizer is visited.
  auto rec = [&](auto&& self, int t) -> void {
    check_budget();
    const int count = static_cast<int>(current.size());
    if (count + (m - t) < result.max_edges) return;
    if (t == m) {
      if (count > result.max_edges) {
        result.max_edges = count;
        labelled_best.clear();
      }
      labelled_best.emplace_back(r, n, current);
      return;
    }
    if (free_after_adding(candidates[t])) {
      current.push_back(candidates[t]);
      self(self, t + 1);
      current.pop_back();
    }
    self(self, t + 1);
  };
  rec(rec, 0);

  for (const auto& g : labelled_best) {
    bool seen = std::any_of(result.extremal.begin(), result.extremal.end(),
                            [&](const Hypergraph& rep) { return are_isomorphic(rep, g); });
    if (!seen) result.extremal.push_back(g);
  }
  return result;
}

}  // namespace hyperturan
