#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hyperturan/core.hpp"

namespace hyperturan {

/// vertex_map[v] is the image of vertex v of the source.
using VertexMap = std::vector<Vertex>;

struct SearchBudget {
  std::uint64_t max_nodes = 10'000'000;
  double timeout_seconds = 60.0;

  void validate() const {
    if (max_nodes == 0 || !(timeout_seconds > 0.0))
      throw std::invalid_argument("SearchBudget: limits must be positive");
  }
};

/// Thrown by predicates that need an exhaustive answer when the search tree
/// could not be fully explored.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SearchStatus { found, none, budget_exhausted };

struct HomSearchResult {
  SearchStatus status = SearchStatus::none;
  std::optional<VertexMap> map;
  std::uint64_t nodes = 0;

  bool found() const { return status == SearchStatus::found; }
};

/// Searches for f: V(F) -> V(H) sending every edge of F onto an edge of H.
/// Hosts are limited to 64 vertices.
HomSearchResult find_homomorphism(const Hypergraph& f, const Hypergraph& h,
                                  const SearchBudget& budget = {});

/// As find_homomorphism but injective on all of V(F) (subgraph containment).
HomSearchResult find_injective_homomorphism(const Hypergraph& f, const Hypergraph& h,
                                            const SearchBudget& budget = {});

/// f injective on every maximal edge e of F, with f(e) inside some edge of H.
HomSearchResult find_partial_homomorphism(const PartialHypergraph& f, const Hypergraph& h,
                                          const SearchBudget& budget = {});

bool is_homomorphism(const Hypergraph& f, const Hypergraph& h, const VertexMap& map);
bool is_partial_homomorphism(const PartialHypergraph& f, const Hypergraph& h,
                             const VertexMap& map);

/// No member of the family maps homomorphically into h. Throws BudgetExhausted
/// when a member's search is cut short.
bool is_hom_free(const Hypergraph& h, const Family& family, const SearchBudget& budget = {});

/// [F -> H partial homomorphism exists] == [extend(F) -> H homomorphism exists].
bool verify_extension_equivalence(const PartialHypergraph& f, const Hypergraph& h,
                                  const SearchBudget& budget = {});

struct TuranSearchResult {
  int max_edges = 0;
  /// One representative per isomorphism class of extremal hypergraphs.
  std::vector<Hypergraph> extremal;
  std::uint64_t nodes = 0;
};

/// Exact ex(n, family) for tiny instances by exhaustive edge-set search with
/// branch-and-bound. Freeness is subgraph-freeness (injective copies).
/// Guarded to r = 2 with n <= 8, or r >= 3 with n <= r + 3.
TuranSearchResult brute_force_ex(int n, const Family& family, const SearchBudget& budget = {});

}  // namespace hyperturan
