#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "critbound/combinatorial_map.hpp"

// Replays the spanning-tree construction of filling ribbon graphs: an ordered
// tree, extra edges added in every way, a cyclic order at every vertex, then
// the genus of the thickened surface decides whether the result is kept.
namespace critbound::enumeration {

/// Ordered rooted tree; vertices are numbered in preorder, the root is 0.
struct PlaneTree {
  std::vector<std::vector<std::int32_t>> children;

  std::size_t vertex_count() const noexcept { return children.size(); }
  std::vector<std::int32_t> parents() const;  // parent[0] = -1
};

/// Every ordered tree on n >= 1 vertices, once each, in lexicographic order of
/// their depth-first walk. There are Cat(n-1) of them.
void for_each_plane_tree(std::int64_t n, const std::function<void(const PlaneTree&)>& visit);
std::vector<PlaneTree> plane_trees(std::int64_t n);

using VertexPair = std::pair<std::int32_t, std::int32_t>;  // first <= second
using EdgeMultiset = std::vector<VertexPair>;              // non-decreasing

/// Every multiset of h unordered vertex pairs (loops allowed) over vertices
/// 0..n-1: C(n(n+1)/2 + h - 1, h) of them.
void for_each_edge_addition(std::int64_t n, std::int64_t h,
                            const std::function<void(const EdgeMultiset&)>& visit);
void for_each_edge_addition(const PlaneTree& tree, std::int64_t h,
                            const std::function<void(const EdgeMultiset&)>& visit);

/// A graph whose darts are attached to vertices but not yet cyclically
/// ordered. Edge k owns darts 2k and 2k+1.
struct UnrotatedGraph {
  std::int64_t vertices = 0;
  std::vector<std::int32_t> dart_vertex;

  std::vector<std::int64_t> degrees() const;
};

/// Tree edges first (the edge to child c is edge c-1, its even dart at the
/// parent), then the added edges in multiset order.
UnrotatedGraph build_graph(const PlaneTree& tree, const EdgeMultiset& added);

/// prod over vertices of (deg(v) - 1)!, with isolated vertices counting 1.
mpz_class rotation_count(const UnrotatedGraph& graph);

/// Every choice of cyclic order at every vertex. `limit` stops the stream
/// after that many maps; returns the number emitted.
std::uint64_t for_each_rotation_system(const UnrotatedGraph& graph,
                                       const std::function<void(const CombinatorialMap&)>& visit,
                                       std::uint64_t limit = UINT64_MAX);

struct ConstructionBudget {
  std::int64_t max_vertices = 1;
  std::int64_t max_edges = 1;
  std::int64_t max_degree = 1;
  std::int64_t genus_target = 0;
  std::uint64_t work_cap = 10'000'000;
};

void require_valid(const ConstructionBudget& budget);

/// pi sqrt(g(g-1)) / ln(4g-2) for g >= 2, else 0.
double filling_genus_lower(std::int64_t genus);

struct CensusResult {
  // (tree, added edges, rotation) triples examined within the caps.
  std::uint64_t sequences_counted = 0;
  // Distinct orientation-preserving classes of the target genus.
  std::uint64_t iso_classes = 0;
  // Classes that also pass the filling check and the graph-genus lower bound.
  std::uint64_t filling_classes = 0;
  // The same two counts after identifying each map with its mirror image.
  std::uint64_t iso_classes_unoriented = 0;
  std::uint64_t filling_classes_unoriented = 0;
  // Maps of the target genus before deduplication.
  std::uint64_t genus_matches = 0;
  bool truncated = false;
};

struct CensusOptions {
  unsigned workers = 1;
  bool keep_representatives = false;
};

struct Census {
  ConstructionBudget budget;
  CensusResult result;
  // Canonical representatives of the filling classes in code order.
  std::vector<CombinatorialMap> representatives;
  double wall_time_seconds = 0;
};

/// Runs the construction for every n <= max_vertices and every number of
/// added edges keeping E <= max_edges, skipping graphs with a vertex of
/// degree above max_degree. The result does not depend on `workers`. When
/// more than work_cap sequences exist, exactly the first work_cap (in the
/// deterministic enumeration order) are examined and `truncated` is set.
Census generate_candidates(const ConstructionBudget& budget, const CensusOptions& options = {});

struct UpperBoundCheck {
  std::int64_t vertices = 0;     // n = max_vertices
  std::int64_t added_edges = 0;  // h = max_edges - (n - 1)
  std::int64_t denominator_arg = 0;

  mpz_class trees;                // counted
  mpz_class tree_bound;           // Cat(n-1)
  mpz_class edge_additions;       // multisets per tree, counted
  mpq_class edge_addition_bound;  // n^{2h} / floor(genus_lower)!
  mpz_class max_rotations;        // largest rotation count of one graph
  mpz_class rotation_bound;       // (max_degree!)^n

  mpz_class sequences;            // left side: sequences at exactly (n, h)
  mpq_class bound;                // right side: product of the three bounds
  bool holds = false;
};

/// Compares the sequence count of the layer with exactly n = max_vertices
/// vertices and h = max_edges - n + 1 added edges with the counting formula.
/// Throws std::invalid_argument when h < 0 or when the layer exceeds work_cap.
UpperBoundCheck census_upper_bound_check(const ConstructionBudget& budget);

}  // namespace critbound::enumeration
