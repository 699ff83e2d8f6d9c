#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "critbound/combinatorial_map.hpp"

// Brute-force reference implementations. Nothing here shares code with the
// main path apart from the CombinatorialMap value type; these exist to check
// it and are slow on purpose.
namespace critbound::oracle {

/// Thickened ribbon graph: one rectangle per edge, one disk per vertex.
///
/// Rectangle sides are numbered 4*edge + {0: end at the smaller dart,
/// 1: end at the partner dart, 2: long side from the smaller dart's
/// counter-clockwise corner, 3: the other long side}. Ends are glued to vertex
/// disks; long sides together with the vertex arcs between consecutive darts
/// form the boundary.
struct GluedSurface {
  struct Segment {
    // Corner ids: 2*dart for the counter-clockwise corner of the band at
    // that dart, 2*dart+1 for the clockwise corner.
    std::int64_t from = 0;
    std::int64_t to = 0;
    bool rectangle_side = false;
  };

  std::int64_t rectangles = 0;
  std::vector<std::int64_t> glued_ends;  // side ids glued to a vertex disk
  std::vector<Segment> boundary;         // long sides then vertex arcs
};

GluedSurface glue(const CombinatorialMap& map);

/// Boundary circles of the thickened map, by union-find over boundary
/// segments sharing a corner.
std::int64_t gluing_face_count(const CombinatorialMap& map);

/// Cat(k+1) = sum_{i=0..k} Cat(i) Cat(k-i), computed as a table 0..n.
std::vector<mpz_class> catalan_table(std::int64_t n);
mpz_class catalan_recurrence(std::int64_t n);

inline constexpr std::int64_t kMaxExhaustiveEdges = 5;

/// Calls `visit` for every pair (sigma, alpha) on 2E darts, alpha a
/// fixed-point-free involution, sigma any permutation. With
/// `standard_alpha_only` alpha is restricted to (0 1)(2 3)...; every map is
/// isomorphic to one of those, so isomorphism classes are unaffected.
void for_each_labeled_map(std::int64_t edges, bool standard_alpha_only,
                          const std::function<void(const CombinatorialMap&)>& visit);

/// Isomorphism test by exhaustive search: try every image of dart 0 and
/// propagate the forced bijection along sigma, alpha and their inverses.
bool isomorphic(const CombinatorialMap& a, const CombinatorialMap& b);

struct MapClass {
  CombinatorialMap representative;
  std::int64_t vertices = 0;
  std::int64_t edges = 0;
  std::int64_t faces = 0;
  std::int64_t genus = 0;
  std::int64_t max_degree = 0;
};

/// One representative per isomorphism class of connected maps with
/// 1 <= E <= max_edges (max_edges <= 5). Output order is deterministic.
std::vector<MapClass> exhaustive_maps(std::int64_t max_edges, bool standard_alpha_only = true);

}  // namespace critbound::oracle
