#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace critbound {

using Dart = std::int32_t;
using Permutation = std::vector<Dart>;

/// Thrown by map operations whose precondition (validity, connectivity,
/// edge membership) does not hold.
class MapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A ribbon graph as a rotation system on darts 0..2E-1.
///
/// `sigma` permutes darts around their vertex (one cycle per vertex) and
/// `alpha` pairs the two darts of each edge. The value is not checked on
/// construction so that malformed input can be handed to `validate`.
/// Edge i is the pair {d, alpha(d)} whose smaller dart has rank i among all
/// edge minima; with the usual labeling edge i owns darts 2i and 2i+1.
class CombinatorialMap {
 public:
  CombinatorialMap() = default;
  CombinatorialMap(Permutation sigma, Permutation alpha)
      : sigma_(std::move(sigma)), alpha_(std::move(alpha)) {}

  /// Map on sigma.size() darts with alpha = (0 1)(2 3)...
  static CombinatorialMap with_standard_alpha(Permutation sigma);

  const Permutation& sigma() const noexcept { return sigma_; }
  const Permutation& alpha() const noexcept { return alpha_; }

  std::size_t dart_count() const noexcept { return sigma_.size(); }
  std::size_t edge_count() const noexcept { return sigma_.size() / 2; }
  bool empty() const noexcept { return sigma_.empty(); }

  Dart sigma(Dart d) const { return sigma_[static_cast<std::size_t>(d)]; }
  Dart alpha(Dart d) const { return alpha_[static_cast<std::size_t>(d)]; }

  friend bool operator==(const CombinatorialMap&, const CombinatorialMap&) = default;

 private:
  Permutation sigma_;
  Permutation alpha_;
};

enum class Violation {
  kOddDartCount,
  kSigmaNotPermutation,
  kAlphaNotPermutation,
  kAlphaNotInvolution,
  kAlphaFixedPoint,
};

std::string to_string(Violation v);

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(Violation v) const;
};

ValidationReport validate(const CombinatorialMap& map);

/// Throws MapError listing the violations when `map` is invalid.
void require_valid(const CombinatorialMap& map);

using FaceCycle = std::vector<Dart>;

/// Orbits of phi = sigma o alpha, each starting at its smallest dart, ordered
/// by that dart.
std::vector<FaceCycle> trace_faces(const CombinatorialMap& map);

/// Number of orbits of sigma o alpha without materialising them. Unchecked:
/// the caller guarantees validity.
std::int64_t face_count(const CombinatorialMap& map);
std::int64_t vertex_count(const CombinatorialMap& map);

/// Sigma cycles, each starting at its smallest dart, ordered by that dart.
std::vector<std::vector<Dart>> vertex_cycles(const CombinatorialMap& map);

/// vertex_of[d] is the index of the sigma cycle containing d (cycles ordered
/// as in vertex_cycles).
std::vector<std::int32_t> vertex_of_darts(const CombinatorialMap& map);

using EdgeId = std::size_t;
using EdgeSet = std::vector<EdgeId>;

/// Edge i as (smaller dart, partner).
std::vector<std::pair<Dart, Dart>> edge_darts(const CombinatorialMap& map);

struct SurfaceStats {
  std::int64_t vertices = 0;
  std::int64_t edges = 0;
  std::int64_t faces = 0;
  std::int64_t chi = 0;
  std::int64_t genus = 0;

  friend bool operator==(const SurfaceStats&, const SurfaceStats&) = default;
};

/// Requires a valid connected map (the empty map has no component and is
/// rejected).
SurfaceStats surface_stats(const CombinatorialMap& map);

struct GraphStats {
  std::int64_t components = 0;
  std::int64_t cycle_rank = 0;
  std::vector<std::int64_t> degree_sequence;  // ascending
};

GraphStats graph_cycle_rank(const CombinatorialMap& map);

std::int64_t component_count(const CombinatorialMap& map);

/// Spanning tree grown from the vertex of dart 0, always taking the smallest
/// frontier dart whose partner reaches a new vertex. Result sorted ascending.
EdgeSet spanning_tree(const CombinatorialMap& map);

/// Keeps the listed edges, relabels them 0..k-1 in ascending order of their
/// old index (old smaller dart -> 2j, partner -> 2j+1) and contracts sigma
/// over the deleted darts. Vertices left without darts disappear.
CombinatorialMap induced_submap(const CombinatorialMap& map, const EdgeSet& edges);

/// True when the kept edges touch every vertex, form a connected submap and
/// thicken to a surface of the ambient genus, i.e. every complementary
/// region of the subgraph is a disk. Empty subsets are never filling.
bool is_filling_subgraph(const CombinatorialMap& map, const EdgeSet& edges);

/// Isomorphism invariant of a connected map under dart relabeling that
/// commutes with both sigma and alpha (orientation preserving).
struct CanonicalCode {
  std::vector<std::int32_t> code;

  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

CanonicalCode canonical_form(const CombinatorialMap& map);

/// The map realising a canonical code: darts in canonical order.
CombinatorialMap decode_canonical(const CanonicalCode& code);

/// Orientation reversal: (sigma^-1, alpha).
CombinatorialMap mirror(const CombinatorialMap& map);

/// min(canonical_form(map), canonical_form(mirror(map))); equal for a map and
/// its mirror image.
CanonicalCode unoriented_canonical_form(const CombinatorialMap& map);

/// Applies the dart relabeling d -> relabel[d].
CombinatorialMap relabel_darts(const CombinatorialMap& map, const Permutation& relabel);

}  // namespace critbound
