#include "critbound/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace critbound::oracle {

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }

  std::vector<std::size_t> parent;
};

std::size_t dart_total(const CombinatorialMap& map) { return map.sigma().size(); }

void require_sane(const CombinatorialMap& map) {
  const auto n = dart_total(map);
  if (n % 2 != 0 || map.alpha().size() != n) throw MapError("oracle: malformed map");
  std::vector<int> hits_sigma(n, 0);
  std::vector<int> hits_alpha(n, 0);
  for (std::size_t d = 0; d < n; ++d) {
    const auto s = map.sigma()[d];
    const auto a = map.alpha()[d];
    if (s < 0 || a < 0 || static_cast<std::size_t>(s) >= n || static_cast<std::size_t>(a) >= n) {
      throw MapError("oracle: dart out of range");
    }
    ++hits_sigma[static_cast<std::size_t>(s)];
    ++hits_alpha[static_cast<std::size_t>(a)];
    if (static_cast<std::size_t>(a) == d || static_cast<std::size_t>(map.alpha()[static_cast<std::size_t>(a)]) != d) {
      throw MapError("oracle: alpha is not a fixed-point-free involution");
    }
  }
  for (std::size_t d = 0; d < n; ++d) {
    if (hits_sigma[d] != 1 || hits_alpha[d] != 1) throw MapError("oracle: not a permutation");
  }
}

bool connected(const CombinatorialMap& map) {
  const auto n = dart_total(map);
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> todo{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!todo.empty()) {
    const auto d = todo.back();
    todo.pop_back();
    for (auto e : {map.sigma()[d], map.alpha()[d]}) {
      const auto u = static_cast<std::size_t>(e);
      if (!seen[u]) {
        seen[u] = true;
        ++reached;
        todo.push_back(u);
      }
    }
  }
  return reached == n;
}

std::vector<std::int64_t> cycle_lengths(const Permutation& p) {
  std::vector<std::int64_t> lengths;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t s = 0; s < p.size(); ++s) {
    std::int64_t len = 0;
    for (auto d = s; !seen[d]; d = static_cast<std::size_t>(p[d])) {
      seen[d] = true;
      ++len;
    }
    if (len > 0) lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

void pairings(std::vector<Dart>& alpha, std::size_t n,
              const std::function<void(const Permutation&)>& visit) {
  std::size_t first = 0;
  while (first < n && alpha[first] >= 0) ++first;
  if (first == n) {
    visit(alpha);
    return;
  }
  for (std::size_t other = first + 1; other < n; ++other) {
    if (alpha[other] >= 0) continue;
    alpha[first] = static_cast<Dart>(other);
    alpha[other] = static_cast<Dart>(first);
    pairings(alpha, n, visit);
    alpha[first] = alpha[other] = -1;
  }
}

}  // namespace

GluedSurface glue(const CombinatorialMap& map) {
  require_sane(map);
  const auto n = dart_total(map);
  GluedSurface s;
  for (std::size_t a = 0; a < n; ++a) {
    const auto b = static_cast<std::size_t>(map.alpha()[a]);
    if (b < a) continue;
    const auto rect = s.rectangles++;
    s.glued_ends.push_back(4 * rect);
    s.glued_ends.push_back(4 * rect + 1);
    const auto ia = static_cast<std::int64_t>(a);
    const auto ib = static_cast<std::int64_t>(b);
    // Walking along the band keeps its left side on the left, which is the
    // counter-clockwise corner at one end and the clockwise corner at the other.
    s.boundary.push_back({2 * ia, 2 * ib + 1, true});
    s.boundary.push_back({2 * ia + 1, 2 * ib, true});
  }
  for (std::size_t d = 0; d < n; ++d) {
    const auto next = static_cast<std::int64_t>(map.sigma()[d]);
    s.boundary.push_back({2 * static_cast<std::int64_t>(d), 2 * next + 1, false});
  }
  return s;
}

std::int64_t gluing_face_count(const CombinatorialMap& map) {
  const auto surface = glue(map);
  const auto corners = 2 * dart_total(map);
  std::vector<std::vector<std::size_t>> at_corner(corners);
  for (std::size_t i = 0; i < surface.boundary.size(); ++i) {
    at_corner[static_cast<std::size_t>(surface.boundary[i].from)].push_back(i);
    at_corner[static_cast<std::size_t>(surface.boundary[i].to)].push_back(i);
  }
  DisjointSets sets(surface.boundary.size());
  for (const auto& segs : at_corner) {
    for (std::size_t k = 1; k < segs.size(); ++k) sets.unite(segs[0], segs[k]);
  }
  std::int64_t circles = 0;
  for (std::size_t i = 0; i < surface.boundary.size(); ++i) {
    if (sets.find(i) == i) ++circles;
  }
  return circles;
}

std::vector<mpz_class> catalan_table(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("Catalan index must be non-negative");
  std::vector<mpz_class> cat(static_cast<std::size_t>(n) + 1);
  cat[0] = 1;
  for (std::size_t k = 0; k + 1 < cat.size(); ++k) {
    mpz_class sum = 0;
    for (std::size_t i = 0; i <= k; ++i) sum += cat[i] * cat[k - i];
    cat[k + 1] = sum;
  }
  return cat;
}

mpz_class catalan_recurrence(std::int64_t n) { return catalan_table(n).back(); }

void for_each_labeled_map(std::int64_t edges, bool standard_alpha_only,
                          const std::function<void(const CombinatorialMap&)>& visit) {
  if (edges < 0 || edges > kMaxExhaustiveEdges) {
    throw std::invalid_argument("exhaustive enumeration is capped at " +
                                std::to_string(kMaxExhaustiveEdges) + " edges");
  }
  const auto n = static_cast<std::size_t>(2 * edges);
  auto with_alpha = [&](const Permutation& alpha) {
    Permutation sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      visit(CombinatorialMap(sigma, alpha));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  };
  if (standard_alpha_only) {
    Permutation alpha(n);
    for (std::size_t d = 0; d < n; ++d) alpha[d] = static_cast<Dart>(d % 2 == 0 ? d + 1 : d - 1);
    with_alpha(alpha);
    return;
  }
  std::vector<Dart> alpha(n, -1);
  pairings(alpha, n, with_alpha);
}

bool isomorphic(const CombinatorialMap& a, const CombinatorialMap& b) {
  const auto n = dart_total(a);
  if (n != dart_total(b)) return false;
  if (n == 0) return true;
  for (std::size_t target = 0; target < n; ++target) {
    std::vector<Dart> f(n, -1);
    std::vector<bool> used(n, false);
    f[0] = static_cast<Dart>(target);
    used[target] = true;
    std::vector<std::size_t> todo{0};
    bool ok = true;
    while (ok && !todo.empty()) {
      const auto d = todo.back();
      todo.pop_back();
      const auto image = static_cast<std::size_t>(f[d]);
      const std::pair<Dart, Dart> forced[] = {
          {a.sigma()[d], b.sigma()[image]},
          {a.alpha()[d], b.alpha()[image]},
      };
      for (const auto& [from, to] : forced) {
        const auto u = static_cast<std::size_t>(from);
        if (f[u] < 0) {
          if (used[static_cast<std::size_t>(to)]) {
            ok = false;
            break;
          }
          f[u] = to;
          used[static_cast<std::size_t>(to)] = true;
          todo.push_back(u);
        } else if (f[u] != to) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    // Darts unreachable from dart 0 (disconnected input) are left unmapped.
    if (std::find(f.begin(), f.end(), -1) != f.end()) continue;
    return true;
  }
  return false;
}

std::vector<MapClass> exhaustive_maps(std::int64_t max_edges, bool standard_alpha_only) {
  if (max_edges < 1 || max_edges > kMaxExhaustiveEdges) {
    throw std::invalid_argument("exhaustive_maps needs 1 <= max_edges <= " +
                                std::to_string(kMaxExhaustiveEdges));
  }
  using Key = std::tuple<std::int64_t, std::int64_t, std::vector<std::int64_t>, std::vector<std::int64_t>>;
  std::vector<MapClass> classes;
  for (std::int64_t e = 1; e <= max_edges; ++e) {
    std::map<Key, std::vector<std::size_t>> buckets;
    for_each_labeled_map(e, standard_alpha_only, [&](const CombinatorialMap& m) {
      if (!connected(m)) return;
      auto degrees = cycle_lengths(m.sigma());
      Permutation phi(m.sigma().size());
      for (std::size_t d = 0; d < phi.size(); ++d) {
        phi[d] = m.sigma()[static_cast<std::size_t>(m.alpha()[d])];
      }
      auto face_lengths = cycle_lengths(phi);
      Key key{static_cast<std::int64_t>(degrees.size()), static_cast<std::int64_t>(face_lengths.size()),
              degrees, face_lengths};
      auto& bucket = buckets[key];
      for (auto idx : bucket) {
        if (isomorphic(classes[idx].representative, m)) return;
      }
      MapClass c;
      c.representative = m;
      c.edges = e;
      c.vertices = static_cast<std::int64_t>(degrees.size());
      c.faces = gluing_face_count(m);
      c.genus = (2 - (c.vertices - c.edges + c.faces)) / 2;
      c.max_degree = degrees.back();
      bucket.push_back(classes.size());
      classes.push_back(std::move(c));
    });
  }
  return classes;
}

}  // namespace critbound::oracle
