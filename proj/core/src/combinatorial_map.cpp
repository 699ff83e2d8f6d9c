#include "critbound/combinatorial_map.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

namespace critbound {

namespace {

bool is_permutation_of_range(const Permutation& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (Dart d : p) {
    if (d < 0 || static_cast<std::size_t>(d) >= n) return false;
    if (seen[static_cast<std::size_t>(d)]) return false;
    seen[static_cast<std::size_t>(d)] = true;
  }
  return true;
}

// Labels each dart with its component under <sigma, alpha>; returns the count.
std::int64_t label_components(const CombinatorialMap& map, std::vector<std::int32_t>& comp) {
  const auto n = map.dart_count();
  comp.assign(n, -1);
  std::int32_t next = 0;
  std::vector<Dart> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    stack.push_back(static_cast<Dart>(s));
    while (!stack.empty()) {
      const Dart d = stack.back();
      stack.pop_back();
      for (Dart e : {map.sigma(d), map.alpha(d)}) {
        if (comp[static_cast<std::size_t>(e)] < 0) {
          comp[static_cast<std::size_t>(e)] = next;
          stack.push_back(e);
        }
      }
    }
    ++next;
  }
  return next;
}

std::vector<std::vector<Dart>> orbits(std::size_t n, const std::function<Dart(Dart)>& step) {
  std::vector<std::vector<Dart>> out;
  std::vector<bool> seen(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Dart> cycle;
    Dart d = static_cast<Dart>(s);
    while (!seen[static_cast<std::size_t>(d)]) {
      seen[static_cast<std::size_t>(d)] = true;
      cycle.push_back(d);
      d = step(d);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::int64_t count_orbits(std::size_t n, const Permutation& first, const Permutation& second) {
  // orbits of d -> second[first[d]]
  std::vector<bool> seen(n, false);
  std::int64_t count = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++count;
    auto d = s;
    while (!seen[d]) {
      seen[d] = true;
      d = static_cast<std::size_t>(second[static_cast<std::size_t>(first[d])]);
    }
  }
  return count;
}

}  // namespace

CombinatorialMap CombinatorialMap::with_standard_alpha(Permutation sigma) {
  Permutation alpha(sigma.size());
  for (std::size_t d = 0; d < alpha.size(); ++d) alpha[d] = static_cast<Dart>(d ^ 1U);
  return {std::move(sigma), std::move(alpha)};
}

std::string to_string(Violation v) {
  switch (v) {
    case Violation::kOddDartCount:
      return "odd dart count";
    case Violation::kSigmaNotPermutation:
      return "sigma not a permutation";
    case Violation::kAlphaNotPermutation:
      return "alpha not a permutation";
    case Violation::kAlphaNotInvolution:
      return "alpha not involution";
    case Violation::kAlphaFixedPoint:
      return "alpha has fixed point";
  }
  return "unknown violation";
}

bool ValidationReport::has(Violation v) const {
  return std::find(violations.begin(), violations.end(), v) != violations.end();
}

ValidationReport validate(const CombinatorialMap& map) {
  ValidationReport report;
  const auto n = map.dart_count();
  if (n % 2 != 0) report.violations.push_back(Violation::kOddDartCount);
  if (!is_permutation_of_range(map.sigma(), n)) {
    report.violations.push_back(Violation::kSigmaNotPermutation);
  }
  if (!is_permutation_of_range(map.alpha(), n)) {
    report.violations.push_back(Violation::kAlphaNotPermutation);
    return report;
  }
  bool involution = true;
  bool fixed_point = false;
  for (std::size_t d = 0; d < n; ++d) {
    const Dart a = map.alpha(static_cast<Dart>(d));
    if (static_cast<std::size_t>(a) == d) fixed_point = true;
    if (static_cast<std::size_t>(map.alpha(a)) != d) involution = false;
  }
  if (!involution) report.violations.push_back(Violation::kAlphaNotInvolution);
  if (fixed_point) report.violations.push_back(Violation::kAlphaFixedPoint);
  return report;
}

void require_valid(const CombinatorialMap& map) {
  const auto report = validate(map);
  if (report.ok()) return;
  std::ostringstream msg;
  msg << "invalid combinatorial map:";
  for (std::size_t i = 0; i < report.violations.size(); ++i) {
    msg << (i == 0 ? " " : ", ") << to_string(report.violations[i]);
  }
  throw MapError(msg.str());
}

std::vector<FaceCycle> trace_faces(const CombinatorialMap& map) {
  require_valid(map);
  return orbits(map.dart_count(), [&](Dart d) { return map.sigma(map.alpha(d)); });
}

std::int64_t face_count(const CombinatorialMap& map) {
  return count_orbits(map.dart_count(), map.alpha(), map.sigma());
}

std::int64_t vertex_count(const CombinatorialMap& map) {
  const auto n = map.dart_count();
  std::vector<bool> seen(n, false);
  std::int64_t count = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++count;
    for (auto d = s; !seen[d]; d = static_cast<std::size_t>(map.sigma()[d])) seen[d] = true;
  }
  return count;
}

std::vector<std::vector<Dart>> vertex_cycles(const CombinatorialMap& map) {
  return orbits(map.dart_count(), [&](Dart d) { return map.sigma(d); });
}

std::vector<std::int32_t> vertex_of_darts(const CombinatorialMap& map) {
  std::vector<std::int32_t> vertex_of(map.dart_count(), -1);
  const auto cycles = vertex_cycles(map);
  for (std::size_t v = 0; v < cycles.size(); ++v) {
    for (Dart d : cycles[v]) vertex_of[static_cast<std::size_t>(d)] = static_cast<std::int32_t>(v);
  }
  return vertex_of;
}

std::vector<std::pair<Dart, Dart>> edge_darts(const CombinatorialMap& map) {
  std::vector<std::pair<Dart, Dart>> edges;
  edges.reserve(map.edge_count());
  for (Dart d = 0; static_cast<std::size_t>(d) < map.dart_count(); ++d) {
    if (d < map.alpha(d)) edges.emplace_back(d, map.alpha(d));
  }
  return edges;
}

std::int64_t component_count(const CombinatorialMap& map) {
  std::vector<std::int32_t> comp;
  return label_components(map, comp);
}

SurfaceStats surface_stats(const CombinatorialMap& map) {
  require_valid(map);
  const auto components = component_count(map);
  if (components != 1) {
    throw MapError("surface_stats needs a connected map, got " + std::to_string(components) +
                   " components");
  }
  SurfaceStats s;
  s.vertices = vertex_count(map);
  s.edges = static_cast<std::int64_t>(map.edge_count());
  s.faces = face_count(map);
  s.chi = s.vertices - s.edges + s.faces;
  s.genus = (2 - s.chi) / 2;
  return s;
}

GraphStats graph_cycle_rank(const CombinatorialMap& map) {
  require_valid(map);
  GraphStats g;
  g.components = component_count(map);
  const auto cycles = vertex_cycles(map);
  for (const auto& c : cycles) g.degree_sequence.push_back(static_cast<std::int64_t>(c.size()));
  std::sort(g.degree_sequence.begin(), g.degree_sequence.end());
  g.cycle_rank = static_cast<std::int64_t>(map.edge_count()) -
                 static_cast<std::int64_t>(cycles.size()) + g.components;
  return g;
}

EdgeSet spanning_tree(const CombinatorialMap& map) {
  require_valid(map);
  if (component_count(map) != 1) throw MapError("spanning_tree needs a connected map");

  const auto cycles = vertex_cycles(map);
  const auto vertex_of = vertex_of_darts(map);
  std::vector<std::size_t> edge_of(map.dart_count());
  {
    const auto edges = edge_darts(map);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      edge_of[static_cast<std::size_t>(edges[i].first)] = i;
      edge_of[static_cast<std::size_t>(edges[i].second)] = i;
    }
  }

  std::vector<bool> in_tree(cycles.size(), false);
  std::priority_queue<Dart, std::vector<Dart>, std::greater<>> frontier;
  auto add_vertex = [&](std::int32_t v) {
    in_tree[static_cast<std::size_t>(v)] = true;
    for (Dart d : cycles[static_cast<std::size_t>(v)]) frontier.push(d);
  };
  add_vertex(vertex_of[0]);

  EdgeSet tree;
  while (!frontier.empty()) {
    const Dart d = frontier.top();
    frontier.pop();
    const auto w = vertex_of[static_cast<std::size_t>(map.alpha(d))];
    if (in_tree[static_cast<std::size_t>(w)]) continue;
    tree.push_back(edge_of[static_cast<std::size_t>(d)]);
    add_vertex(w);
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

CombinatorialMap induced_submap(const CombinatorialMap& map, const EdgeSet& edges) {
  require_valid(map);
  const auto all = edge_darts(map);
  EdgeSet kept = edges;
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (!kept.empty() && kept.back() >= all.size()) {
    throw MapError("unknown edge index " + std::to_string(kept.back()) + " (map has " +
                   std::to_string(all.size()) + " edges)");
  }

  std::vector<Dart> new_id(map.dart_count(), -1);
  for (std::size_t j = 0; j < kept.size(); ++j) {
    const auto [a, b] = all[kept[j]];
    new_id[static_cast<std::size_t>(a)] = static_cast<Dart>(2 * j);
    new_id[static_cast<std::size_t>(b)] = static_cast<Dart>(2 * j + 1);
  }

  Permutation sigma(2 * kept.size());
  for (std::size_t d = 0; d < map.dart_count(); ++d) {
    if (new_id[d] < 0) continue;
    Dart e = map.sigma(static_cast<Dart>(d));
    while (new_id[static_cast<std::size_t>(e)] < 0) e = map.sigma(e);
    sigma[static_cast<std::size_t>(new_id[d])] = new_id[static_cast<std::size_t>(e)];
  }
  return CombinatorialMap::with_standard_alpha(std::move(sigma));
}

bool is_filling_subgraph(const CombinatorialMap& map, const EdgeSet& edges) {
  if (map.empty() || edges.empty()) return false;
  const auto ambient = surface_stats(map);

  const auto all = edge_darts(map);
  const auto vertex_of = vertex_of_darts(map);
  std::vector<bool> touched(static_cast<std::size_t>(ambient.vertices), false);
  for (EdgeId e : edges) {
    if (e >= all.size()) throw MapError("unknown edge index " + std::to_string(e));
    touched[static_cast<std::size_t>(vertex_of[static_cast<std::size_t>(all[e].first)])] = true;
    touched[static_cast<std::size_t>(vertex_of[static_cast<std::size_t>(all[e].second)])] = true;
  }
  if (std::find(touched.begin(), touched.end(), false) != touched.end()) return false;

  const auto sub = induced_submap(map, edges);
  if (component_count(sub) != 1) return false;
  return surface_stats(sub).genus == ambient.genus;
}

CanonicalCode canonical_form(const CombinatorialMap& map) {
  require_valid(map);
  const auto n = map.dart_count();
  if (n == 0 || component_count(map) != 1) {
    throw MapError("canonical_form needs a connected non-empty map");
  }

  // Code layout: [n, sigma'(0), alpha'(0), sigma'(1), alpha'(1), ...] in the
  // labels assigned by a breadth-first walk from the start dart. The walk
  // visits sigma before alpha, so every entry is known when it is emitted and
  // a candidate can be abandoned as soon as it exceeds the best so far.
  std::vector<std::int32_t> best;
  std::vector<std::int32_t> label(n);
  std::vector<Dart> order;
  std::vector<std::int32_t> code;
  order.reserve(n);
  code.reserve(2 * n + 1);

  for (std::size_t start = 0; start < n; ++start) {
    std::fill(label.begin(), label.end(), -1);
    order.clear();
    code.clear();
    code.push_back(static_cast<std::int32_t>(n));
    label[start] = 0;
    order.push_back(static_cast<Dart>(start));
    bool worse = false;
    bool better = best.empty();
    for (std::size_t i = 0; i < n && !worse; ++i) {
      const Dart d = order[i];
      for (Dart e : {map.sigma(d), map.alpha(d)}) {
        auto& l = label[static_cast<std::size_t>(e)];
        if (l < 0) {
          l = static_cast<std::int32_t>(order.size());
          order.push_back(e);
        }
        code.push_back(l);
        if (!better) {
          const auto pos = code.size() - 1;
          if (code[pos] > best[pos]) {
            worse = true;
            break;
          }
          if (code[pos] < best[pos]) better = true;
        }
      }
    }
    if (!worse && better) best = code;
  }
  return CanonicalCode{std::move(best)};
}

CombinatorialMap decode_canonical(const CanonicalCode& code) {
  if (code.code.empty()) throw MapError("empty canonical code");
  const auto n = static_cast<std::size_t>(code.code[0]);
  if (code.code.size() != 2 * n + 1) throw MapError("malformed canonical code");
  Permutation sigma(n);
  Permutation alpha(n);
  for (std::size_t i = 0; i < n; ++i) {
    sigma[i] = code.code[1 + 2 * i];
    alpha[i] = code.code[2 + 2 * i];
  }
  return {std::move(sigma), std::move(alpha)};
}

CombinatorialMap mirror(const CombinatorialMap& map) {
  require_valid(map);
  Permutation inverse(map.dart_count());
  for (std::size_t d = 0; d < map.dart_count(); ++d) {
    inverse[static_cast<std::size_t>(map.sigma(static_cast<Dart>(d)))] = static_cast<Dart>(d);
  }
  return {std::move(inverse), map.alpha()};
}

CanonicalCode unoriented_canonical_form(const CombinatorialMap& map) {
  return std::min(canonical_form(map), canonical_form(mirror(map)));
}

CombinatorialMap relabel_darts(const CombinatorialMap& map, const Permutation& relabel) {
  const auto n = map.dart_count();
  if (!is_permutation_of_range(relabel, n)) throw MapError("relabeling is not a permutation");
  Permutation sigma(n);
  Permutation alpha(n);
  for (std::size_t d = 0; d < n; ++d) {
    const auto to = static_cast<std::size_t>(relabel[d]);
    sigma[to] = relabel[static_cast<std::size_t>(map.sigma(static_cast<Dart>(d)))];
    alpha[to] = relabel[static_cast<std::size_t>(map.alpha(static_cast<Dart>(d)))];
  }
  return {std::move(sigma), std::move(alpha)};
}

}  // namespace critbound
