#include "critbound/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

#include "critbound/bounds.hpp"

namespace critbound::enumeration {

std::vector<std::int32_t> PlaneTree::parents() const {
  std::vector<std::int32_t> parent(children.size(), -1);
  for (std::size_t v = 0; v < children.size(); ++v) {
    for (auto c : children[v]) parent[static_cast<std::size_t>(c)] = static_cast<std::int32_t>(v);
  }
  return parent;
}

namespace {

// Dyck words of length 2m with '(' before ')': each step down creates the next
// preorder vertex as the last child of the current one.
void dyck(std::int64_t opens_left, std::int64_t depth, PlaneTree& tree,
          std::vector<std::int32_t>& path, const std::function<void(const PlaneTree&)>& visit) {
  if (opens_left == 0 && depth == 0) {
    visit(tree);
    return;
  }
  if (opens_left > 0) {
    const auto child = static_cast<std::int32_t>(tree.children.size());
    tree.children[static_cast<std::size_t>(path.back())].push_back(child);
    tree.children.emplace_back();
    path.push_back(child);
    dyck(opens_left - 1, depth + 1, tree, path, visit);
    path.pop_back();
    tree.children.pop_back();
    tree.children[static_cast<std::size_t>(path.back())].pop_back();
  }
  if (depth > 0) {
    const auto top = path.back();
    path.pop_back();
    dyck(opens_left, depth - 1, tree, path, visit);
    path.push_back(top);
  }
}

// One unit of census work: a tree plus an edge multiset, and how many of its
// rotation systems fall inside the work cap.
struct WorkItem {
  PlaneTree tree;
  EdgeMultiset added;
  std::uint64_t rotations = 0;
};

struct Plan {
  std::vector<WorkItem> items;
  std::uint64_t sequences = 0;
  bool truncated = false;
};

std::uint64_t saturating_count(const mpz_class& v) {
  return v.fits_ulong_p() ? v.get_ui() : UINT64_MAX;
}

// Walks the construction in its fixed order and keeps the first work_cap
// sequences. Layers are restricted to vertex counts in [min_n, max_n].
Plan plan_work(const ConstructionBudget& b, std::int64_t min_n, std::int64_t max_n,
               std::int64_t exact_h = -1) {
  Plan plan;
  for (std::int64_t n = min_n; n <= max_n && !plan.truncated; ++n) {
    const auto max_h = b.max_edges - (n - 1);
    if (max_h < 0) break;
    for_each_plane_tree(n, [&](const PlaneTree& tree) {
      if (plan.truncated) return;
      const std::int64_t h_lo = exact_h >= 0 ? exact_h : 0;
      const std::int64_t h_hi = exact_h >= 0 ? exact_h : max_h;
      for (std::int64_t h = h_lo; h <= h_hi && !plan.truncated; ++h) {
        for_each_edge_addition(tree, h, [&](const EdgeMultiset& added) {
          if (plan.truncated) return;
          const auto graph = build_graph(tree, added);
          const auto degrees = graph.degrees();
          if (std::any_of(degrees.begin(), degrees.end(),
                          [&](std::int64_t d) { return d > b.max_degree; })) {
            return;
          }
          const auto count = saturating_count(rotation_count(graph));
          const auto room = b.work_cap - plan.sequences;
          if (room == 0) {
            plan.truncated = true;
            return;
          }
          const auto take = std::min(count, room);
          plan.sequences += take;
          plan.items.push_back({tree, added, take});
          if (take < count) plan.truncated = true;
        });
      }
    });
  }
  return plan;
}

struct ClassSets {
  std::set<CanonicalCode> iso;
  std::set<CanonicalCode> filling;
  std::set<CanonicalCode> iso_unoriented;
  std::set<CanonicalCode> filling_unoriented;
  std::uint64_t genus_matches = 0;

  void merge(ClassSets&& other) {
    iso.merge(other.iso);
    filling.merge(other.filling);
    iso_unoriented.merge(other.iso_unoriented);
    filling_unoriented.merge(other.filling_unoriented);
    genus_matches += other.genus_matches;
  }
};

void process(const WorkItem& item, const ConstructionBudget& b, double genus_lower, ClassSets& out) {
  const auto graph = build_graph(item.tree, item.added);
  if (graph.dart_vertex.empty()) return;  // a lone vertex has no thickening
  const auto vertices = graph.vertices;
  const auto edges = static_cast<std::int64_t>(graph.dart_vertex.size() / 2);
  bool checked = false;
  for_each_rotation_system(
      graph,
      [&](const CombinatorialMap& map) {
        // Tree plus extra edges is always connected; a violation here is a bug.
        if (!checked && component_count(map) != 1) {
          throw std::logic_error("construction produced a disconnected graph");
        }
        checked = true;
        const auto chi = vertices - edges + face_count(map);
        if (chi % 2 != 0 || (2 - chi) / 2 != b.genus_target) return;
        ++out.genus_matches;
        auto code = canonical_form(map);
        if (out.iso.contains(code)) return;
        auto unoriented = std::min(code, canonical_form(mirror(map)));
        const auto cycle_rank = edges - vertices + 1;
        std::vector<EdgeId> all(static_cast<std::size_t>(edges));
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        const bool filling =
            static_cast<double>(cycle_rank) >= genus_lower && is_filling_subgraph(map, all);
        if (filling) {
          out.filling.insert(code);
          out.filling_unoriented.insert(unoriented);
        }
        out.iso.insert(std::move(code));
        out.iso_unoriented.insert(std::move(unoriented));
      },
      item.rotations);
}

}  // namespace

void for_each_plane_tree(std::int64_t n, const std::function<void(const PlaneTree&)>& visit) {
  if (n < 1) throw std::invalid_argument("a plane tree needs at least one vertex");
  PlaneTree tree;
  tree.children.emplace_back();
  std::vector<std::int32_t> path{0};
  dyck(n - 1, 0, tree, path, visit);
}

std::vector<PlaneTree> plane_trees(std::int64_t n) {
  std::vector<PlaneTree> out;
  for_each_plane_tree(n, [&](const PlaneTree& t) { out.push_back(t); });
  return out;
}

void for_each_edge_addition(std::int64_t n, std::int64_t h,
                            const std::function<void(const EdgeMultiset&)>& visit) {
  if (n < 1) throw std::invalid_argument("edge additions need at least one vertex");
  if (h < 0) throw std::invalid_argument("number of added edges must be non-negative");
  std::vector<VertexPair> pairs;
  for (std::int32_t i = 0; i < n; ++i) {
    for (std::int32_t j = i; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<std::size_t> idx(static_cast<std::size_t>(h), 0);
  EdgeMultiset current(static_cast<std::size_t>(h), pairs[0]);
  while (true) {
    for (std::size_t k = 0; k < idx.size(); ++k) current[k] = pairs[idx[k]];
    visit(current);
    // next non-decreasing index sequence
    std::size_t k = idx.size();
    while (k > 0 && idx[k - 1] + 1 == pairs.size()) --k;
    if (k == 0) return;
    const auto v = idx[k - 1] + 1;
    for (std::size_t j = k - 1; j < idx.size(); ++j) idx[j] = v;
  }
}

void for_each_edge_addition(const PlaneTree& tree, std::int64_t h,
                            const std::function<void(const EdgeMultiset&)>& visit) {
  for_each_edge_addition(static_cast<std::int64_t>(tree.vertex_count()), h, visit);
}

std::vector<std::int64_t> UnrotatedGraph::degrees() const {
  std::vector<std::int64_t> deg(static_cast<std::size_t>(vertices), 0);
  for (auto v : dart_vertex) ++deg[static_cast<std::size_t>(v)];
  return deg;
}

UnrotatedGraph build_graph(const PlaneTree& tree, const EdgeMultiset& added) {
  UnrotatedGraph g;
  g.vertices = static_cast<std::int64_t>(tree.vertex_count());
  const auto parent = tree.parents();
  for (std::size_t c = 1; c < parent.size(); ++c) {
    g.dart_vertex.push_back(parent[c]);
    g.dart_vertex.push_back(static_cast<std::int32_t>(c));
  }
  for (const auto& [u, v] : added) {
    if (u < 0 || v < 0 || u >= g.vertices || v >= g.vertices) {
      throw std::invalid_argument("added edge references a vertex outside the tree");
    }
    g.dart_vertex.push_back(u);
    g.dart_vertex.push_back(v);
  }
  return g;
}

mpz_class rotation_count(const UnrotatedGraph& graph) {
  mpz_class total = 1;
  for (auto d : graph.degrees()) {
    if (d < 2) continue;
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(d - 1));
    total *= f;
  }
  return total;
}

std::uint64_t for_each_rotation_system(const UnrotatedGraph& graph,
                                       const std::function<void(const CombinatorialMap&)>& visit,
                                       std::uint64_t limit) {
  if (limit == 0 || graph.dart_vertex.empty()) return 0;
  std::vector<std::vector<Dart>> at(static_cast<std::size_t>(graph.vertices));
  for (std::size_t d = 0; d < graph.dart_vertex.size(); ++d) {
    at[static_cast<std::size_t>(graph.dart_vertex[d])].push_back(static_cast<Dart>(d));
  }
  // Each vertex keeps its smallest dart first; the tail runs through all
  // permutations in lexicographic order.
  std::vector<std::size_t> active;
  for (std::size_t v = 0; v < at.size(); ++v) {
    if (!at[v].empty()) active.push_back(v);
  }

  Permutation sigma(graph.dart_vertex.size());
  std::uint64_t emitted = 0;
  while (true) {
    for (auto v : active) {
      const auto& order = at[v];
      for (std::size_t i = 0; i < order.size(); ++i) {
        sigma[static_cast<std::size_t>(order[i])] = order[(i + 1) % order.size()];
      }
    }
    visit(CombinatorialMap::with_standard_alpha(sigma));
    if (++emitted == limit) return emitted;
    // odometer, last vertex fastest
    std::size_t k = active.size();
    bool advanced = false;
    while (k > 0) {
      auto& order = at[active[k - 1]];
      if (std::next_permutation(order.begin() + 1, order.end())) {
        advanced = true;
        break;
      }
      --k;  // next_permutation wrapped this vertex back to sorted order
    }
    if (!advanced) return emitted;
  }
}

void require_valid(const ConstructionBudget& b) {
  if (b.max_vertices < 1 || b.max_edges < 1 || b.max_degree < 1 || b.work_cap < 1) {
    throw std::invalid_argument("budget caps must be positive");
  }
  if (b.genus_target < 0) throw std::invalid_argument("genus target must be non-negative");
}

double filling_genus_lower(std::int64_t genus) {
  if (genus < 2) return 0.0;
  const auto g = static_cast<double>(genus);
  return std::numbers::pi * std::sqrt(g * (g - 1.0)) / std::log(4.0 * g - 2.0);
}

Census generate_candidates(const ConstructionBudget& budget, const CensusOptions& options) {
  require_valid(budget);
  const auto started = std::chrono::steady_clock::now();
  const auto plan = plan_work(budget, 1, budget.max_vertices);
  const double genus_lower = filling_genus_lower(budget.genus_target);

  const unsigned workers =
      std::max(1U, std::min<unsigned>(options.workers, static_cast<unsigned>(plan.items.size())));
  std::vector<ClassSets> partial(workers);
  if (workers == 1) {
    for (const auto& item : plan.items) process(item, budget, genus_lower, partial[0]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = next++; i < plan.items.size(); i = next++) {
          process(plan.items[i], budget, genus_lower, partial[w]);
        }
      });
    }
  }
  ClassSets all;
  for (auto& p : partial) all.merge(std::move(p));

  Census census;
  census.budget = budget;
  census.result.sequences_counted = plan.sequences;
  census.result.truncated = plan.truncated;
  census.result.genus_matches = all.genus_matches;
  census.result.iso_classes = all.iso.size();
  census.result.filling_classes = all.filling.size();
  census.result.iso_classes_unoriented = all.iso_unoriented.size();
  census.result.filling_classes_unoriented = all.filling_unoriented.size();
  if (options.keep_representatives) {
    for (const auto& code : all.filling) census.representatives.push_back(decode_canonical(code));
  }
  census.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return census;
}

UpperBoundCheck census_upper_bound_check(const ConstructionBudget& budget) {
  require_valid(budget);
  UpperBoundCheck check;
  check.vertices = budget.max_vertices;
  check.added_edges = budget.max_edges - (budget.max_vertices - 1);
  if (check.added_edges < 0) {
    throw std::invalid_argument("max_edges is smaller than the tree on max_vertices vertices");
  }
  const auto plan = plan_work(budget, check.vertices, check.vertices, check.added_edges);
  if (plan.truncated) {
    throw std::invalid_argument("work_cap reached; the layer is too large for an exact comparison");
  }

  const auto n = check.vertices;
  const auto h = check.added_edges;
  std::uint64_t trees = 0;
  for_each_plane_tree(n, [&](const PlaneTree&) { ++trees; });
  check.trees = trees;
  check.tree_bound = bounds::catalan_exact(n - 1);
  std::uint64_t multisets = 0;
  for_each_edge_addition(n, h, [&](const EdgeMultiset&) { ++multisets; });
  check.edge_additions = multisets;

  check.denominator_arg = static_cast<std::int64_t>(std::floor(filling_genus_lower(budget.genus_target)));
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(2 * h));
  mpz_class denominator;
  mpz_fac_ui(denominator.get_mpz_t(), static_cast<unsigned long>(check.denominator_arg));
  check.edge_addition_bound = mpq_class(power, denominator);
  check.edge_addition_bound.canonicalize();

  mpz_class degree_factorial;
  mpz_fac_ui(degree_factorial.get_mpz_t(), static_cast<unsigned long>(budget.max_degree));
  mpz_pow_ui(check.rotation_bound.get_mpz_t(), degree_factorial.get_mpz_t(),
             static_cast<unsigned long>(n));

  check.max_rotations = 0;
  for (const auto& item : plan.items) {
    check.max_rotations = std::max(check.max_rotations, mpz_class(item.rotations));
  }
  check.sequences = plan.sequences;
  check.bound = mpq_class(check.tree_bound) * check.edge_addition_bound * mpq_class(check.rotation_bound);
  check.holds = mpq_class(check.sequences) <= check.bound;
  return check;
}

}  // namespace critbound::enumeration
