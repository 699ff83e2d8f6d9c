// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria. argv[1], when given, is the command-line binary used for
// the determinism check.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "critbound/bounds.hpp"
#include "critbound/combinatorial_map.hpp"
#include "critbound/enumeration.hpp"
#include "critbound/oracle.hpp"

using namespace critbound;
namespace bnd = critbound::bounds;
namespace enu = critbound::enumeration;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) { return cli::format_number(v); }

// (2n)! / (n! (n+1)!) as a falling product, independent of the library's binomial route.
mpz_class catalan_by_product(unsigned long n) {
  mpz_class num = 1;
  for (unsigned long k = n + 2; k <= 2 * n; ++k) num *= k;
  mpz_class den;
  mpz_fac_ui(den.get_mpz_t(), n);
  return num / den;
}

Outcome faces_vs_gluing() {
  Outcome o;
  std::size_t maps = 0;
  std::set<std::int64_t> genera;
  for (const auto& c : oracle::exhaustive_maps(4)) {
    ++maps;
    const auto traced = static_cast<std::int64_t>(trace_faces(c.representative).size());
    const auto s = surface_stats(c.representative);
    if (traced != oracle::gluing_face_count(c.representative) || s.chi % 2 != 0 || s.genus < 0) {
      o.pass = false;
    }
    genera.insert(s.genus);
  }
  // Labeled maps too, not only class representatives.
  std::size_t labeled = 0;
  for (std::int64_t e = 1; e <= 4; ++e) {
    oracle::for_each_labeled_map(e, true, [&](const CombinatorialMap& m) {
      if (component_count(m) != 1) return;
      ++labeled;
      if (face_count(m) != oracle::gluing_face_count(m)) o.pass = false;
    });
  }
  o.detail = std::to_string(maps) + " classes, " + std::to_string(labeled) +
             " labeled connected maps, genera 0.." + std::to_string(*genera.rbegin());
  return o;
}

Outcome plane_trees() {
  Outcome o;
  const auto cat = oracle::catalan_table(11);
  std::uint64_t last = 0;
  for (std::int64_t n = 1; n <= 12; ++n) {
    std::uint64_t count = 0;
    enu::for_each_plane_tree(n, [&](const enu::PlaneTree&) { ++count; });
    if (mpz_class(count) != cat[static_cast<std::size_t>(n - 1)]) o.pass = false;
    last = count;
  }
  o.pass = o.pass && last == 58786;
  o.detail = "n=1..12, n=12 gives " + std::to_string(last);
  return o;
}

Outcome catalan() {
  Outcome o;
  const auto table = oracle::catalan_table(2000);
  mpz_class four_pow = 1;
  for (std::int64_t n = 0; n <= 2000; ++n) {
    const auto c = bnd::catalan_exact(n);
    if (c != table[static_cast<std::size_t>(n)]) o.pass = false;
    if (n >= 1 && !(c < four_pow)) o.pass = false;
    four_pow *= 4;
  }
  const double n = 1e4;
  const double ln_cat = ln_big(bnd::catalan_exact(10000));
  const double asym = n * std::log(4.0) - 1.5 * std::log(n) - 0.5 * std::log(std::numbers::pi);
  const double rel = std::abs(ln_cat - asym) / ln_cat;
  o.pass = o.pass && rel < 0.01;
  o.detail = "exact match and Cat(n) < 4^n for n <= 2000; asymptotic rel error " + fmt(rel) + " at n=1e4";
  return o;
}

Outcome exact_vs_log() {
  Outcome o;
  const auto log_mode = bnd::prop33_bound({2, 0.0});
  const auto exact = bnd::prop33_bound({2, 0.0}, bnd::Rounding::kExact);
  if (!exact.value.exact) return {false, "exact value missing"};
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 5090, 30800);
  mpz_class rot;
  mpz_ui_pow_ui(rot.get_mpz_t(), 2, 5090);
  const bool factors = *exact.value.exact * 2 == catalan_by_product(5089) * power * rot;
  const double ln_exact = ln_big(*exact.value.exact);
  const double rel = std::abs(ln_exact - log_mode.value.ln) / log_mode.value.ln;
  o.pass = factors && rel < 1e-9;
  o.detail = "ln exact " + fmt(ln_exact) + ", ln log-mode " + fmt(log_mode.value.ln) + ", rel " + fmt(rel) +
             ", " + std::to_string(decimal_digits(*exact.value.exact)) + " digits";
  return o;
}

Outcome substitution() {
  Outcome o;
  double worst = 0;
  for (std::int64_t g : {2, 10, 100}) {
    const auto gd = static_cast<double>(g);
    const auto d = bnd::derived_params({g, bnd::max_systole(g)});
    const std::array<std::pair<double, double>, 3> pairs = {{
        {d.V0, 5090 * gd * gd * gd},
        {d.gGamma0, 15400 * gd * gd * gd},
        {d.deg0, std::pow(2.0, 1.25) * std::sqrt(gd)},
    }};
    for (const auto& [got, want] : pairs) worst = std::max(worst, std::abs(got - want) / want);
  }
  o.pass = worst <= 1e-12;
  o.detail = "g in {2,10,100}, worst rel error " + fmt(worst);
  return o;
}

Outcome chain() {
  Outcome o;
  std::vector<bnd::BoundParams> grid;
  for (auto g : cli::integer_values(cli::parse_grid("2:1000000:log"))) grid.push_back({g, bnd::max_systole(g)});
  const auto sweep = bnd::sweep_chain(grid, 2);
  std::ostringstream d;
  d << grid.size() << " points at L=ln(2g^2);";
  for (const std::string id : {"i_catalan", "ii_edge_choices", "iv_prop33_vs_thm34", "v_thm35"}) {
    for (const auto& s : sweep.summary) {
      if (s.id != id) continue;
      if (!s.holds_from) {
        o.pass = false;
        d << ' ' << id << " never settles;";
      } else {
        d << ' ' << id << " holds from g=" << s.holds_from->g << ';';
      }
    }
  }

  std::vector<bnd::BoundParams> small;
  for (int i = 0; i <= 60; ++i) small.push_back({2, 0.01 * i});
  const auto fixed = bnd::sweep_chain(small, 1);
  bool found = false;
  for (const auto& s : fixed.summary) {
    if (s.id != "iii_rotations") continue;
    for (const auto& w : s.failure_windows) {
      d << " iii fails on L in [" << fmt(w.first.L) << ", " << fmt(w.last.L) << "] at g=2";
      found = w.first.L > 0 && w.last.L < 0.45 && w.last.L > 0.4;
    }
  }
  const auto at = bnd::verify_chain({2, 0.2}).entry("iii_rotations");
  const double deg0 = bnd::derived_params({2, 0.2}).deg0;
  d << "; at L=0.2 deg0=" << fmt(deg0) << ", per vertex 6 > " << fmt(std::pow(deg0, deg0));
  o.pass = o.pass && found && !at.holds;
  o.detail = d.str();
  return o;
}

Outcome euler() {
  Outcome o;
  o.pass = bnd::euler_char_moduli(2) == mpq_class(-1, 240) && bnd::euler_char_moduli(3) == mpq_class(1, 1008);
  double worst = 0;
  for (std::int64_t g = 50; g <= 150; ++g) {
    const auto chi = bnd::euler_char_moduli(g);
    const double ln_abs = ln_big(abs(chi.get_num())) - ln_big(chi.get_den());
    worst = std::max(worst, std::abs(ln_abs - bnd::chi_asymptotic(g).ln) / std::abs(ln_abs));
  }
  o.pass = o.pass && worst < 0.01;
  o.detail = "chi(2) = " + bnd::euler_char_moduli(2).get_str() + ", chi(3) = " + bnd::euler_char_moduli(3).get_str() +
             ", worst asymptotic rel error on g=50..150 " + fmt(worst);
  return o;
}

Outcome gap() {
  Outcome o;
  const auto genera = cli::integer_values(cli::parse_grid("2:1000000:log"));
  const auto r = bnd::gap_report(genera, 10.0);
  double worst = 0;
  for (const auto& row : r.rows) worst = std::max(worst, row.quotient);
  o.pass = r.all_within && r.beta_prime > 0 && worst <= bnd::kGapExponent;
  std::ostringstream d;
  d << "beta'=" << fmt(r.beta_prime) << ", max quotient " << fmt(worst) << " over " << r.rows.size()
    << " genera; lower/upper ln ratio g=" << r.rows.front().g << ": " << fmt(r.rows.front().ratio)
    << ", g=" << r.rows.back().g << ": " << fmt(r.rows.back().ratio);
  o.detail = d.str();
  return o;
}

Outcome census() {
  Outcome o;
  enu::ConstructionBudget b;
  b.genus_target = 1;
  b.max_vertices = 1;
  b.max_edges = 2;
  b.max_degree = 4;
  const auto torus = enu::generate_candidates(b);
  o.pass = torus.result.filling_classes == 1;
  std::ostringstream d;
  d << "genus 1, 1 vertex, 2 edges: " << torus.result.filling_classes << " filling class;";
  for (std::int64_t genus = 0; genus <= 2; ++genus) {
    enu::ConstructionBudget full;
    full.genus_target = genus;
    full.max_edges = 3;
    full.max_vertices = 4;
    full.max_degree = 6;
    const auto one = enu::generate_candidates(full, {1, true});
    const auto many = enu::generate_candidates(full, {4, true});
    for (const auto& m : one.representatives) {
      if (!validate(m).ok() || surface_stats(m).genus != genus || m.edge_count() > 3) o.pass = false;
    }
    if (one.result.iso_classes != many.result.iso_classes ||
        one.result.filling_classes != many.result.filling_classes ||
        one.result.sequences_counted != many.result.sequences_counted ||
        one.representatives != many.representatives) {
      o.pass = false;
    }
    d << " genus " << genus << ": " << one.result.filling_classes << " classes";
  }
  d << " (E<=3, 1 and 4 workers agree)";
  o.detail = d.str();
  return o;
}

std::string capture(const std::string& command) {
  std::string out;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) return out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = ::pclose(pipe);
  out += "\nexit=" + std::to_string(status);
  return out;
}

Outcome determinism(const std::string& binary) {
  Outcome o;
  const std::vector<std::string> commands = {
      "bound --g 2 --L 0",
      "bound --g 2 --L 0 --rounding exact --format csv",
      "sweep --g-grid 2:1000:log:20 --L-grid 0:10:lin:5 --workers 3",
      "verify-chain --g-grid 2:1000000:log --L auto --workers 2",
      "census --genus 1 --max-edges 3 --workers 3 --check-bound",
      "euler-char --g-grid 2:30:lin",
      "gap --L 10",
  };
  std::size_t identical = 0;
  for (const auto& c : commands) {
    std::string first;
    std::string second;
    if (binary.empty()) {
      std::vector<std::string> args = {"critbound"};
      std::istringstream in(c);
      for (std::string w; in >> w;) args.push_back(w);
      args.push_back("--no-timestamp");
      std::ostringstream a, b, err;
      cli::run(args, a, err);
      cli::run(args, b, err);
      first = a.str();
      second = b.str();
    } else {
      first = capture(binary + " " + c + " --no-timestamp");
      second = capture(binary + " " + c + " --no-timestamp");
    }
    if (first == second && first.size() > 20) {
      ++identical;
    } else {
      o.pass = false;
    }
  }
  o.detail = std::to_string(identical) + "/" + std::to_string(commands.size()) + " commands byte-identical" +
             (binary.empty() ? " (in process)" : "");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string binary = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"face tracing vs gluing, E <= 4", faces_vs_gluing},
      {"plane-tree census n = 1..12", plane_trees},
      {"Catalan machinery", catalan},
      {"exact/log agreement at g=2, L=0", exact_vs_log},
      {"substitution at maximal systole", substitution},
      {"proof chain sweep and failure window", chain},
      {"Euler characteristic", euler},
      {"gap at L = 10", gap},
      {"desk-scale filling census", census},
      {"CLI determinism", [&] { return determinism(binary); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu: %s [%.2fs] %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures;
}
