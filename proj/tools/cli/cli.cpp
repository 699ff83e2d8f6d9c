#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "critbound/bounds.hpp"
#include "critbound/enumeration.hpp"
#include "critbound/map_io.hpp"

namespace critbound::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace bnd = critbound::bounds;
namespace enu = critbound::enumeration;

constexpr const char* kDigitCapEnv = "CRITBOUND_DIGIT_CAP";

// Numbers go through the same 15-significant-digit rendering in JSON and CSV.
Json number(double value) {
  if (!std::isfinite(value)) return nullptr;
  const double rounded = std::strtod(format_number(value).c_str(), nullptr);
  if (std::abs(rounded) < 1e15 && rounded == std::nearbyint(rounded)) {
    return static_cast<std::int64_t>(rounded);
  }
  return rounded;
}

Json params_json(const bnd::BoundParams& p) {
  Json j;
  j["g"] = p.g;
  j["L"] = number(p.L);
  return j;
}

Json chain_entry_json(const bnd::ChainEntry& e) {
  Json j;
  j["id"] = e.id;
  j["description"] = e.description;
  j["lhs_ln"] = number(e.lhs_ln);
  j["rhs_ln"] = number(e.rhs_ln);
  j["margin_ln"] = number(e.margin_ln);
  j["holds"] = e.holds;
  return j;
}

Json chain_json(const bnd::ChainReport& r) {
  Json arr = Json::array();
  for (const auto& e : r.entries) arr.push_back(chain_entry_json(e));
  return arr;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Common {
  std::string format = "json";
  std::string output;
  bool no_timestamp = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--output,-o", c.output, "Write the report to this file instead of stdout");
  cmd->add_flag("--no-timestamp", c.no_timestamp, "Omit wall-clock fields for reproducible output");
}

class Sink {
 public:
  Sink(const Common& c, std::ostream& fallback) : fallback_(fallback) {
    if (!c.output.empty()) {
      file_.open(c.output);
      if (!file_) throw UsageError("cannot open output file " + c.output);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void emit_json(Json j, const Common& c, std::ostream& out) {
  if (!c.no_timestamp) j["generated_at"] = timestamp();
  Sink sink(c, out);
  sink.stream() << j.dump(2) << '\n';
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += cells[i];
  }
  return row;
}

std::size_t digit_cap_default() {
  if (const char* env = std::getenv(kDigitCapEnv)) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw UsageError(std::string(kDigitCapEnv) + " is not a number");
    }
  }
  return bnd::kDefaultDigitCap;
}

// ------------------------------------------------------ genus/L handling

struct Axes {
  std::optional<std::int64_t> g;
  std::string g_grid;
  std::string L;  // number or "auto"
  std::string L_grid;
};

void add_axes(CLI::App* cmd, Axes& a) {
  cmd->add_option("--g", a.g, "Genus (>= 2)");
  cmd->add_option("--g-grid", a.g_grid, "Genus grid start:stop:lin|log[:count]");
  cmd->add_option("--L", a.L, "Systole bound, or 'auto' for ln(2 g^2)");
  cmd->add_option("--L-grid", a.L_grid, "Systole grid start:stop:lin|log[:count]");
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("malformed " + what + ": '" + text + "'");
  }
}

std::vector<bnd::BoundParams> expand(const Axes& a, bool allow_grids) {
  if (a.g && !a.g_grid.empty()) throw UsageError("give either --g or --g-grid, not both");
  if (!a.L.empty() && !a.L_grid.empty()) throw UsageError("give either --L or --L-grid, not both");
  if (!allow_grids && (!a.g_grid.empty() || !a.L_grid.empty())) {
    throw UsageError("this command takes a single --g and --L");
  }
  std::vector<std::int64_t> genera;
  if (a.g) {
    genera.push_back(*a.g);
  } else if (!a.g_grid.empty()) {
    genera = integer_values(parse_grid(a.g_grid));
  } else {
    throw UsageError("--g or --g-grid is required");
  }
  for (auto g : genera) {
    if (g < 2) throw UsageError("genus must be at least 2, got " + std::to_string(g));
  }

  std::vector<bnd::BoundParams> points;
  for (auto g : genera) {
    if (!a.L_grid.empty()) {
      for (double L : parse_grid(a.L_grid).values()) points.push_back({g, L});
    } else if (a.L.empty() || a.L == "auto") {
      points.push_back({g, bnd::max_systole(g)});
    } else {
      points.push_back({g, parse_double(a.L, "--L")});
    }
  }
  for (const auto& p : points) {
    if (!(p.L >= 0.0) || !std::isfinite(p.L)) throw UsageError("L must be finite and non-negative");
  }
  return points;
}

// --------------------------------------------------------------- commands

const std::vector<std::string> kSweepColumns = {"g",           "L",         "V0",       "gGamma0",
                                                "deg0",        "genus_lower", "prop33_ln", "thm34_ln",
                                                "thm35_ln"};

std::vector<double> sweep_values(const bnd::BoundParams& p) {
  const auto d = bnd::derived_params(p);
  return {static_cast<double>(p.g),
          p.L,
          d.V0,
          d.gGamma0,
          d.deg0,
          d.genus_lower,
          bnd::prop33_bound(p).value.ln,
          bnd::thm34_bound(p.g).bound.ln,
          bnd::thm35_bound(p).ln};
}

int cmd_bound(const Axes& axes, const std::string& rounding, std::size_t digit_cap, const Common& c,
              std::ostream& out) {
  const auto p = expand(axes, false).front();
  const auto d = bnd::derived_params(p);
  const auto mode = rounding == "exact" ? bnd::Rounding::kExact : bnd::Rounding::kLog;

  if (c.format == "csv") {
    Sink sink(c, out);
    sink.stream() << csv_row(kSweepColumns) << '\n';
    std::vector<std::string> cells;
    for (double v : sweep_values(p)) cells.push_back(format_number(v));
    sink.stream() << csv_row(cells) << '\n';
    return kOk;
  }

  Json j;
  j["command"] = "bound";
  j["g"] = p.g;
  j["L"] = number(p.L);
  j["V0"] = number(d.V0);
  j["gGamma0"] = number(d.gGamma0);
  j["deg0"] = number(d.deg0);
  j["genus_lower"] = number(d.genus_lower);
  j["r_disk"] = number(d.r_disk);
  j["F_bound"] = number(d.F_bound);
  j["G_bound"] = number(d.G_bound);
  j["E_bound"] = number(d.E_bound);
  j["rounding"] = rounding;

  try {
    const auto b = bnd::prop33_bound(p, mode, digit_cap);
    j["prop33_ln"] = number(b.value.ln);
    Json terms;
    terms["catalan_ln"] = number(b.terms.catalan);
    terms["edge_choices_ln"] = number(b.terms.edge_choices);
    terms["denominator_ln"] = number(b.terms.denominator);
    terms["rotations_ln"] = number(b.terms.rotations);
    j["prop33_terms"] = terms;
    if (b.value.exact) {
      j["prop33_exact"] = b.value.exact->get_str();
      j["prop33_exact_division"] = b.exact_division;
    }
  } catch (const bnd::DigitCapExceeded& e) {
    j["prop33_ln"] = number(e.log_value().ln);
    Json overflow;
    overflow["ln"] = number(e.log_value().ln);
    overflow["overflow"] = true;
    j["prop33_exact"] = overflow;
  }
  j["thm34_ln"] = number(bnd::thm34_bound(p.g).bound.ln);
  j["thm35_ln"] = number(bnd::thm35_bound(p).ln);
  j["chain"] = chain_json(bnd::verify_chain(p));
  emit_json(std::move(j), c, out);
  return kOk;
}

int cmd_sweep(const Axes& axes, unsigned workers, const Common& c, std::ostream& out) {
  const auto points = expand(axes, true);
  std::vector<std::vector<double>> rows(points.size());
  {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    const unsigned n = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(points.size())));
    for (unsigned w = 0; w < n; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < points.size(); i = next++) rows[i] = sweep_values(points[i]);
      });
    }
  }
  if (c.format == "csv") {
    Sink sink(c, out);
    sink.stream() << csv_row(kSweepColumns) << '\n';
    for (const auto& row : rows) {
      std::vector<std::string> cells;
      for (double v : row) cells.push_back(format_number(v));
      sink.stream() << csv_row(cells) << '\n';
    }
    return kOk;
  }
  Json j;
  j["command"] = "sweep";
  Json arr = Json::array();
  for (const auto& row : rows) {
    Json r;
    for (std::size_t k = 0; k < kSweepColumns.size(); ++k) r[kSweepColumns[k]] = number(row[k]);
    arr.push_back(r);
  }
  j["rows"] = arr;
  emit_json(std::move(j), c, out);
  return kOk;
}

int cmd_verify_chain(const Axes& axes, unsigned workers, bool strict, const Common& c,
                     std::ostream& out) {
  const auto points = expand(axes, true);
  const auto report = bnd::sweep_chain(points, workers);
  bool all_hold = true;
  for (const auto& p : report.points) all_hold = all_hold && p.all_hold;

  if (c.format == "csv") {
    Sink sink(c, out);
    sink.stream() << "g,L,id,lhs_ln,rhs_ln,margin_ln,holds\n";
    for (const auto& point : report.points) {
      for (const auto& e : point.entries) {
        sink.stream() << csv_row({std::to_string(point.params.g), format_number(point.params.L), e.id,
                                  format_number(e.lhs_ln), format_number(e.rhs_ln),
                                  format_number(e.margin_ln), e.holds ? "1" : "0"})
                      << '\n';
      }
    }
  } else {
    Json j;
    j["command"] = "verify-chain";
    j["all_hold"] = all_hold;
    j["all_hold_from"] = report.all_hold_from ? params_json(*report.all_hold_from) : Json(nullptr);
    Json summary = Json::array();
    for (const auto& s : report.summary) {
      Json row;
      row["id"] = s.id;
      row["failures"] = s.failures;
      row["holds_from"] = s.holds_from ? params_json(*s.holds_from) : Json(nullptr);
      Json windows = Json::array();
      for (const auto& w : s.failure_windows) {
        Json win;
        win["from"] = params_json(w.first);
        win["to"] = params_json(w.last);
        windows.push_back(win);
      }
      row["failure_windows"] = windows;
      summary.push_back(row);
    }
    j["summary"] = summary;
    Json pts = Json::array();
    for (const auto& point : report.points) {
      Json pj = params_json(point.params);
      pj["all_hold"] = point.all_hold;
      pj["chain"] = chain_json(point);
      pts.push_back(pj);
    }
    j["points"] = pts;
    emit_json(std::move(j), c, out);
  }
  return strict && !all_hold ? kChainFailure : kOk;
}

struct CensusArgs {
  std::int64_t genus = 0;
  std::int64_t max_edges = 0;
  std::optional<std::int64_t> max_vertices;
  std::optional<std::int64_t> max_degree;
  std::uint64_t work_cap = 10'000'000;
  unsigned workers = 1;
  std::string dump_maps;
  bool check_bound = false;
};

std::string big(const mpz_class& v) { return v.get_str(); }
std::string big(const mpq_class& v) { return v.get_str(); }

int cmd_census(const CensusArgs& a, const Common& c, std::ostream& out) {
  enu::ConstructionBudget budget;
  budget.genus_target = a.genus;
  budget.max_edges = a.max_edges;
  budget.max_vertices = a.max_vertices.value_or(a.max_edges + 1);
  budget.max_degree = a.max_degree.value_or(2 * a.max_edges);
  budget.work_cap = a.work_cap;
  try {
    enu::require_valid(budget);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const auto census =
      enu::generate_candidates(budget, {a.workers, !a.dump_maps.empty()});
  if (!a.dump_maps.empty()) {
    std::ofstream dump(a.dump_maps);
    if (!dump) throw UsageError("cannot open map dump file " + a.dump_maps);
    write_maps(dump, census.representatives);
  }
  std::optional<enu::UpperBoundCheck> check;
  if (a.check_bound) {
    try {
      check = enu::census_upper_bound_check(budget);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--check-bound: ") + e.what());
    }
  }

  const auto& r = census.result;
  if (c.format == "csv") {
    Sink sink(c, out);
    sink.stream() << "genus,max_vertices,max_edges,max_degree,work_cap,sequences_counted,iso_classes,"
                     "filling_classes,iso_classes_unoriented,filling_classes_unoriented,truncated\n";
    sink.stream() << csv_row({std::to_string(budget.genus_target), std::to_string(budget.max_vertices),
                              std::to_string(budget.max_edges), std::to_string(budget.max_degree),
                              std::to_string(budget.work_cap), std::to_string(r.sequences_counted),
                              std::to_string(r.iso_classes), std::to_string(r.filling_classes),
                              std::to_string(r.iso_classes_unoriented),
                              std::to_string(r.filling_classes_unoriented), r.truncated ? "1" : "0"})
                  << '\n';
    return kOk;
  }

  Json j;
  j["command"] = "census";
  Json b;
  b["genus_target"] = budget.genus_target;
  b["max_vertices"] = budget.max_vertices;
  b["max_edges"] = budget.max_edges;
  b["max_degree"] = budget.max_degree;
  b["work_cap"] = budget.work_cap;
  j["budget"] = b;
  j["sequences_counted"] = r.sequences_counted;
  j["genus_matches"] = r.genus_matches;
  j["iso_classes"] = r.iso_classes;
  j["filling_classes"] = r.filling_classes;
  j["iso_classes_unoriented"] = r.iso_classes_unoriented;
  j["filling_classes_unoriented"] = r.filling_classes_unoriented;
  j["truncated"] = r.truncated;
  if (check) {
    Json cj;
    cj["vertices"] = check->vertices;
    cj["added_edges"] = check->added_edges;
    cj["trees"] = big(check->trees);
    cj["tree_bound"] = big(check->tree_bound);
    cj["edge_additions"] = big(check->edge_additions);
    cj["edge_addition_bound"] = big(check->edge_addition_bound);
    cj["max_rotations"] = big(check->max_rotations);
    cj["rotation_bound"] = big(check->rotation_bound);
    cj["sequences"] = big(check->sequences);
    cj["bound"] = big(check->bound);
    cj["holds"] = check->holds;
    j["upper_bound_check"] = cj;
  }
  if (!c.no_timestamp) j["wall_time_seconds"] = number(census.wall_time_seconds);
  emit_json(std::move(j), c, out);
  return kOk;
}

int cmd_euler_char(const Axes& axes, const Common& c, std::ostream& out) {
  if (!axes.L.empty() || !axes.L_grid.empty()) throw UsageError("euler-char takes no systole bound");
  std::vector<std::int64_t> genera;
  if (axes.g && !axes.g_grid.empty()) throw UsageError("give either --g or --g-grid, not both");
  if (axes.g) {
    genera.push_back(*axes.g);
  } else if (!axes.g_grid.empty()) {
    genera = integer_values(parse_grid(axes.g_grid));
  } else {
    throw UsageError("--g or --g-grid is required");
  }
  for (auto g : genera) {
    if (g < 2) throw UsageError("genus must be at least 2, got " + std::to_string(g));
  }

  struct Row {
    std::int64_t g;
    std::string chi;
    std::string bernoulli;
    double ln_abs;
    double asymptotic_ln_abs;
  };
  std::vector<Row> rows;
  for (auto g : genera) {
    const auto chi = bnd::euler_char_moduli(g);
    rows.push_back({g, chi.get_str(), bnd::bernoulli(2 * g).get_str(),
                    ln_big(chi.get_den()) > 0 ? ln_big(abs(chi.get_num())) - ln_big(chi.get_den())
                                              : ln_big(abs(chi.get_num())),
                    bnd::chi_asymptotic(g).ln});
  }
  if (c.format == "csv") {
    Sink sink(c, out);
    sink.stream() << "g,chi,bernoulli_2g,ln_abs_chi,asymptotic_ln_abs_chi\n";
    for (const auto& r : rows) {
      sink.stream() << csv_row({std::to_string(r.g), r.chi, r.bernoulli, format_number(r.ln_abs),
                                format_number(r.asymptotic_ln_abs)})
                    << '\n';
    }
    return kOk;
  }
  Json j;
  j["command"] = "euler-char";
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json rj;
    rj["g"] = r.g;
    rj["chi"] = r.chi;
    rj["bernoulli_2g"] = r.bernoulli;
    rj["ln_abs_chi"] = number(r.ln_abs);
    rj["asymptotic_ln_abs_chi"] = number(r.asymptotic_ln_abs);
    arr.push_back(rj);
  }
  j["values"] = arr;
  emit_json(std::move(j), c, out);
  return kOk;
}

int cmd_gap(const std::string& L_text, const std::string& g_grid, const Common& c, std::ostream& out) {
  const double L = parse_double(L_text, "--L");
  if (!(L >= 0.0) || !std::isfinite(L)) throw UsageError("L must be finite and non-negative");
  const auto genera = integer_values(parse_grid(g_grid));
  for (auto g : genera) {
    if (g < 2) throw UsageError("genus must be at least 2, got " + std::to_string(g));
  }
  bnd::GapReport report;
  try {
    report = bnd::gap_report(genera, L);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  if (c.format == "csv") {
    Sink sink(c, out);
    sink.stream() << "g,L,upper_ln,lower_ln,ratio,quotient,within\n";
    for (const auto& r : report.rows) {
      sink.stream() << csv_row({std::to_string(r.g), format_number(report.L), format_number(r.upper_ln),
                                format_number(r.lower_ln), format_number(r.ratio),
                                format_number(r.quotient), r.within ? "1" : "0"})
                    << '\n';
    }
    return kOk;
  }
  Json j;
  j["command"] = "gap";
  j["L"] = number(report.L);
  j["beta_prime"] = number(report.beta_prime);
  j["exponent_cap"] = number(bnd::kGapExponent);
  j["lower_beta"] = 1;
  j["all_within"] = report.all_within;
  Json arr = Json::array();
  for (const auto& r : report.rows) {
    Json rj;
    rj["g"] = r.g;
    rj["upper_ln"] = number(r.upper_ln);
    rj["lower_ln"] = number(r.lower_ln);
    rj["ratio"] = number(r.ratio);
    rj["quotient"] = number(r.quotient);
    rj["within"] = r.within;
    arr.push_back(rj);
  }
  j["rows"] = arr;
  emit_json(std::move(j), c, out);
  return kOk;
}

}  // namespace

std::vector<double> Grid::values() const {
  std::vector<double> v;
  if (count == 1 || start == stop) return {start};
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    if (i + 1 == count) {
      v.push_back(stop);
    } else if (logarithmic) {
      v.push_back(std::exp(std::log(start) + t * (std::log(stop) - std::log(start))));
    } else {
      v.push_back(start + t * (stop - start));
    }
  }
  return v;
}

Grid parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() < 3 || parts.size() > 4) {
    throw UsageError("malformed grid '" + text + "', expected start:stop:lin|log[:count]");
  }
  Grid g;
  g.start = parse_double(parts[0], "grid start");
  g.stop = parse_double(parts[1], "grid stop");
  if (parts[2] == "log") {
    g.logarithmic = true;
  } else if (parts[2] != "lin") {
    throw UsageError("grid spacing must be lin or log, got '" + parts[2] + "'");
  }
  if (parts.size() == 4) {
    const double count = parse_double(parts[3], "grid count");
    if (count < 1 || count != std::floor(count) || count > 1e6) {
      throw UsageError("grid count must be an integer in [1, 1e6]");
    }
    g.count = static_cast<std::size_t>(count);
  }
  if (!std::isfinite(g.start) || !std::isfinite(g.stop) || g.start > g.stop) {
    throw UsageError("grid needs finite start <= stop");
  }
  if (g.logarithmic && g.start <= 0) throw UsageError("log grid needs a positive start");
  return g;
}

std::vector<std::int64_t> integer_values(const Grid& grid) {
  std::vector<std::int64_t> out;
  for (double v : grid.values()) {
    const auto r = static_cast<std::int64_t>(std::llround(v));
    if (out.empty() || out.back() != r) out.push_back(r);
  }
  return out;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact ribbon-graph census and bound calculator for critical points of the systole"};
  app.require_subcommand(1);

  Common common;
  Axes axes;
  std::string rounding = "log";
  std::size_t digit_cap = 0;
  unsigned workers = 1;
  bool strict = false;
  CensusArgs census;
  std::string gap_L = "10";
  std::string gap_grid = "2:1000000:log";

  auto* bound = app.add_subcommand("bound", "Derived parameters, counting bound and proof chain at one (g, L)");
  add_axes(bound, axes);
  add_common(bound, common);
  bound->add_option("--rounding", rounding, "log: real parameters; exact: ceiled parameters, big integer")
      ->check(CLI::IsMember({"log", "exact"}));
  bound->add_option("--digit-cap", digit_cap, "Largest exact integer printed, in decimal digits");

  auto* sweep = app.add_subcommand("sweep", "Bound values over a grid of (g, L)");
  add_axes(sweep, axes);
  add_common(sweep, common);
  sweep->add_option("--workers", workers, "Worker threads");

  auto* verify = app.add_subcommand("verify-chain", "Check every inequality of the proofs over a grid");
  add_axes(verify, axes);
  add_common(verify, common);
  verify->add_option("--workers", workers, "Worker threads");
  verify->add_flag("--strict", strict, "Exit with status 2 when any inequality fails");

  auto* cen = app.add_subcommand("census", "Exhaustive filling ribbon-graph census at desk scale");
  add_common(cen, common);
  cen->add_option("--genus", census.genus, "Target surface genus")->required();
  cen->add_option("--max-edges", census.max_edges, "Edge cap")->required();
  cen->add_option("--max-vertices", census.max_vertices, "Vertex cap (default max-edges + 1)");
  cen->add_option("--max-degree", census.max_degree, "Degree cap (default 2 * max-edges)");
  cen->add_option("--work-cap", census.work_cap, "Maximum construction sequences examined");
  cen->add_option("--workers", census.workers, "Worker threads");
  cen->add_option("--dump-maps", census.dump_maps, "Write filling class representatives to this file");
  cen->add_flag("--check-bound", census.check_bound,
                "Compare the top (vertices, edges) layer with the counting formula");

  auto* euler = app.add_subcommand("euler-char", "Exact orbifold Euler characteristic of M_g");
  add_axes(euler, axes);
  add_common(euler, common);

  auto* gap = app.add_subcommand("gap", "Upper bound at fixed L against the (beta g)^(g/3) lower bound");
  add_common(gap, common);
  gap->add_option("--L", gap_L, "Systole bound");
  gap->add_option("--g-grid", gap_grid, "Genus grid start:stop:lin|log[:count]");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*bound) {
      const auto cap = digit_cap ? digit_cap : digit_cap_default();
      if (cap < bnd::kMinDigitCap) {
        throw UsageError("digit cap must be at least " + std::to_string(bnd::kMinDigitCap));
      }
      return cmd_bound(axes, rounding, cap, common, out);
    }
    if (*sweep) return cmd_sweep(axes, workers, common, out);
    if (*verify) return cmd_verify_chain(axes, workers, strict, common, out);
    if (*cen) return cmd_census(census, common, out);
    if (*euler) return cmd_euler_char(axes, common, out);
    if (*gap) return cmd_gap(gap_L, gap_grid, common, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace critbound::cli
