#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "critbound/log_value.hpp"

// Bound calculator for the number of critical points of the systole function
// on the moduli space of genus-g surfaces. Every "log" is a natural log, and
// every big quantity travels as a LogValue.
namespace critbound::bounds {

inline constexpr std::size_t kDefaultDigitCap = 1'000'000;
inline constexpr std::size_t kMinDigitCap = 1'000;

/// Genus g >= 2 and systole bound L >= 0.
struct BoundParams {
  std::int64_t g = 2;
  double L = 0.0;
};

void require_valid(const BoundParams& p);

struct DerivedParams {
  double V0 = 0;           // 2545 g e^L, vertex bound
  double gGamma0 = 0;      // 7700 g e^L, graph genus bound
  double deg0 = 0;         // 2 e^{L/4}, degree bound
  double genus_lower = 0;  // pi sqrt(g(g-1)) / ln(4g-2), filling lower bound
  double r_disk = 0;       // arcsinh(1 / (2 sinh(L/4))); +inf at L = 0
  double F_bound = 0;      // 16 (g-1) e^{L/2}, disks needed to cover
  double G_bound = 0;      // 17.83 e^{L/4}, systoles through one disk
  double E_bound = 0;      // 3 V0 + 6g - 6
};

DerivedParams derived_params(const BoundParams& p);

/// ln(2 g^2): no genus-g hyperbolic surface has a longer systole.
double max_systole(std::int64_t g);

// ---------------------------------------------------------------- Catalan

/// binomial(2n, n) / (n + 1).
mpz_class catalan_exact(std::int64_t n);

/// ln Cat(n) through log-gamma, valid for real n >= 0. Large n switches to the
/// Stirling series of the central binomial so the result keeps full relative
/// precision.
double ln_catalan(double n);
LogValue catalan_log(std::int64_t n);

/// n ln 4 - ln Cat(n), evaluated without cancellation (n >= 1).
double ln_four_pow_over_catalan(double n);

// ------------------------------------------------------- counting bound

enum class Rounding {
  kLog,    // real parameters, log-gamma
  kExact,  // parameters ceiled to integers, big-integer product
};

/// The four factors of the counting bound, in ln.
struct CountingTerms {
  double catalan = 0;      // ln Cat(V0 - 1)
  double edge_choices = 0;  // 2 gGamma0 ln V0
  double denominator = 0;  // ln(floor(genus_lower)!)
  double rotations = 0;    // V0 ln(ceil(deg0)!)
  double total() const { return catalan + edge_choices - denominator + rotations; }
};

struct CountingBound {
  Rounding rounding = Rounding::kLog;
  LogValue value;
  CountingTerms terms;
  // Parameters as they entered the evaluation (ceiled in exact mode).
  double vertices = 0;
  double graph_genus = 0;
  std::int64_t denominator_arg = 0;
  std::int64_t degree_arg = 0;
  // Exact mode divides by floor(genus_lower)! rounding up; false when the
  // division was not exact.
  bool exact_division = true;
};

class DigitCapExceeded : public std::runtime_error {
 public:
  DigitCapExceeded(LogValue value, double digits, std::size_t cap);
  const LogValue& log_value() const noexcept { return value_; }
  double digits() const noexcept { return digits_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  LogValue value_;
  double digits_;
  std::size_t cap_;
};

/// Cat(V0-1) V0^{2 gGamma0} / floor(genus_lower)! * (ceil(deg0)!)^{V0}.
/// Exact mode throws DigitCapExceeded (carrying the log-domain value) when
/// the integer would have more than `digit_cap` decimal digits.
CountingBound prop33_bound(const BoundParams& p, Rounding rounding = Rounding::kLog,
                           std::size_t digit_cap = kDefaultDigitCap);

// -------------------------------------------------- genus-only bound

struct GenusOnlyBound {
  LogValue bound;            // (6g)^{6054 g^{7/2}}
  LogValue catalan;          // 4^{5090 g^3}
  LogValue edge_choices;     // (5090 g^3)^{15400 g^3}
  LogValue rotations_exact;  // (2^{5/4} g^{1/2})^{2^{5/4} g^{1/2} 5090 g^3}
  LogValue rotations;        // (5.6 g)^{6053.1 g^{7/2}}
};

GenusOnlyBound thm34_bound(std::int64_t g);

// ----------------------------------------------- bounded-systole bound

struct SystoleBoundConstants {
  double c1 = 200000;
  double c2 = 5040;
  double c3 = 15400;
  double c4 = 1300;
};

/// ln of (2^{c1 g e^L} 2^{c2 g e^{5L/4}}) ((e^L)^{c3 g e^L} (e^L)^{c4 g e^{5L/4}}) g^{c3 g e^L}.
LogValue thm35_bound(const BoundParams& p, const SystoleBoundConstants& c = {});

/// The same expression with the constants of the last line of the proof
/// (189890, 5040, 15400, 1273).
LogValue thm35_final_line(const BoundParams& p);

/// ln of 4^{2545 g e^L - 1} (2545 g e^L)^{15400 g e^L} (2 e^{L/4})^{k g e^{5L/4}}
/// with k = rotation_exponent (5040 as printed; 5090 = 2 * 2545 recomputed).
LogValue thm35_proof_product(const BoundParams& p, double rotation_exponent = 5040);

/// (2546 g e^L)^{15401 g e^L}.
LogValue thm35_compact(const BoundParams& p);

// ----------------------------------------------------------- verifier

struct ChainEntry {
  std::string id;
  std::string description;
  double lhs_ln = 0;
  double rhs_ln = 0;
  double margin_ln = 0;  // rhs - lhs, computed without cancellation where possible
  bool holds = false;
};

inline constexpr double kChainSlack = 1e-12;

struct ChainReport {
  BoundParams params;
  std::vector<ChainEntry> entries;
  bool all_hold = true;

  const ChainEntry& entry(const std::string& id) const;
};

ChainReport verify_chain(const BoundParams& p);

/// Ids of the inequalities checked by verify_chain, in report order.
const std::vector<std::string>& chain_ids();

struct FailureWindow {
  BoundParams first;
  BoundParams last;
};

struct InequalitySummary {
  std::string id;
  std::size_t failures = 0;
  // First grid point from which the inequality holds through the end of the
  // sweep; empty when the last point fails.
  std::optional<BoundParams> holds_from;
  std::vector<FailureWindow> failure_windows;
};

struct SweepReport {
  std::vector<ChainReport> points;
  std::vector<InequalitySummary> summary;
  // First grid point from which every inequality holds onward.
  std::optional<BoundParams> all_hold_from;
};

/// Runs verify_chain on each point (in parallel when workers > 1); the report
/// is in grid order regardless.
SweepReport sweep_chain(const std::vector<BoundParams>& grid, unsigned workers = 1);

// --------------------------------------------- Euler characteristic

/// Bernoulli number B_n (B_1 = -1/2) by the exact recurrence
/// sum_{k=0}^{n} C(n+1, k) B_k = 0, memoised.
mpq_class bernoulli(std::int64_t n);

/// B_{2g} / (4 g (g - 1)).
mpq_class euler_char_moduli(std::int64_t g);

/// ln of sqrt(pi) / (sqrt(g) (g-1)) (g / (pi e))^{2g}, the large-g size of
/// |chi(M_g)|.
LogValue chi_asymptotic(std::int64_t g);

// --------------------------------------------------------- lower bound

/// ln of (beta g)^{g/3}.
LogValue fbr_lower(std::int64_t g, double beta);

inline constexpr double kGapExponent = 4e8;
inline constexpr double kGapSystole = 10.0;

struct GapRow {
  std::int64_t g = 0;
  double upper_ln = 0;     // thm35_bound at L
  double lower_ln = 0;     // fbr_lower(g, 1)
  double ratio = 0;        // lower_ln / upper_ln
  double quotient = 0;     // upper_ln / (g ln(beta' g))
  bool within = false;     // quotient <= 4e8
};

struct GapReport {
  double L = kGapSystole;
  double beta_prime = 0;
  std::vector<GapRow> rows;
  bool all_within = true;
};

/// Smallest beta' (up to a 1e-9 relative margin) with
/// ln thm35_bound(g, L) <= 4e8 g ln(beta' g) for every g >= 2.
double gap_beta_prime(double L = kGapSystole);

GapReport gap_report(const std::vector<std::int64_t>& genera, double L = kGapSystole);

}  // namespace critbound::bounds
