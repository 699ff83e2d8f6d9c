#include <doctest.h>

#include <cmath>
#include <numbers>

#include "critbound/bounds.hpp"
#include "critbound/oracle.hpp"

using namespace critbound;
using namespace critbound::bounds;
using doctest::Approx;

namespace {

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

// (2n)! / (n! (n+1)!) as a falling product; the recurrence is too slow at n ~ 5000.
mpz_class catalan_by_product(unsigned long n) {
  mpz_class num = 1;
  for (unsigned long k = n + 2; k <= 2 * n; ++k) num *= k;
  mpz_class den;
  mpz_fac_ui(den.get_mpz_t(), n);
  return num / den;
}

}  // namespace

TEST_CASE("log helpers") {
  CHECK(ln_big(mpz_class(1)) == 0.0);
  mpz_class huge;
  mpz_ui_pow_ui(huge.get_mpz_t(), 3, 100000);
  CHECK(rel_close(ln_big(huge), 100000 * std::log(3.0), 1e-14));
  CHECK(decimal_digits(mpz_class(0)) == 1);
  CHECK(decimal_digits(mpz_class(999)) == 3);
  CHECK(decimal_digits(mpz_class(1000)) == 4);
  CHECK(decimal_digits(mpz_class(-1000)) == 4);
  CHECK(ln_factorial(0) == 0.0);
  CHECK(ln_factorial(5) == Approx(std::log(120.0)));
  CHECK_THROWS(ln_big(mpz_class(0)));
  CHECK_THROWS(ln_factorial(-1));
}

TEST_CASE("derived parameters") {
  const auto d = derived_params({2, 0.0});
  CHECK(d.V0 == 5090);
  CHECK(d.gGamma0 == 15400);
  CHECK(d.deg0 == 2);
  CHECK(d.genus_lower == Approx(std::numbers::pi * std::sqrt(2.0) / std::log(6.0)).epsilon(1e-14));
  CHECK(std::isinf(d.r_disk));
  CHECK(d.F_bound == 16);
  CHECK(d.G_bound == Approx(17.83));
  CHECK(d.E_bound == 3 * 5090 + 6);

  CHECK(rel_close(derived_params({2, std::log(8.0)}).V0, 40720, 1e-14));
  CHECK(d.E_bound <= d.gGamma0);
  CHECK_THROWS_AS(derived_params({1, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(derived_params({2, -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(derived_params({2, NAN}), std::invalid_argument);
}

TEST_CASE("maximal systole substitution") {
  CHECK(max_systole(2) == Approx(std::log(8.0)));
  CHECK(max_systole(10) == Approx(std::log(200.0)));
  for (std::int64_t g : {2, 10, 100, 12345}) {
    const auto gd = static_cast<double>(g);
    const auto d = derived_params({g, max_systole(g)});
    CHECK(rel_close(d.V0, 5090 * gd * gd * gd, 1e-12));
    CHECK(rel_close(d.gGamma0, 15400 * gd * gd * gd, 1e-12));
    CHECK(rel_close(d.deg0, std::pow(2.0, 1.25) * std::sqrt(gd), 1e-12));
  }
  CHECK_THROWS_AS(max_systole(1), std::invalid_argument);
}

TEST_CASE("Catalan numbers") {
  CHECK(catalan_exact(0) == 1);
  CHECK(catalan_exact(1) == 1);
  CHECK(catalan_exact(3) == 5);
  CHECK(catalan_exact(4) == 14);
  CHECK_THROWS_AS(catalan_exact(-1), std::invalid_argument);

  const auto table = oracle::catalan_table(400);
  for (std::int64_t n = 0; n <= 400; ++n) {
    const auto c = catalan_exact(n);
    REQUIRE(c == table[static_cast<std::size_t>(n)]);
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), 2 * static_cast<unsigned long>(n), static_cast<unsigned long>(n));
    CHECK(c * (n + 1) == binom);
  }

  // Exact against log form, across the series threshold.
  for (std::int64_t n : {1, 2, 10, 63, 64, 65, 100, 1000, 5000, 10000}) {
    const double exact_ln = ln_big(catalan_exact(n));
    CHECK_MESSAGE(rel_close(catalan_log(n).ln, exact_ln, 1e-12), "n = " << n);
    CHECK(ln_four_pow_over_catalan(static_cast<double>(n)) ==
          Approx(static_cast<double>(n) * std::log(4.0) - exact_ln).epsilon(1e-9));
  }
  CHECK(ln_catalan(10000.0) == Approx(13848.555623203016886).epsilon(1e-14));
  CHECK(ln_catalan(0.0) == Approx(0.0));
}

TEST_CASE("counting bound at g = 2, L = 0") {
  const auto log_mode = prop33_bound({2, 0.0});
  CHECK(log_mode.value.ln == Approx(273447.92293865284647).epsilon(1e-13));
  CHECK(log_mode.denominator_arg == 2);
  CHECK(log_mode.degree_arg == 2);
  CHECK(log_mode.terms.denominator == Approx(std::log(2.0)));
  CHECK(log_mode.terms.rotations == Approx(5090 * std::log(2.0)));
  CHECK(log_mode.terms.edge_choices == Approx(30800 * std::log(5090.0)));

  const auto exact = prop33_bound({2, 0.0}, Rounding::kExact);
  REQUIRE(exact.value.exact);
  CHECK(exact.exact_division);
  CHECK(exact.vertices == 5090);
  CHECK(exact.graph_genus == 15400);
  CHECK(rel_close(exact.value.ln, log_mode.value.ln, 1e-9));
  CHECK(rel_close(ln_big(*exact.value.exact), log_mode.value.ln, 1e-9));

  // Rebuild the integer from its factors.
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 5090, 30800);
  mpz_class rot;
  mpz_ui_pow_ui(rot.get_mpz_t(), 2, 5090);
  CHECK(catalan_by_product(10) == oracle::catalan_recurrence(10));
  CHECK(*exact.value.exact * 2 == catalan_by_product(5089) * power * rot);
}

TEST_CASE("counting bound in log mode at a generic point") {
  const auto b = prop33_bound({3, 1.5});
  CHECK(b.value.ln == Approx(2270473.5527420482974).epsilon(1e-12));
  CHECK(b.denominator_arg == 3);
  CHECK(b.degree_arg == 3);
}

TEST_CASE("digit cap") {
  try {
    prop33_bound({2, 1.0}, Rounding::kExact, kMinDigitCap);
    FAIL("expected DigitCapExceeded");
  } catch (const DigitCapExceeded& e) {
    CHECK(e.cap() == kMinDigitCap);
    CHECK(e.digits() > 1000);
    CHECK(e.log_value().ln > 1e5);
    CHECK_FALSE(e.log_value().exact);
  }
}

TEST_CASE("counting bound is monotone") {
  CHECK(prop33_bound({2, 1.0}).value.ln > prop33_bound({2, 0.0}).value.ln);
  double previous = 0;
  for (std::int64_t g = 2; g <= 40; ++g) {
    const double v = prop33_bound({g, 0.5}).value.ln;
    CHECK(v > previous);
    previous = v;
  }
  previous = 0;
  for (int i = 0; i <= 40; ++i) {
    const double v = prop33_bound({5, 0.25 * i}).value.ln;
    CHECK(v > previous);
    previous = v;
  }
}

TEST_CASE("genus-only bound") {
  CHECK(thm34_bound(4).bound.ln == Approx(2462712.049782587236).epsilon(1e-14));
  for (std::int64_t g : {2, 7, 1000}) {
    const auto gd = static_cast<double>(g);
    const auto b = thm34_bound(g);
    const double deg = std::pow(2.0, 1.25) * std::sqrt(gd);
    CHECK(b.rotations_exact.ln == Approx(deg * 5090 * gd * gd * gd * std::log(deg)).epsilon(1e-13));
    CHECK(b.catalan.ln == Approx(5090 * gd * gd * gd * std::log(4.0)).epsilon(1e-13));
  }
  const double big = 1e9;
  const double ratio = thm34_bound(1'000'000'000).bound.ln / (std::pow(big, 3.5) * std::log(big));
  CHECK(ratio == Approx(6054).epsilon(0.1));
}

TEST_CASE("bounded-systole bound") {
  CHECK(thm35_bound({100, 10.0}).ln == Approx(1243351165029.0893952).epsilon(1e-13));
  // Linear in g at L = 0.
  const double at0 = thm35_bound({5, 0.0}).ln;
  CHECK(at0 == Approx(std::log(2.0) * (200000 + 5040) * 5 + 15400 * 5 * std::log(5.0)));
  // Summed in a different order.
  {
    const double g = 100;
    const double L = 10;
    const double a = g * std::exp(L);
    const double b = g * std::exp(1.25 * L);
    const double other = a * (200000 * std::log(2.0) + 15400 * L + 15400 * std::log(g)) +
                         b * (5040 * std::log(2.0) + 1300 * L);
    CHECK(rel_close(other, thm35_bound({100, 10.0}).ln, 1e-12));
  }
  CHECK(thm35_proof_product({1'000'000, 10.0}).ln <= thm35_bound({1'000'000, 10.0}).ln);
  CHECK(thm35_proof_product({2, 0.0}).ln ==
        Approx(5089 * std::log(4.0) + 15400 * 2 * std::log(5090.0) + 5040 * 2 * std::log(2.0)));
}

TEST_CASE("chain at fixed points") {
  const auto r = verify_chain({2, 0.2});
  CHECK(r.entries.size() == chain_ids().size());
  CHECK(r.entry("i_catalan").holds);
  CHECK(r.entry("ii_edge_choices").holds);
  const auto& iii = r.entry("iii_rotations");
  CHECK_FALSE(iii.holds);
  const double deg = 2 * std::exp(0.05);
  CHECK(deg == Approx(2.102).epsilon(1e-3));
  CHECK(iii.margin_ln == Approx(derived_params({2, 0.2}).V0 * (deg * std::log(deg) - std::log(6.0))));
  CHECK_FALSE(r.all_hold);

  // At L = 0 the rotation step is tight; at L = 1 it holds.
  CHECK(verify_chain({2, 0.0}).entry("iii_rotations").holds);
  CHECK(verify_chain({2, 1.0}).entry("iii_rotations").holds);
  CHECK_THROWS_AS(r.entry("nope"), std::out_of_range);

  const auto big = verify_chain({1'000'000, 10.0});
  CHECK(big.entry("v_thm35").holds);
  CHECK(big.entry("v_thm35_final_line").holds);
  CHECK_FALSE(big.entry("thm35_rotation_exponent").holds);
}

TEST_CASE("rotation step failure window") {
  std::vector<BoundParams> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back({3, 0.01 * i});
  const auto s = sweep_chain(grid, 2);
  const auto& iii = s.summary[2];
  REQUIRE(iii.id == "iii_rotations");
  REQUIRE(iii.failure_windows.size() == 1);
  CHECK(iii.failure_windows[0].first.L == Approx(0.01));
  // deg0 ln deg0 = ln 6 at deg0 ~ 2.2318, i.e. L = 4 ln(deg0 / 2) ~ 0.4387.
  CHECK(iii.failure_windows[0].last.L == Approx(0.43));
  REQUIRE(iii.holds_from);
  CHECK(iii.holds_from->L == Approx(0.44));
}

TEST_CASE("sweep at maximal systole") {
  std::vector<BoundParams> grid;
  for (double g = 2; g <= 1e6; g *= 1.3) {
    const auto gi = static_cast<std::int64_t>(std::llround(g));
    grid.push_back({gi, max_systole(gi)});
  }
  const auto one = sweep_chain(grid, 1);
  const auto four = sweep_chain(grid, 4);
  REQUIRE(one.summary.size() == four.summary.size());
  for (std::size_t i = 0; i < one.summary.size(); ++i) {
    CHECK(one.summary[i].failures == four.summary[i].failures);
  }
  for (const auto& s : one.summary) {
    if (s.id == "i_catalan" || s.id == "ii_edge_choices" || s.id == "v_thm35" ||
        s.id == "thm34_catalan") {
      CHECK_MESSAGE(s.failures == 0, s.id);
    }
    if (s.id == "iv_prop33_vs_thm34") {
      REQUIRE(s.holds_from);
      CHECK(s.holds_from->g > 1000);
      CHECK(s.holds_from->g < 100000);
    }
  }
}

TEST_CASE("Bernoulli numbers and the Euler characteristic") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == mpq_class(-1, 2));
  CHECK(bernoulli(2) == mpq_class(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(4) == mpq_class(-1, 30));
  CHECK(bernoulli(12) == mpq_class(-691, 2730));
  CHECK(euler_char_moduli(2) == mpq_class(-1, 240));
  CHECK(euler_char_moduli(3) == mpq_class(1, 1008));
  for (std::int64_t g = 2; g <= 40; ++g) CHECK((sgn(euler_char_moduli(g)) < 0) == (g % 2 == 0));
  for (std::int64_t g : {50, 60, 80, 100}) {
    const auto chi = euler_char_moduli(g);
    const double ln_abs = ln_big(abs(chi.get_num())) - ln_big(chi.get_den());
    CHECK(std::abs(ln_abs - chi_asymptotic(g).ln) <= 0.01 * std::abs(ln_abs));
  }
}

TEST_CASE("lower bound and gap") {
  CHECK(fbr_lower(27, 1.0).ln == Approx(9 * std::log(27.0)));
  CHECK_THROWS_AS(fbr_lower(27, 0.0), std::invalid_argument);

  const double beta = gap_beta_prime(10.0);
  CHECK(std::log(beta) == Approx(27.07).epsilon(0.01));
  const auto report = gap_report({2, 3, 10, 1000, 1'000'000}, 10.0);
  CHECK(report.all_within);
  for (const auto& row : report.rows) {
    CHECK(row.quotient <= kGapExponent);
    CHECK(row.ratio == Approx(row.lower_ln / row.upper_ln));
  }
  // The coefficient check written out directly.
  const double e10 = std::exp(10.0);
  const double e125 = std::exp(12.5);
  for (double g : {2.0, 17.0, 1e6}) {
    const double coeff = 200000 * e10 * std::log(2.0) + 5040 * e125 * std::log(2.0) +
                         10 * (15400 * e10 + 1300 * e125) + 15400 * e10 * std::log(g);
    CHECK(coeff < 4e8 * std::log(beta * g));
  }
}
