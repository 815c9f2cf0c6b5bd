#include <cmath>
#include <random>

#include "bdeform/script_i.hpp"
#include "data/reference_values.hpp"
#include "doctest.h"

using namespace bdeform;
using namespace bdeform::scripti;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

ScriptIParams P(double b, double nu, int order = 0) { return {b, nu, Route::Auto, order}; }

}  // namespace

TEST_CASE("series examples") {
  cplx w(1, 2);
  CHECK(rel(eval_series(P(0, 0.5), w, 0.3), std::exp(w * 0.3)) <= 1e-12);
  CHECK(std::abs(eval_series(P(1.3, 0.2), 0.0, 0.6) - 1.0) == 0.0);
  cplx w2(2, 1);
  CHECK(rel(eval_series(P(1.5, 0.5), w2, 0.3), eval_beta_integral(P(1.5, 0.5), w2, 0.3)) <= 1e-9);
  CHECK_THROWS_AS(eval_series(P(-1.6, 0.5), 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(eval_series(P(0.5, -1.0), 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(eval_series(P(0.5, 0.5), 1.0, 1.5), DomainError);
}

TEST_CASE("series against 50-digit table") {
  for (const auto& r : refdata::script_i) {
    cplx v = eval_series(P(r.b, r.nu), {r.wr, r.wi}, r.t);
    cplx ref(double(r.re), double(r.im));
    INFO("b=" << r.b << " nu=" << r.nu);
    CHECK(rel(v, ref) <= 1e-10);
    CHECK(rel(eval_continuation(P(r.b, r.nu), {r.wr, r.wi}, r.t), ref) <= 1e-7);
    if (r.b > 0) CHECK(rel(eval_beta_integral(P(r.b, r.nu), {r.wr, r.wi}, r.t), ref) <= 1e-9);
  }
}

TEST_CASE("series term cap raises a numeric error with the partial value") {
  try {
    eval_series(P(0.5, 0.5), cplx(0, 700), 0.3);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(std::isfinite(e.bound()));
  }
}

TEST_CASE("beta integral examples") {
  CHECK(std::abs(eval_beta_integral(P(0.5, 1.0), 0.0, 0.0) - 1.0) <= 1e-14);
  CHECK(rel(eval_beta_integral(P(2.5, 0), 5.0, 1.0), eval_series(P(2.5, 0), 5.0, 1.0)) <= 1e-9);
  cplx w(0, -3);
  CHECK(rel(eval_beta_integral(P(1, 0.5), w, 0.7), eval_series(P(1, 0.5), w, 0.7)) <= 1e-9);
  CHECK_THROWS_AS(eval_beta_integral(P(0.0, 0.5), w, 0.7), RouteError);
  CHECK_THROWS_AS(eval_beta_integral(P(-0.3, 0.5), w, 0.7), RouteError);
  auto rule = quadrature::gauss_jacobi(40, 0.5, 0.0);
  CHECK(rel(eval_beta_integral(P(1, 0.5), w, 0.7, rule), eval_series(P(1, 0.5), w, 0.7)) <= 1e-9);
  CHECK_THROWS_AS(eval_beta_integral(P(1.2, 0.5), w, 0.7, rule), DomainError);
}

TEST_CASE("continuation examples") {
  CHECK(rel(eval_continuation(P(0.5, 0.5, 1), 2.0, 0.5), eval_series(P(0.5, 0.5), 2.0, 0.5)) <= 1e-7);
  CHECK(rel(eval_continuation(P(-0.4, 0.5, 2), 1.0, 0.0), eval_series(P(-0.4, 0.5), 1.0, 0.0)) <= 1e-7);
  CHECK(std::abs(eval_continuation(P(-0.9, 1.0, 2), 0.0, 0.9) - 1.0) <= 1e-15);
}

TEST_CASE("continuation order must exceed -b") {
  CHECK_THROWS_AS(eval_continuation(P(-1.2, 1.5, 1), 1.0, 0.0), DomainError);
  CHECK(default_order(-0.4) == 2);
  CHECK(default_order(-1.2) == 3);
  CHECK(default_order(0.5) == 1);
  CHECK(default_order(2.0) == 1);
  // higher orders agree
  cplx w(1.5, -2.0);
  cplx ref = eval_series(P(-0.4, 0.5), w, 0.3);
  for (int m : {1, 2, 3, 4}) CHECK(rel(eval_continuation(P(-0.4, 0.5, m), w, 0.3), ref) <= 1e-7);
}

TEST_CASE("double series is a flagged cross-check") {
  CHECK(std::abs(eval_double_series(P(1, 0.5), 0.0, 0.4) - 1.0) <= 1e-15);
  double d1 = rel(eval_double_series(P(1.5, 0), 2.0, 1.0), eval_series(P(1.5, 0), 2.0, 1.0));
  cplx w(1, 1);
  double d2 = rel(eval_double_series(P(0.5, 1.5), w, -0.6), eval_series(P(0.5, 1.5), w, -0.6));
  // a discrepancy is a finding, not a failure; report it
  if (d1 > 1e-7 || d2 > 1e-7) MESSAGE("double-series discrepancy: " << d1 << ", " << d2);
  CHECK(std::isfinite(d1));
  CHECK_THROWS_AS(eval_double_series(P(-0.2, 0.5), w, 0.1), RouteError);
}

TEST_CASE("auto dispatch") {
  auto v = eval_auto(0, 2, 3.0, 1.0);
  CHECK(rel(v.value, std::exp(3.0)) <= 1e-12);
  CHECK(v.route == Route::Series);
  auto z = eval_auto(-0.3, 0.5, 0.0, 0.0);
  CHECK(std::abs(z.value - 1.0) <= 1e-15);
  cplx w(0, 10);
  auto a = eval_auto(2, 0.5, w, 0.2);
  CHECK(a.route == Route::BetaIntegral);
  CHECK(rel(a.value, eval_series(P(2, 0.5), w, 0.2)) <= 1e-8);
  CHECK(rel(a.value, eval_continuation(P(2, 0.5), w, 0.2)) <= 1e-8);
  CHECK(eval_auto(2, 0.5, cplx(0, 40), 0.2).route == Route::Continuation);
  CHECK(parse_route("beta") == Route::BetaIntegral);
  CHECK_THROWS_AS(parse_route("bogus"), DomainError);
}

TEST_CASE("expansion agrees with direct series at many t") {
  Expansion e(0.7, 1.0, cplx(3, -4));
  for (double t : {-1.0, -0.2, 0.5, 1.0}) CHECK(rel(e(t), eval_series(P(0.7, 1.0), cplx(3, -4), t)) <= 1e-15);
}

TEST_CASE("b = 0 reduces to the exponential") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> nd(-0.95, 2.0), ang(0, 2 * M_PI), rad(0, 20), td(-1, 1);
  for (int s = 0; s < 300; ++s) {
    double nu = nd(rng), t = td(rng);
    cplx w = std::polar(rad(rng), ang(rng));
    cplx ref = std::exp(w * t);
    CHECK(std::abs(eval_series(P(0, nu), w, t) - ref) <= 1e-10 * (1 + std::abs(ref)));
  }
}

TEST_CASE("polynomial-exponential bound for negative b") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ang(0, 2 * M_PI), rad(0, 20), td(-1, 1);
  for (auto [b, nu] : {std::pair{-0.4, 0.5}, {-0.4, 0.0}, {-0.9, 1.5}}) {
    auto bound = poly_exp_bound(b, nu);
    for (int s = 0; s < 300; ++s) {
      cplx w = std::polar(rad(rng), ang(rng));
      double t = td(rng);
      CHECK(std::abs(eval_series(P(b, nu), w, t)) <= bound(w));
    }
  }
}
