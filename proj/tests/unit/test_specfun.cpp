#include <gmpxx.h>

#include <cmath>
#include <random>

#include "bdeform/quadrature.hpp"
#include "bdeform/specfun.hpp"
#include "data/reference_values.hpp"
#include "doctest.h"

using namespace bdeform;
using namespace bdeform::specfun;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Defining sum in exact rationals: sum_k (-1)^k binom(l+alpha, l-k) t^k / k!
mpq_class laguerre_exact(int l, mpq_class alpha, mpq_class t) {
  mpq_class sum = 0, tk = 1, kfact = 1;
  for (int k = 0; k <= l; ++k) {
    if (k > 0) {
      tk *= t;
      kfact *= k;
    }
    // binom(l+alpha, l-k) = prod_{i=1}^{l-k} (alpha + k + i) / i
    mpq_class bin = 1;
    for (int i = 1; i <= l - k; ++i) bin *= (alpha + k + i) / mpq_class(i);
    mpq_class term = bin * tk / kfact;
    if (k % 2) sum -= term;
    else sum += term;
  }
  return sum;
}

// Defining sum of the normalized Gegenbauer polynomial.
long double gegenbauer_sum(int m, long double nu, long double t) {
  if (m == 0) return 1.0L;
  long double s = 0.0L;
  for (int k = 0; 2 * k <= m; ++k) {
    long double poch = 1.0L;  // Gamma(m-k+nu)/Gamma(nu)
    for (int i = 0; i < m - k; ++i) poch *= nu + i;
    long double f = 1.0L;
    for (int i = 2; i <= k; ++i) f *= i;
    long double g = 1.0L;
    for (int i = 2; i <= m - 2 * k; ++i) g *= i;
    s += (k % 2 ? -1.0L : 1.0L) * poch / (f * g) * std::pow(2.0L * t, m - 2 * k);
  }
  return (m + nu) / nu * s;
}

cplx J_classical(double nu, double x) {
  return std::pow(0.5 * x, nu) * bessel_script(BesselKind::OscillatoryTilde, nu, x);
}

}  // namespace

TEST_CASE("ln_gamma examples") {
  CHECK(ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(ln_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(ln_gamma(1.5) == doctest::Approx(std::log(std::sqrt(M_PI) / 2)).epsilon(1e-14));
  CHECK(ln_gamma(1.5) == doctest::Approx(-0.12078224).epsilon(1e-8));
  CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
  CHECK_THROWS_AS(ln_gamma(-2.5), DomainError);
}

TEST_CASE("ln_gamma against 50-digit table") {
  for (const auto& r : refdata::ln_gamma) {
    double v = ln_gamma(r.x);
    CHECK(std::abs(v - double(r.v)) <= 1e-13 * std::abs(double(r.v)));
  }
}

TEST_CASE("laguerre examples") {
  CHECK(laguerre(0, 0.3, 17.0) == 1.0);
  CHECK(laguerre(1, 0.5, 2.0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(laguerre(2, 0.0, 1.0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK_THROWS_AS(laguerre(3, -1.0, 1.0), DomainError);
}

TEST_CASE("laguerre recurrence matches exact defining sum") {
  const std::vector<mpq_class> alphas = {mpq_class(0), mpq_class(1, 2), mpq_class(-9, 10),
                                         mpq_class(9, 4)};
  const std::vector<mpq_class> ts = {mpq_class(0), mpq_class(1, 3), mpq_class(7, 2), mpq_class(21, 2),
                                     mpq_class(40), mpq_class(100), mpq_class(-5), mpq_class(-100)};
  double worst = 0.0;
  for (const auto& a : alphas)
    for (const auto& t : ts)
      for (int l : {1, 2, 5, 11, 20, 30}) {
        double exact = laguerre_exact(l, a, t).get_d();
        double v = laguerre(l, a.get_d(), t.get_d());
        worst = std::max(worst, std::abs(v - exact) / std::abs(exact));
      }
  CHECK(worst <= 1e-12);
}

TEST_CASE("laguerre contiguous and differential identities") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> li(1, 10);
  std::uniform_real_distribution<double> ad(-0.9, 3.0), td(0.0, 20.0);
  for (int s = 0; s < 200; ++s) {
    int l = li(rng);
    double a = ad(rng), t = td(rng);
    double scale = 1.0 + std::abs(laguerre(l, a, t)) + std::abs(laguerre(l, a + 1, t)) +
                   std::abs(laguerre(l + 1, a, t)) + t * std::abs(laguerre(l - 1, a, t));
    CHECK(std::abs(laguerre(l, a + 1, t) - laguerre(l - 1, a + 1, t) - laguerre(l, a, t)) <=
          1e-10 * scale);
    // t L = -(l+1) L_{l+1} + (2l+a+1) L - (l+a) L_{l-1}
    double lhs = t * laguerre(l, a, t);
    double rhs = -(l + 1) * laguerre(l + 1, a, t) + (2 * l + a + 1) * laguerre(l, a, t) -
                 (l + a) * laguerre(l - 1, a, t);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * scale * (1 + t));
    // t L' = l L - (l+a) L_{l-1}, with L' from a central difference
    const double h = 1e-5;
    double d = (laguerre(l, a, t + h) - laguerre(l, a, t - h)) / (2 * h);
    CHECK(std::abs(t * d - (l * laguerre(l, a, t) - (l + a) * laguerre(l - 1, a, t))) <=
          1e-6 * scale * (1 + t));
  }
}

TEST_CASE("gegenbauer_tilde examples") {
  CHECK(gegenbauer_tilde(0, 0.7, 0.2) == 1.0);
  CHECK(gegenbauer_tilde(0, 0.0, -0.5) == 1.0);
  CHECK(gegenbauer_tilde(1, 0.5, 0.4) == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(gegenbauer_tilde(2, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("gegenbauer_tilde matches defining sum and Chebyshev limit") {
  for (double nu : {-0.5, -0.3, 0.5, 1.0, 1.5, 2.5})
    for (int m = 0; m <= 14; ++m)
      for (double t : {-1.0, -0.73, -0.1, 0.0, 0.4, 0.95, 1.0}) {
        long double ref = gegenbauer_sum(m, nu, t);
        CHECK(std::abs(gegenbauer_tilde(m, nu, t) - double(ref)) <= 1e-12 * (1 + std::abs(double(ref))));
      }
  // nu -> 0 limit: 2 T_m
  for (int m = 1; m <= 12; ++m)
    for (double t : {-0.9, 0.3, 0.77}) {
      CHECK(gegenbauer_tilde(m, 0.0, t) == doctest::Approx(2 * std::cos(m * std::acos(t))).epsilon(1e-12));
      CHECK(std::abs(gegenbauer_tilde(m, 1e-7, t) - gegenbauer_tilde(m, 0.0, t)) <= 1e-5);
    }
  // N = 1: C~_m^{(-1/2)}(+-1) = 0 for m >= 2
  for (int m = 2; m <= 10; ++m) {
    CHECK(std::abs(gegenbauer_tilde(m, -0.5, 1.0)) <= 1e-14);
    CHECK(std::abs(gegenbauer_tilde(m, -0.5, -1.0)) <= 1e-14);
  }
}

TEST_CASE("bessel_script examples") {
  CHECK(std::abs(bessel_script(BesselKind::ModifiedScript, 0.7, 0.0) - 1.0) == 0.0);
  CHECK(bessel_script(BesselKind::ModifiedScript, 0.5, 2.0).real() ==
        doctest::Approx(std::sinh(2.0) / 2.0).epsilon(1e-14));
  CHECK(bessel_script(BesselKind::ModifiedScript, 0.5, 2.0).real() == doctest::Approx(1.81343020).epsilon(1e-8));
  CHECK(bessel_script(BesselKind::OscillatoryScript, 0.5, 3.0).real() ==
        doctest::Approx(std::sin(3.0) / 3.0).epsilon(1e-13));
  CHECK(bessel_script(BesselKind::OscillatoryScript, 0.5, 3.0).real() == doctest::Approx(0.04704000).epsilon(1e-6));
  CHECK_THROWS_AS(bessel_script(BesselKind::ModifiedScript, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_script(BesselKind::OscillatoryScript, -1.5, 1.0), DomainError);
}

TEST_CASE("bessel_script against 50-digit table") {
  for (const auto& r : refdata::script_bessel) {
    cplx v = bessel_script(BesselKind::ModifiedScript, r.nu, {r.zr, r.zi});
    cplx ref(double(r.re), double(r.im));
    INFO("nu=" << r.nu << " z=" << r.zr << "+" << r.zi << "i");
    CHECK(rel(v, ref) <= 1e-12);
  }
  for (const auto& r : refdata::tilde_bessel) {
    cplx v = bessel_script(BesselKind::ModifiedTilde, r.nu, {r.zr, r.zi});
    cplx ref(double(r.re), double(r.im));
    CHECK(rel(v, ref) <= 1e-12);
  }
}

TEST_CASE("bessel kind relations") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-6.0, 6.0), nd(-0.9, 4.0);
  for (int s = 0; s < 100; ++s) {
    double nu = nd(rng);
    cplx w(u(rng), u(rng));
    cplx iw = cplx(0, 1) * w;
    CHECK(rel(bessel_script(BesselKind::OscillatoryScript, nu, w),
              bessel_script(BesselKind::ModifiedScript, nu, iw)) <= 1e-14);
    CHECK(rel(bessel_script(BesselKind::ModifiedScript, nu, w),
              std::tgamma(nu + 1) * bessel_script(BesselKind::ModifiedTilde, nu, w)) <= 1e-13);
    CHECK(rel(bessel_script(BesselKind::OscillatoryTilde, nu, w),
              bessel_script(BesselKind::ModifiedTilde, nu, iw)) <= 1e-14);
  }
}

TEST_CASE("bessel_integral_check") {
  CHECK(std::abs(bessel_integral_check(1.0, 0.0) - 1.0) <= 1e-14);
  CHECK(bessel_integral_check(0.5, 2.0).real() == doctest::Approx(std::sinh(2.0) / 2.0).epsilon(1e-13));
  cplx z(1, 2);
  CHECK(rel(bessel_integral_check(1.5, z), bessel_script(BesselKind::ModifiedScript, 1.5, z)) <= 1e-10);
  CHECK_THROWS_AS(bessel_integral_check(-0.5, 1.0), DomainError);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> bd(-0.45, 4.0), ang(0, 2 * M_PI), rad(0, 30);
  for (int s = 0; s < 60; ++s) {
    double b = bd(rng);
    cplx zz = std::polar(rad(rng), ang(rng));
    INFO("b=" << b << " z=" << zz);
    CHECK(rel(bessel_integral_check(b, zz), bessel_script(BesselKind::ModifiedScript, b, zz)) <= 1e-10);
  }
}

TEST_CASE("derivative ladder of the tilde Bessel function") {
  const double h = 1e-5;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(0, 2 * M_PI), rad(0, 5);
  for (double b : {-0.4, 0.0, 1.5})
    for (int s = 0; s < 30; ++s) {
      cplx z = std::polar(rad(rng), ang(rng));
      cplx d = (bessel_script(BesselKind::ModifiedTilde, b, z + h) -
                bessel_script(BesselKind::ModifiedTilde, b, z - h)) /
               (2 * h);
      cplx rhs = 0.5 * z * bessel_script(BesselKind::ModifiedTilde, b + 1, z);
      CHECK(std::abs(d - rhs) <= 1e-6);
    }
}

TEST_CASE("Bessel convolution identity") {
  struct Case {
    double nu, mu, w;
  };
  for (auto c : {Case{1, 0.5, 4}, Case{2, 0, 6}, Case{1.5, 1.5, 3}}) {
    auto f = [&](double x) {
      if (x == 0.0) return 0.0;
      return (J_classical(c.nu, x) * J_classical(c.mu, c.w - x)).real() / x;
    };
    double lhs = quadrature::adaptive_1d(f, 0.0, c.w, 1e-12);
    double rhs = J_classical(c.nu + c.mu, c.w).real() / c.nu;
    CHECK(std::abs(lhs - rhs) <= 1e-8);
  }
}

TEST_CASE("tilde Bessel bound for negative orders") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ang(0, 2 * M_PI), rad(0, 40);
  for (double b : {-1.4, -0.4, 0.5}) {
    auto bound = tilde_bessel_bound(b);
    for (int s = 0; s < 500; ++s) {
      cplx z = std::polar(rad(rng), ang(rng));
      double v = std::abs(bessel_script(BesselKind::ModifiedTilde, b, z));
      CHECK(v <= bound.C * std::pow(1 + std::abs(z), bound.M) * std::exp(std::abs(z.real())) * (1 + 1e-12));
    }
  }
}
