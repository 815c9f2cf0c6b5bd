#include "bdeform/script_i.hpp"

#include <algorithm>
#include <cmath>

namespace bdeform::scripti {

using specfun::cld;

namespace {

constexpr int kTermCap = 500;
constexpr long double kStopRatio = 1e-17L;

cld to_ld(cplx w) { return {w.real(), w.imag()}; }

long double pochhammer(long double a, int k) {
  long double p = 1.0L;
  for (int i = 0; i < k; ++i) p *= a + i;
  return p;
}

long double factorial(int k) {
  long double f = 1.0L;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

void check_params(double b, double nu) {
  if (!(nu > -1.0)) throw DomainError("scriptI: nu must exceed -1");
  if (!(b > -nu - 1.0)) throw DomainError("scriptI: b must exceed -nu-1");
}

void check_t(double t) {
  if (!(t >= -1.0 && t <= 1.0)) throw DomainError("scriptI: t must lie in [-1,1]");
}

}  // namespace

std::string route_name(Route r) {
  switch (r) {
    case Route::Series: return "series";
    case Route::BetaIntegral: return "beta";
    case Route::Continuation: return "continuation";
    case Route::DoubleSeries: return "double-series";
    case Route::Auto: return "auto";
  }
  return "auto";
}

Route parse_route(const std::string& s) {
  for (Route r : {Route::Series, Route::BetaIntegral, Route::Continuation, Route::DoubleSeries,
                  Route::Auto})
    if (route_name(r) == s) return r;
  throw DomainError("unknown route: " + s);
}

void ScriptIParams::validate() const {
  check_params(b, nu);
  if (route == Route::BetaIntegral && !(b > 0.0))
    throw RouteError("beta-integral route needs b > 0; use the continuation route");
  if (route == Route::Continuation) {
    int m = order > 0 ? order : default_order(b);
    if (!(b + m > 0.0)) throw DomainError("continuation order must satisfy b + m > 0");
  }
}

int default_order(double b) { return std::max(1, static_cast<int>(std::ceil(-b)) + 1); }

Expansion::Expansion(double b, double nu, cplx w) : nu_(nu) {
  check_params(b, nu);
  const long double beta = static_cast<long double>(b) + nu;
  const cld z = to_ld(w);
  if (w == 0.0) {
    a_ = {1.0L};
    return;
  }
  std::vector<double> g;
  int count = std::min(kTermCap, static_cast<int>(std::ceil(2.0 * std::abs(w))) + 40);
  for (;;) {
    auto I = specfun::script_bessel_orders(beta, count, z);
    specfun::gegenbauer_tilde_all(count - 1, nu, 1.0, g);
    a_.clear();
    cld c = 1.0L, s_plus = 0.0L, s_minus = 0.0L;
    long double peak = 0.0L;
    int small = 0;
    for (int m = 0; m < count; ++m) {
      if (m > 0) c *= (z / 2.0L) / (beta + m);
      cld am = c * I[m];
      a_.push_back(am);
      long double gm = std::abs(g[m]);
      s_plus += am * static_cast<long double>(g[m]);
      s_minus += (m % 2 ? -1.0L : 1.0L) * am * static_cast<long double>(g[m]);
      long double size = std::abs(am) * (gm + 2.0L);
      peak = std::max({peak, std::abs(s_plus), std::abs(s_minus), size});
      if (size < kStopRatio * peak) {
        if (++small == 3) return;
      } else {
        small = 0;
      }
    }
    if (count >= kTermCap)
      throw NumericError("scriptI series did not converge within the term cap", cplx(s_plus),
                         static_cast<double>(peak));
    count = kTermCap;
  }
}

cplx Expansion::operator()(double t) const {
  const long double nu = nu_, tt = t;
  cld sum = a_[0];
  const int M = static_cast<int>(a_.size()) - 1;
  if (M == 0) return cplx(sum);
  if (nu_ == 0.0) {
    long double t0 = 1.0L, t1 = tt;
    sum += a_[1] * (2.0L * tt);
    for (int k = 1; k < M; ++k) {
      long double t2 = 2.0L * tt * t1 - t0;
      t0 = t1;
      t1 = t2;
      sum += a_[k + 1] * (2.0L * t2);
    }
    return cplx(sum);
  }
  long double d0 = 2.0L * tt;
  sum += a_[1] * ((1.0L + nu) * d0);
  if (M == 1) return cplx(sum);
  long double d1 = 2.0L * (1.0L + nu) * tt * tt - 1.0L;
  sum += a_[2] * ((2.0L + nu) * d1);
  for (int k = 2; k < M; ++k) {
    long double d2 = (2.0L * (k + nu) * tt * d1 - (k + 2.0L * nu - 1.0L) * d0) / (k + 1);
    d0 = d1;
    d1 = d2;
    sum += a_[k + 1] * ((k + 1 + nu) * d2);
  }
  return cplx(sum);
}

cplx eval_series(const ScriptIParams& p, cplx w, double t) {
  check_params(p.b, p.nu);
  check_t(t);
  return Expansion(p.b, p.nu, w)(t);
}

cplx eval_beta_integral(const ScriptIParams& p, cplx w, double t,
                        const quadrature::QuadratureRule& rule) {
  check_params(p.b, p.nu);
  check_t(t);
  if (!(p.b > 0.0)) throw RouteError("beta-integral route needs b > 0; use the continuation route");
  if (rule.domain != quadrature::Domain::UnitInterval || std::abs(rule.alpha - p.nu) > 1e-14 ||
      std::abs(rule.beta - (p.b - 1.0)) > 1e-14)
    throw DomainError("beta-integral route needs a Gauss-Jacobi rule with weight u^{b-1}(1-u)^nu");
  const cld z = to_ld(w);
  cld acc = 0.0L;
  long double mass = 0.0L;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    long double u = rule.nodes[i];
    cld f = specfun::script_bessel_ld(p.b, u * z) * std::exp((1.0L - u) * z * static_cast<long double>(t));
    acc += static_cast<long double>(rule.weights[i]) * f;
    mass += rule.weights[i];
  }
  return cplx(acc / mass);
}

cplx eval_beta_integral(const ScriptIParams& p, cplx w, double t) {
  check_params(p.b, p.nu);
  if (!(p.b > 0.0)) throw RouteError("beta-integral route needs b > 0; use the continuation route");
  cplx prev;
  for (int n = 16; n <= 1024; n *= 2) {
    auto rule = quadrature::gauss_jacobi(n, p.nu, p.b - 1.0);
    cplx v = eval_beta_integral(p, w, t, rule);
    if (n > 16 && std::abs(v - prev) <= 1e-14 * std::max(std::abs(v), 1e-300)) return v;
    prev = v;
  }
  return prev;
}

namespace {

// c_{l,j}(s) for l <= m: derivatives of I~_b(s w) are sum_j c_{l,j}(s) w^{2j} I~_{b+j}(s w).
using Poly = std::vector<long double>;
std::vector<std::vector<Poly>> derivative_polys(int m) {
  std::vector<std::vector<Poly>> c(m + 1);
  c[0] = {Poly{1.0L}};
  for (int l = 0; l < m; ++l) {
    c[l + 1].assign(l + 2, Poly{});
    for (int j = 0; j <= l + 1; ++j) {
      Poly out(l + 2, 0.0L);
      if (j <= l) {
        const Poly& p = c[l][j];
        for (std::size_t k = 1; k < p.size(); ++k) out[k - 1] += k * p[k];
      }
      if (j >= 1) {
        const Poly& p = c[l][j - 1];
        for (std::size_t k = 0; k < p.size(); ++k) out[k + 1] += 0.5L * p[k];
      }
      c[l + 1][j] = out;
    }
  }
  return c;
}

long double poly_eval(const Poly& p, long double s) {
  long double v = 0.0L;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * s + *it;
  return v;
}

long double binom(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// F^{(m)}(s) for F(s) = I~_b(s w) e^{(1-s) w t}
cld taylor_derivative(const std::vector<std::vector<Poly>>& c, int m, long double b, cld z,
                      long double t, long double s) {
  auto I = specfun::tilde_bessel_orders(b, m + 1, s * z);
  const cld zt = -z * t;
  cld total = 0.0L;
  cld z2 = z * z;
  for (int l = 0; l <= m; ++l) {
    cld g = 0.0L, zp = 1.0L;
    for (int j = 0; j <= l; ++j) {
      g += poly_eval(c[l][j], s) * zp * I[j];
      zp *= z2;
    }
    total += binom(m, l) * std::pow(zt, m - l) * g;
  }
  return total * std::exp((1.0L - s) * z * t);
}

// C_{r,j} with k = 2r + j
long double principal_coef(long double b, long double nu, int r, int j) {
  const int k = 2 * r + j;
  if (k == 0) return 1.0L;
  return b * pochhammer(b + r + 1.0L, k - r - 1) / pochhammer(b + nu + 1.0L, k);
}

}  // namespace

cplx eval_continuation(const ScriptIParams& p, cplx w, double t) {
  check_params(p.b, p.nu);
  check_t(t);
  const int m = p.order > 0 ? p.order : default_order(p.b);
  if (!(p.b + m > 0.0)) throw DomainError("continuation order must satisfy b + m > 0");
  const long double b = p.b, nu = p.nu, tt = t;
  const cld z = to_ld(w);

  cld principal = 0.0L;
  for (int k = 0; k < m; ++k) {
    for (int r = 0; 2 * r <= k; ++r) {
      const int j = k - 2 * r;
      principal += principal_coef(b, nu, r, j) * std::pow(z / 2.0L, 2 * r) * std::pow(-z * tt, j) /
                   (factorial(r) * factorial(j));
    }
  }
  principal *= std::exp(z * tt);
  if (p.b == 0.0 || w == 0.0) return cplx(principal);

  const long double pref =
      b * std::exp(std::lgamma(b + nu + 1.0L) - std::lgamma(nu + 1.0L));
  const auto c = derivative_polys(m);
  cld prev = 0.0L;
  for (int n = 8; n <= 256; n *= 2) {
    auto ru = quadrature::gauss_jacobi(n, p.nu, p.b + m - 1.0);
    auto rt = quadrature::gauss_jacobi(n, m - 1.0, 0.0);
    cld acc = 0.0L;
    for (std::size_t i = 0; i < ru.size(); ++i) {
      cld inner = 0.0L;
      for (std::size_t k = 0; k < rt.size(); ++k)
        inner += static_cast<long double>(rt.weights[k]) *
                 taylor_derivative(c, m, b, z, tt, ru.nodes[i] * rt.nodes[k]);
      acc += static_cast<long double>(ru.weights[i]) * inner;
    }
    acc *= pref / factorial(m - 1);
    if (n > 8 && std::abs(acc - prev) <= 1e-14L * std::max(std::abs(acc + principal), 1e-300L))
      return cplx(principal + acc);
    prev = acc;
  }
  return cplx(principal + prev);
}

cplx eval_double_series(const ScriptIParams& p, cplx w, double t) {
  check_params(p.b, p.nu);
  if (!(p.b > 0.0)) throw RouteError("double-series route needs b > 0");
  const long double b = p.b, nu = p.nu;
  const cld z = to_ld(w), zt = z * static_cast<long double>(t), q = z * z / 4.0L;
  cld outer_factor = 1.0L;    // (b)_{2m}/(b+1)_m (w/2)^{2m}/m!
  long double poch = 1.0L;    // (b+nu+1)_{2m}
  cld total = 0.0L;
  long double peak = 0.0L;
  int small_outer = 0;
  for (int m = 0; m <= kTermCap; ++m) {
    if (m > 0) {
      outer_factor *= (b + 2 * m - 2) * (b + 2 * m - 1) / ((b + m) * m) * q;
      poch *= (b + nu + 2 * m - 1) * (b + nu + 2 * m);
    }
    cld term = outer_factor / poch, inner = 0.0L;
    long double ipeak = 0.0L;
    int small = 0, n = 0;
    for (; n <= kTermCap; ++n) {
      if (n > 0) term *= (nu + n) * zt / ((b + nu + 2 * m + n) * n);
      inner += term;
      ipeak = std::max({ipeak, std::abs(inner), std::abs(term)});
      if (std::abs(term) <= kStopRatio * ipeak) {
        if (++small == 3) break;
      } else {
        small = 0;
      }
    }
    if (n > kTermCap) throw NumericError("double series: inner sum diverged", cplx(total), double(peak));
    total += inner;
    peak = std::max({peak, std::abs(total), ipeak});
    if (ipeak <= kStopRatio * peak) {
      if (++small_outer == 3) return cplx(total);
    } else {
      small_outer = 0;
    }
  }
  throw NumericError("double series: outer sum diverged", cplx(total), double(peak));
}

ScriptIValue eval(const ScriptIParams& p, cplx w, double t) {
  p.validate();
  switch (p.route) {
    case Route::Series: return {eval_series(p, w, t), Route::Series};
    case Route::BetaIntegral: return {eval_beta_integral(p, w, t), Route::BetaIntegral};
    case Route::Continuation: return {eval_continuation(p, w, t), Route::Continuation};
    case Route::DoubleSeries: return {eval_double_series(p, w, t), Route::DoubleSeries};
    case Route::Auto: return eval_auto(p.b, p.nu, w, t);
  }
  return eval_auto(p.b, p.nu, w, t);
}

ScriptIValue eval_auto(double b, double nu, cplx w, double t) {
  check_params(b, nu);
  ScriptIParams p{b, nu, Route::Auto, 0};
  if (b >= 0.25 && std::abs(w) <= 30.0) return {eval_beta_integral(p, w, t), Route::BetaIntegral};
  if (std::abs(w) <= 30.0) return {eval_series(p, w, t), Route::Series};
  return {eval_continuation(p, w, t), Route::Continuation};
}

PolyExpBound poly_exp_bound(double b, double nu, int order) {
  check_params(b, nu);
  if (b >= 0.0) return {1.0, 0.0};
  const int m = order > 0 ? order : default_order(b);
  // principal part: |e^{wt}| <= e^{|Re w|}, |w|^k <= (1+|w|)^k
  double Cp = 0.0;
  for (int k = 0; k < m; ++k)
    for (int r = 0; 2 * r <= k; ++r) {
      int j = k - 2 * r;
      Cp += std::abs(static_cast<double>(principal_coef(b, nu, r, j))) /
            (std::pow(4.0, r) * static_cast<double>(factorial(r) * factorial(j)));
    }
  double M = m - 1;
  // remainder: |b Gamma(b+nu+1)/Gamma(nu+1)| B(b+m, nu+1) sup|F^{(m)}| / m!
  const auto c = derivative_polys(m);
  double Cr = 0.0;
  for (int l = 0; l <= m; ++l) {
    for (int j = 0; j <= l; ++j) {
      double coef = 0.0;
      for (long double a : c[l][j]) coef += std::abs(static_cast<double>(a));
      auto bb = specfun::tilde_bessel_bound(b + j);
      Cr += static_cast<double>(binom(m, l)) * coef * bb.C;
      M = std::max(M, 2.0 * j + bb.M + (m - l));
    }
  }
  const double pref = std::abs(b) * std::exp(std::lgamma(b + nu + 1.0) - std::lgamma(nu + 1.0)) *
                      std::exp(std::lgamma(b + m) + std::lgamma(nu + 1.0) - std::lgamma(b + m + nu + 1.0)) /
                      static_cast<double>(factorial(m));
  return {Cp + pref * Cr, M};
}

}  // namespace bdeform::scripti
