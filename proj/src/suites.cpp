#include "bdeform/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "bdeform/harmonics.hpp"
#include "bdeform/kernels.hpp"
#include "bdeform/pointwise.hpp"
#include "bdeform/quadrature.hpp"
#include "bdeform/spectral.hpp"

namespace bdeform::suites {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

using harmonics::MultiPoly;
using spectral::Op;
using spectral::Truncation;

std::vector<double> rand_vec(std::mt19937_64& rng, int N, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<double> v(N);
  for (auto& x : v) x = g(rng);
  return v;
}

std::vector<double> with_norm(std::mt19937_64& rng, int N, double r) {
  auto v = rand_vec(rng, N, 1.0);
  double n = 0;
  for (double x : v) n += x * x;
  for (auto& x : v) x *= r / std::sqrt(n);
  return v;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

MultiPoly one(int N) { return MultiPoly::constant(N, 1); }
MultiPoly mono(std::vector<int> e, double c = 1.0) { return MultiPoly::monomial(e, mpq_class(c)); }
std::vector<int> expo(int N, std::initializer_list<std::pair<int, int>> parts) {
  std::vector<int> e(N, 0);
  for (auto [i, k] : parts)
    if (i < N) e[i] += k;
  return e;
}

// P(x) exp(-alpha |x - a|^2) with its gradient
pointwise::SmoothFunction poly_gauss(const MultiPoly& P, double alpha, std::vector<double> a) {
  const int N = P.N();
  a.resize(N, 0.0);
  std::vector<MultiPoly> dP;
  for (int i = 0; i < N; ++i) dP.push_back(P.derivative(i));
  auto gauss = [alpha, a](std::span<const double> x) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - a[i]) * (x[i] - a[i]);
    return std::exp(-alpha * s);
  };
  pointwise::SmoothFunction f;
  f.f = [P, gauss](std::span<const double> x) -> cplx { return P.eval(x) * gauss(x); };
  f.grad = [P, dP, gauss, alpha, a, N](std::span<const double> x) {
    std::vector<cplx> g(N);
    const double e = gauss(x), p = P.eval(x);
    for (int i = 0; i < N; ++i) g[i] = (dP[i].eval(x) - 2.0 * alpha * (x[i] - a[i]) * p) * e;
    return g;
  };
  return f;
}

std::vector<double> laguerre_coeffs(int l, double alpha) {
  std::vector<double> c(l + 1);
  for (int k = 0; k <= l; ++k) {
    double bin = 1;
    for (int i = 1; i <= l - k; ++i) bin *= (alpha + k + i) / i;
    double fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    c[k] = (k % 2 ? -1.0 : 1.0) * bin / fact;
  }
  return c;
}

Truncation truncation(const SuiteConfig& c) { return {c.L, c.N == 1 ? 1 : c.M}; }

int max_m(int N, int want) { return N == 1 ? std::min(want, 1) : want; }

double idiff(const spectral::OperatorMatrix& a, const spectral::OperatorMatrix& b, int margin = 2) {
  return spectral::interior_max_abs(a - b, margin);
}

int sphere_order_for(int N) { return N <= 2 ? 30 : N == 3 ? 24 : 12; }

// ---- spectral ----

double spectral_algebra(const SuiteConfig& c, unsigned seed = 0) {
  DeformationParams p(c.b, c.N);
  auto tr = truncation(c);
  auto m = [&](Op op, int n = 0) { return spectral::build_matrix(p, op, tr, n, seed); };
  auto E = m(Op::EulerShifted), X2 = m(Op::AbsX2), H = m(Op::Hb), W = m(Op::WeightH);
  double err = 0;
  err = std::max(err, idiff(spectral::commutator(E, X2 * (0.5 * kI)), X2 * kI));
  err = std::max(err, idiff(spectral::commutator(E, H * (0.5 * kI)), H * (-kI)));
  err = std::max(err, idiff(spectral::commutator(X2 * (0.5 * kI), H * (0.5 * kI)), E));
  auto h = W * cplx(-1), e = m(Op::Raise) * cplx(0.5), f = m(Op::Lower) * cplx(0.5);
  err = std::max(err, idiff(spectral::commutator(h, e), e * cplx(2)));
  err = std::max(err, idiff(spectral::commutator(h, f), f * cplx(-2)));
  err = std::max(err, idiff(spectral::commutator(e, f), h));
  err = std::max(err, idiff(W, (H - X2) * cplx(0.5)));
  for (int a = 0; a < c.N; ++a)
    for (int b = a + 1; b < c.N; ++b)
      err = std::max(err, spectral::interior_max_abs(spectral::commutator(m(Op::Dn, a), m(Op::Dn, b)), 2));
  if (c.b == 0.0) {
    for (int a = 0; a < c.N; ++a)
      for (int b = 0; b < c.N; ++b) {
        auto w = spectral::commutator(m(Op::Dn, a), m(Op::Xn, b));
        err = std::max(err, idiff(w, spectral::identity(w.layout) * cplx(a == b ? 1.0 : 0.0)));
      }
  }
  return err;
}

double characterization(const SuiteConfig& c) {
  DeformationParams p(c.b, c.N);
  Truncation tr{std::min(c.L, 12), c.N == 1 ? 1 : std::min(c.M, 6)};
  const double nb = c.N + 2 * c.b;
  auto Eop = spectral::build_matrix(p, Op::EulerShifted, tr);
  auto X2 = spectral::build_matrix(p, Op::AbsX2, tr);
  auto h = spectral::build_matrix(p, Op::WeightH, tr) * cplx(-1);
  auto Id = spectral::identity(Eop.layout);
  auto E = Eop - Id * cplx(0.5 * nb);
  double err = 0;
  for (int mm = 0; mm <= tr.M - 2 || (c.N == 1 && mm <= 1); ++mm) {
    if (c.N == 1 && mm > 1) break;
    auto el = spectral::SpectralVector::unit(p, Eop.layout, {0, mm, 0});
    for (int l = 0; l <= 4 && l + 1 <= tr.L - 2; ++l) {
      auto next = spectral::apply_raise(el);
      next.coeffs *= 0.5;
      const double scale = 1 + next.coeffs.cwiseAbs().maxCoeff();
      auto first = (Eop - X2 + h).apply(el);
      first.coeffs *= 0.5;
      auto second = (E - X2 + Id * cplx(2 * c.b + c.N + mm + 2 * l)).apply(el);
      second.coeffs *= 0.5;
      err = std::max(err, (next.coeffs - first.coeffs).cwiseAbs().maxCoeff() / scale);
      err = std::max(err, (next.coeffs - second.coeffs).cwiseAbs().maxCoeff() / scale);
      el = next;
    }
  }
  return err;
}

double fourier_spectral_suite(const SuiteConfig& c, std::mt19937_64& rng, unsigned seed = 0) {
  DeformationParams p(c.b, c.N);
  auto tr = truncation(c);
  spectral::Layout lay(c.N, tr, seed);
  spectral::SpectralVector v(p, lay);
  std::normal_distribution<double> g;
  for (int i = 0; i < lay.size(); ++i) v.coeffs[i] = cplx(g(rng), g(rng));
  auto f4 = spectral::fourier_spectral(spectral::fourier_spectral(spectral::fourier_spectral(spectral::fourier_spectral(v))));
  double err = (f4.coeffs - v.coeffs).cwiseAbs().maxCoeff();
  auto F = spectral::fourier_factors(lay);
  for (int n = 0; n < c.N; ++n) {
    auto x = spectral::build_matrix(p, Op::Xn, tr, n, seed), d = spectral::build_matrix(p, Op::Dn, tr, n, seed);
    err = std::max(err, idiff(spectral::conjugate_diagonal(d, F), x * kI));
    err = std::max(err, idiff(spectral::conjugate_diagonal(x, F), d * kI));
  }
  return err;
}

double standard_representation(const SuiteConfig& c) {
  DeformationParams p(c.b, c.N);
  auto tr = truncation(c);
  spectral::Layout lay(c.N, tr);
  double err = 0;
  for (double th : {kPi / 6, kPi / 2}) {
    Eigen::VectorXcd om(lay.size());
    for (int i = 0; i < lay.size(); ++i) {
      auto k = lay.index(i);
      om[i] = std::polar(1.0, -th * (c.b + p.lambda(k.m) + 2 * k.l + 1));
    }
    for (int n = 0; n < c.N; ++n) {
      auto x = spectral::build_matrix(p, Op::Xn, tr, n), d = spectral::build_matrix(p, Op::Dn, tr, n);
      auto iD = d * kI;
      err = std::max(err, idiff(spectral::conjugate_diagonal(x, om), x * std::cos(th) + iD * std::sin(th)));
      err = std::max(err, idiff(spectral::conjugate_diagonal(iD, om), x * (-std::sin(th)) + iD * std::cos(th)));
    }
  }
  return err;
}

double gram_orthogonality(const SuiteConfig& c, unsigned seed = 0) {
  DeformationParams p(c.b, c.N);
  Truncation tr{4, max_m(c.N, std::min(c.M, 3))};
  spectral::Layout lay(c.N, tr, seed);
  auto rule = quadrature::weighted_ball_rule(p, 24, 16, quadrature::RadialMap::gaussian(1.0));
  const int n = lay.size();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> phi;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    spectral::phi_all(p, lay, rule.node(i), phi);
    Eigen::Map<Eigen::VectorXd> v(phi.data(), n);
    G.noalias() += rule.weights[i] * v * v.transpose();
  }
  double err = 0;
  for (int i = 0; i < n; ++i) {
    auto k = lay.index(i);
    const double a = c.b + p.lambda(k.m);
    const double expect = 0.5 * std::exp(std::lgamma(k.l + a + 1) - std::lgamma(k.l + 1.0));
    err = std::max(err, std::abs(G(i, i) / expect - 1));
    for (int j = 0; j < n; ++j)
      if (j != i) err = std::max(err, std::abs(G(i, j)) / std::sqrt(G(i, i) * G(j, j)));
  }
  return err;
}

double oscillator_eigen(const SuiteConfig& c, std::mt19937_64& rng, unsigned seed = 0) {
  DeformationParams p(c.b, c.N);
  double err = 0;
  for (int m = 0; m <= max_m(c.N, std::min(c.M, 2)); ++m) {
    for (const auto& h : harmonics::harmonic_basis(c.N, m, seed)) {
      for (int l = 0; l <= 3; ++l) {
        pointwise::StructuredFunction F(c.N);
        F.add(pointwise::poly_exp_profile(laguerre_coeffs(l, c.b + p.lambda(m)), 0.5), h);
        const double ev = -(c.b + p.lambda(m) + 2 * l + 1);
        double worst = 0, scale = 0;
        for (int k = 0; k < 20; ++k) {
          auto x = rand_vec(rng, c.N, 1.2);
          double r2 = 0;
          for (double v : x) r2 += v * v;
          cplx phi = F.value(x);
          cplx lhs = 0.5 * (pointwise::H_apply(p, F, x) - r2 * phi);
          worst = std::max(worst, std::abs(lhs - ev * phi));
          scale = std::max(scale, std::abs(ev * phi));
        }
        err = std::max(err, worst / scale);
      }
    }
  }
  return err;
}

double basis_independence(const SuiteConfig& c) {
  const unsigned seed = c.seed == 0 ? 1u : c.seed;
  DeformationParams p(c.b, c.N);
  Truncation tr{std::min(c.L, 8), c.N == 1 ? 1 : std::min(c.M, 4)};
  auto spectrum = [&](Op op, unsigned s) {
    auto A = spectral::build_matrix(p, op, tr, c.N - 1, s);
    const auto& lay = A.layout;
    Eigen::VectorXd sc(lay.size());
    for (int i = 0; i < lay.size(); ++i) sc[i] = std::sqrt(spectral::phi_norm_sq(p, lay.index(i)));
    Eigen::MatrixXd Mx = Eigen::MatrixXcd(A.mat).real();
    Mx = sc.asDiagonal() * Mx * sc.cwiseInverse().asDiagonal();
    Eigen::MatrixXd S = 0.5 * (Mx + Mx.transpose());
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S).eigenvalues().eval();
  };
  double err = 0;
  for (Op op : {Op::AbsX2, Op::Xn, Op::Hb}) {
    auto e0 = spectrum(op, 0), e1 = spectrum(op, seed);
    err = std::max(err, (e0 - e1).cwiseAbs().maxCoeff() / (1 + e0.cwiseAbs().maxCoeff()));
  }
  SuiteConfig small = c;
  small.L = tr.L;
  small.M = tr.M;
  err = std::max(err, spectral_algebra(small, seed));
  return err;
}

double translation(const SuiteConfig& c) {
  DeformationParams p(c.b, c.N);
  Truncation tr{std::min(c.L, c.N >= 3 ? 16 : 24), c.N == 1 ? 1 : std::min(c.M, c.N >= 3 ? 4 : 6)};
  if (c.N > 1) tr.M = std::max(tr.M, 4);
  double err = 0;
  for (double t : {0.7, -0.4}) {
    auto T = spectral::translation_expm(p, c.N - 1, t, tr);
    err = std::max({err, T.unitarity_defect, T.skew_defect});
  }
  return err;
}

double translation_classical(const SuiteConfig&) {
  DeformationParams p0(0.0, 1);
  Truncation tr{40, 1};
  double err = 0;
  for (double t : {0.3, -0.5, 1.0}) {
    auto T = spectral::translation_expm(p0, 0, t, tr);
    auto w = spectral::apply_translation(T, spectral::SpectralVector::unit(p0, T.layout, {0, 0, 0}));
    for (double x = -4; x <= 4; x += 0.25) {
      double y = x + t;
      err = std::max(err, std::abs(spectral::evaluate(w, std::span(&x, 1)) -
                                   spectral::phi_eval(p0, {0, 0, 0}, std::span(&y, 1))));
    }
  }
  return err;
}

// ---- scriptI ----

std::vector<double> nu_list(const SuiteConfig& c) {
  std::vector<double> nus{-0.5, 0.0, 0.5, 1.5, 0.5 * (c.N - 2)};
  std::sort(nus.begin(), nus.end());
  nus.erase(std::unique(nus.begin(), nus.end()), nus.end());
  std::vector<double> ok;
  for (double nu : nus)
    if (nu > -1 && c.b > -nu - 1) ok.push_back(nu);
  return ok;
}

std::vector<cplx> w_list() {
  return {cplx(0.0), cplx(1.5, 0), cplx(-4, 1), cplx(0, 7), cplx(3, -5), cplx(-10, 0),
          cplx(12, 9), cplx(0, -20), cplx(-6, 15), cplx(19, 0)};
}

double script_i_routes(const SuiteConfig& c) {
  using namespace scripti;
  double err = 0;
  for (double nu : nu_list(c)) {
    for (cplx w : w_list())
      for (double t : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
        ScriptIParams sp{c.b, nu, Route::Series, 0};
        const cplx ref = eval_series(sp, w, t);
        std::vector<Route> routes;
        if (c.route == Route::Auto) {
          routes = {Route::Continuation};
          if (c.b > 0) routes.push_back(Route::BetaIntegral);
          routes.push_back(Route::Auto);
        } else if (c.route == Route::Series) {
          routes = {Route::Continuation};
        } else {
          routes = {c.route};
        }
        for (Route r : routes) {
          if (r == Route::BetaIntegral && !(c.b > 0)) continue;
          if (r == Route::DoubleSeries && !(c.b > 0)) continue;
          ScriptIParams q{c.b, nu, r, 0};
          // the series cancels badly when |I| << e^{|Re w|}; measure against that envelope
          err = std::max(err, std::abs(eval(q, w, t).value - ref) / std::max(std::abs(ref), std::exp(std::abs(w.real()))));
        }
      }
  }
  return err;
}

double script_i_reduction(const SuiteConfig& c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> nd(-0.95, 2.0), ang(0, 2 * kPi), rad(0, 20), td(-1, 1);
  double err = 0;
  for (int s = 0; s < 200; ++s) {
    double nu = nd(rng), t = td(rng);
    cplx w = std::polar(rad(rng), ang(rng));
    cplx ref = std::exp(w * t);
    scripti::ScriptIParams sp{0.0, nu, c.route == scripti::Route::BetaIntegral ? scripti::Route::Auto : c.route, 0};
    err = std::max(err, std::abs(scripti::eval(sp, w, t).value - ref) / (1 + std::abs(ref)));
  }
  return err;
}

double script_i_bound(const SuiteConfig& c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0, 2 * kPi), rad(0, 20), td(-1, 1);
  double err = 0;
  for (double nu : nu_list(c)) {
    auto bound = scripti::poly_exp_bound(c.b, nu);
    for (int s = 0; s < 400; ++s) {
      cplx w = std::polar(rad(rng), ang(rng));
      double t = td(rng);
      scripti::ScriptIParams sp{c.b, nu, scripti::Route::Auto, 0};
      double v = std::abs(scripti::eval(sp, w, t).value);
      err = std::max(err, v / bound(w) - 1.0);
    }
  }
  return std::max(err, 0.0);
}

// ---- kernels ----

double classical_reduction(const SuiteConfig& c, std::mt19937_64& rng) {
  const int N = c.N;
  DeformationParams p0(0.0, N);
  double err = 0;
  auto sph = quadrature::sphere_rule(N, 8);
  auto f = poly_gauss(one(N) + mono(expo(N, {{0, 2}, {N - 1, 1}})), 0.4, {0.3});
  for (int s = 0; s < 20; ++s) {
    auto x = rand_vec(rng, N, 1.0), y = rand_vec(rng, N, 1.0);
    auto kp = kernels::KernelPoint::make(x, y);
    err = std::max(err, std::abs(kernels::B_kernel(p0, kp) - std::polar(1.0, -kp.dot)));
    for (cplx t : {cplx(0.7), cplx(0.3, 2.0)}) {
      cplx ref = std::exp(-0.5 * N * kernels::log_sinh(t) - (kp.r * kp.r + kp.rho * kp.rho) / (2.0 * std::tanh(t)) +
                          kp.dot / std::sinh(t));
      // against |ref| with |<x,y>| in place of <x,y>: the expansion cancels when <x,y> < 0
      const double env = std::abs(std::exp(-0.5 * N * kernels::log_sinh(t) -
                                           (kp.r * kp.r + kp.rho * kp.rho) / (2.0 * std::tanh(t)))) *
                         std::exp(std::abs(kp.dot / std::sinh(t)));
      err = std::max(err, std::abs(kernels::lambda_kernel(p0, kp, t) - ref) / std::max(std::abs(ref), env));
    }
    double d2 = 0;
    for (int i = 0; i < N; ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
    const double t = 0.6;
    double heat = std::exp(-d2 / (2 * t)) / std::pow(2 * kPi * t, 0.5 * N);
    const double henv = std::exp(-std::pow(kp.r - kp.rho, 2) / (2 * t)) / std::pow(2 * kPi * t, 0.5 * N);
    err = std::max(err, std::abs(p0.c_bN() * kernels::heat_kernel(p0, kp, t) - heat) / henv);
    auto g = f.grad(x);
    for (int n = 0; n < N; ++n) err = std::max(err, std::abs(pointwise::D_apply(p0, n, f, x, sph) - g[n]));
  }
  return err;
}

double kernel_bounds(const SuiteConfig& c, std::mt19937_64& rng) {
  DeformationParams p(c.b, c.N);
  std::uniform_real_distribution<double> prod(0.0, 40.0), sc(0.2, 5.0), tt(0.2, 2.0);
  double err = 0;
  for (int s = 0; s < 2000; ++s) {
    double r = sc(rng), rho = prod(rng) / r;
    auto kp = kernels::KernelPoint::make(with_norm(rng, c.N, r), with_norm(rng, c.N, rho));
    err = std::max(err, std::abs(kernels::B_kernel(p, kp)) - 1.0);
  }
  for (int s = 0; s < 2000; ++s) {
    auto x = rand_vec(rng, c.N, 1.2), y = rand_vec(rng, c.N, 1.2);
    double t = tt(rng);
    auto kp = kernels::KernelPoint::make(x, y);
    cplx h = kernels::heat_kernel(p, kp, t);
    double bound = std::pow(t, -p.kappa()) * std::exp(-std::pow(kp.r - kp.rho, 2) / (2 * t));
    err = std::max(err, -h.real() / bound);
    err = std::max(err, std::abs(h.imag()) / std::abs(h));
    err = std::max(err, h.real() / bound - 1.0);
  }
  return std::max(err, 0.0);
}

double kernel_n1(const SuiteConfig& c, std::mt19937_64& rng) {
  DeformationParams p(c.b, 1);
  std::uniform_real_distribution<double> u(-3, 3);
  double err = 0;
  for (int s = 0; s < 40; ++s) {
    double a = u(rng), b = u(rng);
    auto kp = kernels::KernelPoint::make(std::span(&a, 1), std::span(&b, 1));
    err = std::max(err, rel(kernels::B_kernel(p, kp), kernels::B_kernel_n1(c.b, a, b)));
    for (cplx t : {cplx(0.8), cplx(0.4, 2.0), cplx(0.0, 1.3)})
      err = std::max(err, rel(kernels::lambda_kernel(p, kp, t), kernels::lambda_kernel_n1(c.b, a, b, t)));
    for (cplx t : {cplx(0.8), cplx(1.0, -1.0)})
      err = std::max(err, rel(kernels::heat_kernel(p, kp, t), kernels::heat_kernel_n1(c.b, a, b, t)));
  }
  return err;
}

double hille_hardy(const SuiteConfig& c, std::mt19937_64& rng) {
  DeformationParams p(c.b, c.N);
  Truncation tr = c.N == 1 ? Truncation{60, 1} : Truncation{40, c.N == 2 ? 12 : c.N == 3 ? 10 : 8};
  double err = 0;
  for (cplx t : {cplx(0.5), cplx(0.7, 3.5), cplx(1.0, -2.0)}) {
    for (int s = 0; s < 3; ++s) {
      auto x = with_norm(rng, c.N, 0.9), y = with_norm(rng, c.N, 0.7);
      cplx lhs = p.c_bN() * kernels::lambda_kernel(p, kernels::KernelPoint::make(x, y), t);
      err = std::max(err, std::abs(lhs - kernels::hille_hardy_sum(p, x, y, t, tr)));
    }
  }
  return err;
}

double fourier_quadrature(const SuiteConfig& c, std::mt19937_64& rng, unsigned seed = 0) {
  DeformationParams p(c.b, c.N);
  auto rule = kernels::transform_rule(p, 48, c.N <= 3 ? 40 : 32);
  std::vector<std::vector<double>> xs;
  for (double r : {0.0, 0.7, 1.9, 3.0}) xs.push_back(with_norm(rng, c.N, r));
  double err = 0;
  for (int m = 0; m <= max_m(c.N, std::min(c.M, 3)); ++m)
    for (int l = 0; l <= 4; ++l) {
      spectral::BasisIndex k{l, m, 0};
      auto vals = kernels::sample([&](std::span<const double> y) { return cplx(spectral::phi_eval(p, k, y, seed)); },
                                  rule);
      auto out = kernels::transform_values(p, kernels::Transform::Fourier, 0.0, vals, rule, xs);
      for (std::size_t i = 0; i < xs.size(); ++i)
        err = std::max(err, std::abs(out[i] - ipow_int(-(2 * l + m)) * spectral::phi_eval(p, k, xs[i], seed)));
    }
  return err;
}

double heat_semigroup(const SuiteConfig& c, std::mt19937_64& rng) {
  DeformationParams p(c.b, c.N);
  auto rule = c.N == 1 ? kernels::transform_rule(p, 64, 1) : kernels::transform_rule(p, 36, c.N == 2 ? 30 : 18);
  auto f = [](std::span<const double> y) {
    double r2 = 0;
    for (double v : y) r2 += v * v;
    return cplx(std::exp(-0.5 * r2) * (1 + y[0]), 0.0);
  };
  auto g = kernels::transform_on_nodes(p, kernels::Transform::Heat, 0.3, kernels::sample(f, rule), rule, 9.0);
  std::vector<std::vector<double>> xs;
  for (int s = 0; s < 5; ++s) xs.push_back(rand_vec(rng, c.N, 0.8));
  auto two = kernels::transform_values(p, kernels::Transform::Heat, 0.2, g, rule, xs);
  auto one_step = kernels::transform_values(p, kernels::Transform::Heat, 0.5, kernels::sample(f, rule), rule, xs);
  double err = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) err = std::max(err, std::abs(two[i] - one_step[i]));
  return err;
}

// ---- pointwise ----

double dunkl_forms(const SuiteConfig& c, std::mt19937_64& rng) {
  DeformationParams p(c.b, c.N);
  const int N = c.N;
  auto f = poly_gauss(one(N) + mono(expo(N, {{0, 1}, {1, 1}})) + mono(expo(N, {{0, 3}}), 0.5), 0.5,
                      rand_vec(rng, N, 0.5));
  auto sph = quadrature::sphere_rule(N, N <= 3 ? 40 : 24);
  double err = 0;
  for (int k = 0; k < 4; ++k) {
    auto x = rand_vec(rng, N, 1.0);
    for (int n = 0; n < N; ++n) {
      cplx a = pointwise::D_apply(p, n, f, x, sph);
      cplx s = pointwise::D_apply_surface(p, n, f, x, 64, N <= 3 ? 40 : 24);
      err = std::max(err, std::abs(a - s));
    }
  }
  return err;
}

double dunkl_spectral(const SuiteConfig& c, std::mt19937_64& rng) {
  DeformationParams p(c.b, c.N);
  const int N = c.N;
  Truncation tr{8, N == 1 ? 1 : 4};
  spectral::Layout layout(N, tr);
  spectral::SpectralVector v(p, layout);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < layout.size(); ++k) {
    auto idx = layout.index(k);
    if (idx.l <= 3 && idx.m <= 2) v.coeffs[k] = cplx(u(rng), u(rng));
  }
  pointwise::PointFunction fv = [&v](std::span<const double> x) { return spectral::evaluate(v, x); };
  auto rule = quadrature::weighted_ball_rule(p, 30, N <= 3 ? 24 : 16, quadrature::RadialMap::gaussian(1.0));
  auto proj = spectral::project_function(p, fv, layout, rule);
  auto f = pointwise::with_numeric_gradient(fv, N);
  auto sph = quadrature::sphere_rule(N, sphere_order_for(N));
  double err = (proj.coeffs - v.coeffs).cwiseAbs().maxCoeff();
  for (int n = 0; n < N; ++n) {
    auto Dv = spectral::build_matrix(p, Op::Dn, tr, n).apply(proj);
    for (int k = 0; k < 10; ++k) {
      auto x = rand_vec(rng, N, 0.8);
      err = std::max(err, std::abs(spectral::evaluate(Dv, x) - pointwise::D_apply(p, n, f, x, sph)));
    }
  }
  return err;
}

double weyl_commutator(const SuiteConfig& c, std::mt19937_64& rng) {
  DeformationParams p(c.b, c.N);
  const int N = c.N;
  auto sph = quadrature::sphere_rule(N, N <= 3 ? 36 : 20);
  auto f = poly_gauss(one(N) + mono(expo(N, {{0, 2}, {N - 1, 1}})), 0.5, rand_vec(rng, N, 0.5));
  double err = 0;
  for (int k = 0; k < 3; ++k) {
    auto y = rand_vec(rng, N, 1.0);
    for (int m = 0; m < N; ++m)
      for (int n = 0; n < N; ++n) err = std::max(err, pointwise::commutator_Dx(p, m, n, f, y, sph).diff());
  }
  return err;
}

double sphere_lemmas(const SuiteConfig& c) {
  double err = 0;
  for (int N : {2, 3, 4}) err = std::max(err, pointwise::sphere_identity_suite(N, 6, c.seed).max_residual());
  return err;
}

double green_formula(const SuiteConfig& c, std::mt19937_64& rng) {
  DeformationParams p(c.b, c.N);
  const int N = c.N;
  pointwise::GreenRules rules;
  if (N == 4) rules = {16, 12, 12};
  struct Case {
    int n;
    pointwise::SmoothFunction F, G;
    double R;
  };
  std::vector<Case> cases = {
      {0, poly_gauss(one(N), 1.0, {}), poly_gauss(mono(expo(N, {{0, 1}})), 0.0, {}), 2.0},
      {N - 1, poly_gauss(one(N), 1.0, rand_vec(rng, N, 0.3)), poly_gauss(one(N) + mono(expo(N, {{N - 1, 2}})), 0.0, {}),
       1.5},
      {0, poly_gauss(one(N) + mono(expo(N, {{0, 1}, {N - 1, 1}})), 0.5, {}), poly_gauss(one(N), 0.5, rand_vec(rng, N, 0.3)),
       1.2},
      {N / 2, poly_gauss(mono(expo(N, {{N / 2, 1}})), 0.7, rand_vec(rng, N, 0.2)),
       poly_gauss(one(N) + mono(expo(N, {{0, 2}})), 0.3, {}), 1.0},
  };
  double err = 0;
  for (const auto& cs : cases)
    err = std::max(err, pointwise::green_check(p, cs.n, cs.F, cs.G, cs.R, rules).residual());
  return err;
}

double bump(double s) { return std::abs(s) < 1 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0; }

double wave_dt(double b, double dx) { return std::min(0.5, 1.6 / (1 + 2 * std::abs(b))) * dx; }

pointwise::WaveResult annulus_wave(double b, double& umax) {
  pointwise::WaveOptions opt;
  opt.X = 4.0;
  opt.dx = 0.002;
  opt.dt = wave_dt(b, opt.dx);
  opt.T = 0.4;
  opt.annuli = {{1.0, 2.0}, {0.5, 2.5}, {0.2, 3.5}};
  auto x = pointwise::wave_grid(opt.X, opt.dx);
  std::vector<double> u0(x.size()), v0(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) u0[i] = bump(2.0 * (std::abs(x[i]) - 1.5));
  umax = *std::max_element(u0.begin(), u0.end());
  return pointwise::wave_evolve_1d(b, u0, v0, opt);
}

double wave_propagation(const SuiteConfig& c) {
  double umax = 0;
  auto res = annulus_wave(c.b, umax);
  double leak = 0;
  for (std::size_t i = 0; i < res.x.size(); ++i) {
    const double ax = std::abs(res.x[i]);
    if (ax <= 0.6 || ax >= 2.4) leak = std::max(leak, std::abs(res.frames.back().u[i]));
  }
  return leak / umax;
}

double wave_energy(const SuiteConfig& c) {
  double umax = 0;
  return std::max(annulus_wave(c.b, umax).max_annulus_increase, 0.0);
}

double wave_conservation(const SuiteConfig& c) {
  pointwise::WaveOptions opt;
  opt.X = 4.0;
  opt.dx = 0.005;
  opt.dt = wave_dt(c.b, opt.dx);
  opt.T = 1.0;
  auto x = pointwise::wave_grid(opt.X, opt.dx);
  std::vector<double> u0(x.size()), v0(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    u0[i] = bump(2.0 * (x[i] - 1.3));
    v0[i] = 0.5 * bump(x[i] + 1.0);
  }
  auto res = pointwise::wave_evolve_1d(c.b, u0, v0, opt);
  const double E0 = res.total_energy.front();
  double drift = 0;
  for (double e : res.total_energy) drift = std::max(drift, std::abs(e - E0) / E0);
  return drift;
}

// ---- registry ----

struct Entry {
  std::string anchor;
  double tol;
  std::function<bool(const SuiteConfig&)> applicable;
  std::function<double(const SuiteConfig&, std::mt19937_64&)> run;
};

bool always(const SuiteConfig&) { return true; }

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> r = {
      {"basis_independence",
       {"spectra of |x|^2, x_n, H_b and the interior identities do not depend on the harmonic basis", 1e-10, always,
        [](const SuiteConfig& c, std::mt19937_64&) { return basis_independence(c); }}},
      {"characterization",
       {"e^{l+1}F = (1/2)(E + (N+2b)/2 - |x|^2 + h) e^l F = (1/2)(E - |x|^2 + 2b + N + m + 2l) e^l F", 1e-10, always,
        [](const SuiteConfig& c, std::mt19937_64&) { return characterization(c); }}},
      {"classical_reduction",
       {"b = 0: B = e^{-i<x,y>}, Lambda = Mehler kernel, heat kernel = Gaussian, D_n = d/dx_n", 1e-12, always,
        [](const SuiteConfig& c, std::mt19937_64& g) { return classical_reduction(c, g); }}},
      {"dunkl_forms",
       {"D_{b,n}: surface-integral form = reflection form", 1e-8, always,
        [](const SuiteConfig& c, std::mt19937_64& g) { return dunkl_forms(c, g); }}},
      {"dunkl_spectral",
       {"pointwise D_{b,n} = synthesis of the spectral D_n matrix", 1e-5, always,
        [](const SuiteConfig& c, std::mt19937_64& g) { return dunkl_spectral(c, g); }}},
      {"fourier_quadrature",
       {"F_b Phi_{b,l,j} = i^{-(2l+m)} Phi_{b,l,j} by kernel quadrature", 1e-5, always,
        [](const SuiteConfig& c, std::mt19937_64& g) { return fourier_quadrature(c, g); }}},
      {"fourier_spectral",
       {"F_b^4 = Id, F_b D_n F_b^{-1} = i x_n, F_b x_n F_b^{-1} = i D_n", 1e-10, always,
        [](const SuiteConfig& c, std::mt19937_64& g) { return fourier_spectral_suite(c, g); }}},
      {"gram_orthogonality",
       {"<Phi_{b,l,j}, Phi_{b,l',j'}> = delta Gamma(l+b+lambda+1)/(2 l!)", 1e-9, always,
        [](const SuiteConfig& c, std::mt19937_64&) { return gram_orthogonality(c); }}},
      {"green_formula",
       {"int_B (D_n F) G |x|^{2b} = -int_B F D_n G |x|^{2b} + int_{|x|=R} (x_n/|x|) F G |x|^{2b}", 1e-6, always,
        [](const SuiteConfig& c, std::mt19937_64& g) { return green_formula(c, g); }}},
      {"heat_semigroup",
       {"e^{(s/2)H_b} e^{(t/2)H_b} = e^{((s+t)/2)H_b} by kernel quadrature", 1e-5,
        [](const SuiteConfig& c) { return c.N <= 3; },
        [](const SuiteConfig& c, std::mt19937_64& g) { return heat_semigroup(c, g); }}},
      {"hille_hardy",
       {"c_{b,N} Lambda_b(x,y;t) = sum e^{-t(b+lambda+2l+1)} Phi(x)Phi(y)/||Phi||^2", 1e-6, always,
        [](const SuiteConfig& c, std::mt19937_64& g) { return hille_hardy(c, g); }}},
      {"kernel_bounds",
       {"|B_b| <= 1; 0 < h_t(x,y) <= t^{-(b+N/2)} e^{-(|x|-|y|)^2/(2t)}", 1e-10,
        [](const SuiteConfig& c) { return c.b >= 0; },
        [](const SuiteConfig& c, std::mt19937_64& g) { return kernel_bounds(c, g); }}},
      {"kernel_n1",
       {"N = 1 kernels in terms of the Bessel functions I~ and J~", 1e-10,
        [](const SuiteConfig& c) { return c.N == 1; },
        [](const SuiteConfig& c, std::mt19937_64& g) { return kernel_n1(c, g); }}},
      {"oscillator_eigen",
       {"((H_b - |x|^2)/2) Phi_{b,l,j} = -(b+lambda+2l+1) Phi_{b,l,j}", 1e-8, always,
        [](const SuiteConfig& c, std::mt19937_64& g) { return oscillator_eigen(c, g); }}},
      {"script_i_bound",
       {"|I_{b,nu}(w,t)| <= C (1+|w|)^M e^{|Re w|}, C = 1, M = 0 for b >= 0", 1e-12, always,
        [](const SuiteConfig& c, std::mt19937_64& g) { return script_i_bound(c, g); }}},
      {"script_i_reduction",
       {"I_{0,nu}(w,t) = e^{wt}", 1e-10, always,
        [](const SuiteConfig& c, std::mt19937_64& g) { return script_i_reduction(c, g); }}},
      {"script_i_routes",
       {"I_{b,nu}(w,t): series = beta integral = continuation", 1e-7, always,
        [](const SuiteConfig& c, std::mt19937_64&) { return script_i_routes(c); }}},
      {"spectral_algebra",
       {"[D_m,D_n] = 0, (H_b-|x|^2)/2 = WeightH, sl2 and Cartan brackets; [D_m,x_n] = delta_mn at b = 0", 1e-10, always,
        [](const SuiteConfig& c, std::mt19937_64&) { return spectral_algebra(c); }}},
      {"sphere_lemmas",
       {"reflection change of variables, zonal derivative identity, truncated Cauchy sphere integral", 1e-7, always,
        [](const SuiteConfig& c, std::mt19937_64&) { return sphere_lemmas(c); }}},
      {"standard_representation",
       {"Omega(g) x_n Omega(g)^{-1} = cos(th) x_n + sin(th) i D_n", 1e-8, always,
        [](const SuiteConfig& c, std::mt19937_64&) { return standard_representation(c); }}},
      {"translation",
       {"e^{t D_n} unitary on the truncation interior", 1e-8, always,
        [](const SuiteConfig& c, std::mt19937_64&) { return translation(c); }}},
      {"translation_classical",
       {"b = 0, N = 1: e^{t d/dx} f(x) = f(x + t)", 1e-4, always,
        [](const SuiteConfig& c, std::mt19937_64&) { return translation_classical(c); }}},
      {"weyl_commutator",
       {"D_m(x_n f) - x_n D_m f = delta_mn f + (2b/vol) int xi_m xi_n f(sigma_xi x) dxi", 1e-6, always,
        [](const SuiteConfig& c, std::mt19937_64& g) { return weyl_commutator(c, g); }}},
      {"wave_conservation",
       {"N = 1: E(t) = (1/2) int (|u_t|^2 + |D u|^2) |x|^{2b} dx constant", 1e-6,
        [](const SuiteConfig& c) { return c.b > -0.5; },
        [](const SuiteConfig& c, std::mt19937_64&) { return wave_conservation(c); }}},
      {"wave_energy",
       {"N = 1: energy on t0+t < |x| < t1-t is non-increasing", 1e-10,
        [](const SuiteConfig& c) { return c.b > -0.5; },
        [](const SuiteConfig& c, std::mt19937_64&) { return wave_energy(c); }}},
      {"wave_propagation",
       {"N = 1: data in 1 < |x| < 2 stays in 1-t < |x| < 2+t", 1e-4,
        [](const SuiteConfig& c) { return c.b > -0.5; },
        [](const SuiteConfig& c, std::mt19937_64&) { return wave_propagation(c); }}},
  };
  return r;
}

const Entry& entry(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown suite: " + name);
  return it->second;
}

}  // namespace

void SuiteConfig::validate() const {
  if (N < 1 || N > 4) throw DomainError("N must lie in [1,4]");
  if (!(b > -0.5 * N)) throw DomainError("b must exceed -N/2");
  if (L < 4) throw DomainError("L must be at least 4");
  if (N > 1 && M < 4) throw DomainError("M must be at least 4 for N > 1");
  if (M < 0) throw DomainError("M must be non-negative");
  if (!(tol >= 0)) throw DomainError("tol must be positive");
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, e] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

bool suite_exists(const std::string& name) { return registry().count(name) > 0; }

bool suite_applicable(const std::string& name, const SuiteConfig& cfg) { return entry(name).applicable(cfg); }

std::string suite_anchor(const std::string& name) { return entry(name).anchor; }

double suite_default_tol(const std::string& name) { return entry(name).tol; }

SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
  const auto& e = entry(name);
  cfg.validate();
  if (!e.applicable(cfg)) throw DomainError("suite " + name + " does not apply to this configuration");
  std::uint64_t h = 1469598103934665603ULL;
  for (char ch : name) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(h),
                    static_cast<std::uint32_t>(h >> 32)};
  std::mt19937_64 rng(seq);
  SuiteResult r;
  r.suite = name;
  r.paper_anchor = e.anchor;
  r.tol = cfg.tol > 0 ? cfg.tol : e.tol;
  r.max_err = e.run(cfg, rng);
  r.pass = std::isfinite(r.max_err) && r.max_err <= r.tol;
  return r;
}

std::vector<SuiteResult> run_suites(std::vector<std::string> names, const SuiteConfig& cfg) {
  cfg.validate();
  if (names.empty()) {
    for (const auto& n : suite_names())
      if (suite_applicable(n, cfg)) names.push_back(n);
  }
  for (const auto& n : names) entry(n);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  std::vector<SuiteResult> out;
  for (const auto& n : names) out.push_back(run_suite(n, cfg));
  return out;
}

}  // namespace bdeform::suites
