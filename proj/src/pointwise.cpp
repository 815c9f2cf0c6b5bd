#include "bdeform/pointwise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include <Eigen/Dense>

namespace bdeform::pointwise {

namespace {

constexpr double kPi = std::numbers::pi;

double norm(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

SmoothFunction with_numeric_gradient(PointFunction f, int N, double h) {
  SmoothFunction s;
  s.f = f;
  s.grad = [f, N, h](std::span<const double> x) {
    std::vector<double> y(x.begin(), x.end());
    std::vector<cplx> g(N);
    for (int i = 0; i < N; ++i) {
      const double xi = y[i];
      auto at = [&](double d) {
        y[i] = xi + d;
        return f(y);
      };
      g[i] = (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
      y[i] = xi;
    }
    return g;
  };
  return s;
}

RadialProfile poly_exp_profile(std::vector<double> q, double a) {
  return [q = std::move(q), a](double s, int k) -> cplx {
    std::vector<double> c = q;
    for (int d = 0; d < k; ++d) {
      std::vector<double> nc(c.size(), 0.0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        nc[i] -= a * c[i];
        if (i > 0) nc[i - 1] += i * c[i];
      }
      c = std::move(nc);
    }
    double v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * s + c[i];
    return v * std::exp(-a * s);
  };
}

void StructuredFunction::add(RadialProfile f, const harmonics::MultiPoly& p, int m, double scale) {
  if (p.N() != N_) throw DomainError("StructuredFunction: dimension mismatch");
  for (const auto& [e, c] : p.terms()) {
    int deg = 0;
    for (int v : e) deg += v;
    if (deg != m) throw DomainError("StructuredFunction: p is not homogeneous of degree m");
  }
  if (!harmonics::laplacian(p).is_zero()) throw DomainError("StructuredFunction: p is not harmonic");
  StructuredTerm t{std::move(f), p, m, scale, {}};
  for (int i = 0; i < N_; ++i) t.dp.push_back(p.derivative(i));
  terms_.push_back(std::move(t));
}

void StructuredFunction::add(RadialProfile f, const harmonics::HarmonicElement& h) {
  add(std::move(f), h.poly, h.m, h.scale);
}

cplx StructuredFunction::value(std::span<const double> x) const {
  const double s = dot(x, x);
  cplx v = 0;
  for (const auto& t : terms_) v += t.scale * t.f(s, 0) * t.p.eval(x);
  return v;
}

std::vector<cplx> StructuredFunction::gradient(std::span<const double> x) const {
  const double s = dot(x, x);
  std::vector<cplx> g(N_, 0.0);
  for (const auto& t : terms_) {
    const cplx f0 = t.f(s, 0), f1 = t.f(s, 1);
    const double p = t.p.eval(x);
    for (int i = 0; i < N_; ++i) g[i] += t.scale * (2.0 * x[i] * f1 * p + f0 * t.dp[i].eval(x));
  }
  return g;
}

SmoothFunction StructuredFunction::smooth() const {
  auto self = *this;
  return {[self](std::span<const double> x) { return self.value(x); },
          [self](std::span<const double> x) { return self.gradient(x); }};
}

cplx D_apply(const DeformationParams& params, int n, const SmoothFunction& f, std::span<const double> x,
             const quadrature::QuadratureRule& sphere, DOptions opt) {
  const int N = params.N();
  if (n < 0 || n >= N || static_cast<int>(x.size()) != N || sphere.dim != N)
    throw DomainError("D_apply: dimension mismatch");
  const auto grad = f.grad(x);
  if (params.b() == 0.0) return grad[n];
  const double r = norm(x);
  const cplx fx = f.f(x);
  std::vector<double> y(N);
  cplx sum = 0;
  for (std::size_t k = 0; k < sphere.size(); ++k) {
    auto xi = sphere.node(k);
    const double d = dot(xi, x);
    cplx q;
    if (std::abs(d) < opt.eps_cut * r || r == 0.0) {
      // (f(x) - f(x - 2d xi))/d = 2<grad f, xi> - 2d xi.H.xi + O(d^2)
      q = 0;
      for (int i = 0; i < N; ++i) q += 2.0 * grad[i] * xi[i];
      if (d != 0.0) {
        const double h = 1e-4 * std::max(1.0, r);
        for (int i = 0; i < N; ++i) y[i] = x[i] + h * xi[i];
        auto gp = f.grad(y);
        for (int i = 0; i < N; ++i) y[i] = x[i] - h * xi[i];
        auto gm = f.grad(y);
        cplx curv = 0;
        for (int i = 0; i < N; ++i) curv += (gp[i] - gm[i]) * xi[i];
        q -= 2.0 * d * curv / (2.0 * h);
      }
    } else {
      for (int i = 0; i < N; ++i) y[i] = x[i] - 2.0 * d * xi[i];
      q = (fx - f.f(y)) / d;
    }
    sum += sphere.weights[k] * xi[n] * q;
  }
  return grad[n] + params.b() / params.vol() * sum;
}

quadrature::QuadratureRule polar_sphere_rule(std::span<const double> w,
                                             const std::vector<std::pair<double, double>>& intervals,
                                             int polar_nodes, int sphere_order) {
  const int N = static_cast<int>(w.size());
  if (N < 2) throw DomainError("polar_sphere_rule: N >= 2");
  Eigen::VectorXd om(N);
  for (int i = 0; i < N; ++i) om[i] = w[i];
  om.normalize();
  // columns 1..N-1 of the Householder Q span w^perp
  Eigen::MatrixXd om_mat = om;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(om_mat);
  Eigen::MatrixXd Q = qr.householderQ();

  quadrature::QuadratureRule eq;
  if (N == 2) {
    eq.dim = 1;
    eq.nodes = {-1.0, 1.0};
    eq.weights = {1.0, 1.0};
  } else {
    eq = quadrature::sphere_rule(N - 1, sphere_order);
  }
  auto gl = quadrature::gauss_legendre(polar_nodes);

  quadrature::QuadratureRule rule;
  rule.domain = quadrature::Domain::Sphere;
  rule.dim = N;
  rule.weight_tag = "surface measure on S^" + std::to_string(N - 1) + " (polar)";
  for (auto [a, b] : intervals) {
    if (!(b > a)) continue;
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const double th = a + 0.5 * (b - a) * (gl.nodes[i] + 1.0);
      const double wt = 0.5 * (b - a) * gl.weights[i] * std::pow(std::sin(th), N - 2);
      const double c = std::cos(th), s = std::sin(th);
      for (std::size_t k = 0; k < eq.size(); ++k) {
        auto eta = eq.node(k);
        Eigen::VectorXd xi = c * om;
        for (int d = 0; d < N - 1; ++d) xi += s * eta[d] * Q.col(d + 1);
        for (int d = 0; d < N; ++d) rule.nodes.push_back(xi[d]);
        rule.weights.push_back(wt * eq.weights[k]);
      }
    }
  }
  return rule;
}

cplx D_apply_surface(const DeformationParams& params, int n, const SmoothFunction& f,
                     std::span<const double> x, int polar_nodes, int sphere_order) {
  const int N = params.N();
  if (n < 0 || n >= N || static_cast<int>(x.size()) != N) throw DomainError("D_apply_surface: dimension mismatch");
  const auto grad = f.grad(x);
  const double b = params.b();
  if (b == 0.0) return grad[n];
  const double r = norm(x);
  if (r == 0.0) return (1.0 + 2.0 * b / N) * grad[n];
  const cplx fx = f.f(x);
  std::vector<double> w(N), y(N);
  for (int i = 0; i < N; ++i) w[i] = x[i] / r;
  if (N == 1) {
    y[0] = -x[0];
    return grad[0] + b * (fx - f.f(y)) / x[0];
  }
  auto rule = polar_sphere_rule(w, {{0.0, kPi}}, polar_nodes, sphere_order);
  cplx sum = 0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    auto mu = rule.node(k);
    double d2 = 0;
    for (int i = 0; i < N; ++i) {
      y[i] = r * mu[i];
      d2 += (w[i] - mu[i]) * (w[i] - mu[i]);
    }
    const double dist = std::sqrt(d2);
    sum += rule.weights[k] * (w[n] - mu[n]) / std::pow(dist, N) * (fx - f.f(y));
  }
  return grad[n] + 2.0 * b / (params.vol() * r) * sum;
}

cplx H_apply(const DeformationParams& params, const StructuredFunction& f, std::span<const double> x) {
  if (f.N() != params.N() || static_cast<int>(x.size()) != params.N())
    throw DomainError("H_apply: dimension mismatch");
  const double s = dot(x, x);
  const int N = params.N();
  cplx v = 0;
  for (const auto& t : f.terms()) {
    const cplx f1 = t.f(s, 1), f2 = t.f(s, 2);
    v += t.scale * (4.0 * s * f2 + (2.0 * N + 4.0 * t.m + 4.0 * params.b()) * f1) * t.p.eval(x);
  }
  return v;
}

Commutator commutator_Dx(const DeformationParams& params, int m, int n, const SmoothFunction& f,
                         std::span<const double> x, const quadrature::QuadratureRule& sphere) {
  const int N = params.N();
  SmoothFunction xf;
  xf.f = [&f, n](std::span<const double> y) { return y[n] * f.f(y); };
  xf.grad = [&f, n](std::span<const double> y) {
    auto g = f.grad(y);
    for (auto& v : g) v *= y[n];
    g[n] += f.f(y);
    return g;
  };
  Commutator c;
  c.lhs = D_apply(params, m, xf, x, sphere) - x[n] * D_apply(params, m, f, x, sphere);
  cplx sum = 0;
  std::vector<double> y(N);
  for (std::size_t k = 0; k < sphere.size(); ++k) {
    auto xi = sphere.node(k);
    const double d = dot(xi, x);
    for (int i = 0; i < N; ++i) y[i] = x[i] - 2.0 * d * xi[i];
    sum += sphere.weights[k] * xi[m] * xi[n] * f.f(y);
  }
  c.rhs = (m == n ? f.f(x) : cplx(0.0)) + 2.0 * params.b() / params.vol() * sum;
  return c;
}

LemmaResidual lemma_inte(int N, const PointFunction& f, std::span<const double> w, int order) {
  LemmaResidual res{"inte", "N=" + std::to_string(N), 0.0, 0.0};
  if (N < 2) throw DomainError("lemma_inte: N >= 2");
  auto sph = quadrature::sphere_rule(N, order);
  for (std::size_t k = 0; k < sph.size(); ++k) res.lhs += sph.weights[k] * f(sph.node(k));
  // |<xi,w>|^{N-2} has a kink on the equator: split there
  auto rule = polar_sphere_rule(w, {{0.0, 0.5 * kPi}, {0.5 * kPi, kPi}}, order / 2 + 2, order);
  std::vector<double> y(N);
  for (std::size_t k = 0; k < rule.size(); ++k) {
    auto xi = rule.node(k);
    const double d = dot(xi, w);
    for (int i = 0; i < N; ++i) y[i] = w[i] - 2.0 * d * xi[i];
    res.rhs += rule.weights[k] * f(y) * std::pow(std::abs(2.0 * d), N - 2);
  }
  return res;
}

namespace {

cplx sph_rhs(int N, const harmonics::HarmonicElement& p, int n, std::span<const double> w) {
  if (p.m == 0) return 0.0;
  const double lam = 0.5 * (N - 2) + p.m;
  return p.scale * p.poly.derivative(n).eval(w) / lam;
}

}  // namespace

LemmaResidual lemma_sph_reflection(int N, const harmonics::HarmonicElement& p, int n, std::span<const double> w,
                                   int order) {
  LemmaResidual res{"sph", "reflection N=" + std::to_string(N) + " m=" + std::to_string(p.m) +
                               " n=" + std::to_string(n),
                    0.0, sph_rhs(N, p, n, w)};
  auto sph = quadrature::sphere_rule(N, order);
  const double pw = p.eval(w);
  std::vector<harmonics::MultiPoly> dp;
  for (int i = 0; i < N; ++i) dp.push_back(p.poly.derivative(i));
  std::vector<double> y(N);
  cplx sum = 0;
  for (std::size_t k = 0; k < sph.size(); ++k) {
    auto xi = sph.node(k);
    const double d = dot(xi, w);
    double q;
    if (std::abs(d) < 1e-6) {
      q = 0;
      for (int i = 0; i < N; ++i) q += 2.0 * p.scale * dp[i].eval(w) * xi[i];
    } else {
      for (int i = 0; i < N; ++i) y[i] = w[i] - 2.0 * d * xi[i];
      q = (pw - p.eval(y)) / d;
    }
    sum += sph.weights[k] * xi[n] * q;
  }
  res.lhs = sum / sphere_volume(N);
  return res;
}

LemmaResidual lemma_sph_surface(int N, const harmonics::HarmonicElement& p, int n, std::span<const double> w,
                                int polar_nodes, int order) {
  LemmaResidual res{"sph", "surface N=" + std::to_string(N) + " m=" + std::to_string(p.m) +
                               " n=" + std::to_string(n),
                    0.0, sph_rhs(N, p, n, w)};
  if (N < 2) throw DomainError("lemma_sph_surface: N >= 2");
  auto rule = polar_sphere_rule(w, {{0.0, kPi}}, polar_nodes, order);
  const double pw = p.eval(w);
  cplx sum = 0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    auto mu = rule.node(k);
    double d2 = 0;
    for (int i = 0; i < N; ++i) d2 += (w[i] - mu[i]) * (w[i] - mu[i]);
    sum += rule.weights[k] * (w[n] - mu[n]) / std::pow(std::sqrt(d2), N) * (pw - p.eval(mu));
  }
  res.lhs = 2.0 * sum / sphere_volume(N);
  return res;
}

double band_volume(int N, double abs_x, double eps) {
  if (eps >= abs_x) return 0.0;
  const double c = eps / abs_x;
  const double th = std::acos(c);
  switch (N) {
    case 1: return 2.0;
    case 2: return 4.0 * th;
    case 3: return 4.0 * kPi * (1.0 - c);
    case 4: return 8.0 * kPi * (0.5 * th - 0.25 * std::sin(2.0 * th));
    default: throw DomainError("band_volume: N in [1,4]");
  }
}

LemmaResidual lemma_sphereint(int N, std::span<const double> x, int n, double eps, int order) {
  const double r = norm(x);
  LemmaResidual res{"sphereint", "N=" + std::to_string(N) + " n=" + std::to_string(n) + " eps=" + std::to_string(eps),
                    0.0, x[n] / (r * r) * band_volume(N, r, eps)};
  if (eps >= r) return res;
  if (N == 1) {
    res.lhs = 2.0 / x[0];
    return res;
  }
  std::vector<double> w(N);
  for (int i = 0; i < N; ++i) w[i] = x[i] / r;
  const double th = std::acos(eps / r);
  auto rule = polar_sphere_rule(w, {{0.0, th}, {kPi - th, kPi}}, order, order);
  for (std::size_t k = 0; k < rule.size(); ++k) {
    auto xi = rule.node(k);
    res.lhs += rule.weights[k] * xi[n] / dot(xi, x);
  }
  return res;
}

double SphereReport::max_residual() const { return std::max({max_inte, max_sph, max_sphereint}); }

SphereReport sphere_identity_suite(int N, int cases, unsigned seed) {
  if (N < 2 || N > 4) throw DomainError("sphere_identity_suite: N in {2,3,4}");
  SphereReport rep;
  rep.N = N;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> expo(0, 4);
  auto direction = [&] {
    std::vector<double> w(N);
    double s = 0;
    for (auto& v : w) {
      v = gauss(rng);
      s += v * v;
    }
    for (auto& v : w) v /= std::sqrt(s);
    return w;
  };
  auto push = [&](LemmaResidual r, double& slot) {
    slot = std::max(slot, r.residual());
    rep.cases.push_back(std::move(r));
  };

  for (int c = 0; c < cases; ++c) {
    auto w = direction();
    // monomial of total degree <= 4
    std::vector<int> e(N, 0);
    int budget = expo(rng);
    for (int i = 0; i < budget; ++i) ++e[std::uniform_int_distribution<int>(0, N - 1)(rng)];
    PointFunction mono = [e](std::span<const double> y) -> cplx {
      double v = 1;
      for (std::size_t i = 0; i < e.size(); ++i) v *= std::pow(y[i], e[i]);
      return v;
    };
    push(lemma_inte(N, mono, w), rep.max_inte);

    const int m = c % 4;
    const auto& basis = harmonics::harmonic_basis(N, m);
    const auto& p = basis[std::uniform_int_distribution<int>(0, static_cast<int>(basis.size()) - 1)(rng)];
    for (int n = 0; n < N; ++n) {
      push(lemma_sph_reflection(N, p, n, w), rep.max_sph);
      push(lemma_sph_surface(N, p, n, w), rep.max_sph);
    }

    std::vector<double> x = direction();
    const double r = 0.5 + 1.5 * std::uniform_real_distribution<double>(0, 1)(rng);
    for (auto& v : x) v *= r;
    for (double eps : {0.1, 0.3})
      for (int n = 0; n < N; ++n) push(lemma_sphereint(N, x, n, eps), rep.max_sphereint);
  }
  return rep;
}

GreenResult green_check(const DeformationParams& params, int n, const SmoothFunction& F, const SmoothFunction& G,
                        double R, GreenRules rules) {
  const int N = params.N();
  auto ball = quadrature::weighted_ball_rule(params, rules.radial_nodes, rules.sphere_order,
                                             quadrature::RadialMap::ball(R));
  auto dsph = quadrature::sphere_rule(N, rules.d_sphere_order);
  GreenResult g{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < ball.size(); ++i) {
    auto x = ball.node(i);
    g.lhs += ball.weights[i] * D_apply(params, n, F, x, dsph) * G.f(x);
    g.rhs_bulk -= ball.weights[i] * F.f(x) * D_apply(params, n, G, x, dsph);
  }
  auto bnd = quadrature::sphere_rule(N, rules.sphere_order);
  const double scale = std::pow(R, 2.0 * params.b() + N - 1);
  std::vector<double> y(N);
  for (std::size_t k = 0; k < bnd.size(); ++k) {
    auto mu = bnd.node(k);
    for (int i = 0; i < N; ++i) y[i] = R * mu[i];
    g.rhs_boundary += bnd.weights[k] * mu[n] * F.f(y) * G.f(y);
  }
  g.rhs_boundary *= scale;
  return g;
}

std::vector<double> wave_grid(double X, double dx) {
  if (!(dx > 0) || !(X > 0)) throw DomainError("wave_grid: X and dx must be positive");
  const int J = static_cast<int>(std::ceil(X / dx - 1e-9));
  std::vector<double> x(2 * J);
  for (int j = -J; j < J; ++j) x[j + J] = (j + 0.5) * dx;
  return x;
}

namespace {

// d/dx - b (reflection)/x on the staggered grid; skew-symmetric.
void apply_skew_D(double b, const std::vector<double>& x, double dx, const std::vector<double>& g,
                  std::vector<double>& out) {
  const std::size_t n = g.size();
  out.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double up = i + 1 < n ? g[i + 1] : 0.0;
    const double dn = i > 0 ? g[i - 1] : 0.0;
    out[i] = (up - dn) / (2.0 * dx) - b * g[n - 1 - i] / x[i];
  }
}

}  // namespace

WaveResult wave_evolve_1d(double b, const std::vector<double>& u0, const std::vector<double>& v0,
                          const WaveOptions& opt) {
  if (!(b > -0.5)) throw DomainError("wave_evolve_1d: b must exceed -1/2");
  if (opt.dt > 0.9 * opt.dx) throw DomainError("wave_evolve_1d: CFL violated, dt > 0.9 dx");
  if (opt.dt * (1.0 + 2.0 * std::abs(b)) >= 2.0 * opt.dx)
    throw DomainError("wave_evolve_1d: dt beyond stability bound 2 dx/(1+2|b|)");
  if (!(opt.T > 0)) throw DomainError("wave_evolve_1d: T must be positive");
  WaveResult res;
  res.x = wave_grid(opt.X, opt.dx);
  const auto& x = res.x;
  const std::size_t n = x.size();
  if (u0.size() != n || v0.size() != n) throw DomainError("wave_evolve_1d: data must be sampled on wave_grid");

  const int steps = static_cast<int>(std::ceil(opt.T / opt.dt - 1e-9));
  const double dt = opt.T / steps;
  const double dx = opt.dx;
  std::vector<double> wgt(n);
  for (std::size_t i = 0; i < n; ++i) wgt[i] = std::pow(std::abs(x[i]), b);

  std::vector<double> g0(n), g1(n), g2(n), Dg0, Dg1, tmp;
  for (std::size_t i = 0; i < n; ++i) g0[i] = wgt[i] * u0[i];
  apply_skew_D(b, x, dx, g0, Dg0);
  apply_skew_D(b, x, dx, Dg0, tmp);
  for (std::size_t i = 0; i < n; ++i) g1[i] = g0[i] + dt * wgt[i] * v0[i] + 0.5 * dt * dt * tmp[i];
  apply_skew_D(b, x, dx, g1, Dg1);

  auto frame = [&](double t, const std::vector<double>& g) {
    WaveFrame f{t, std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) f.u[i] = g[i] / wgt[i];
    res.frames.push_back(std::move(f));
  };
  frame(0.0, g0);

  // energy between steps k and k+1, at t = (k + 1/2) dt
  std::vector<double> prev(opt.annuli.size(), 0.0);
  auto record = [&](int k) {
    const double t = (k + 0.5) * dt;
    double total = 0;
    std::vector<double> e(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = (g1[i] - g0[i]) / dt;
      e[i] = 0.5 * (v * v + Dg1[i] * Dg0[i]) * dx;
      total += e[i];
    }
    res.times.push_back(t);
    res.total_energy.push_back(total);
    for (std::size_t a = 0; a < opt.annuli.size(); ++a) {
      const double lo = opt.annuli[a].first + t, hi = opt.annuli[a].second - t;
      double E = 0;
      // cell [|x| - dx/2, |x| + dx/2] weighted by its overlap with the annulus
      for (std::size_t i = 0; i < n; ++i) {
        const double ax = std::abs(x[i]);
        const double frac = std::min(ax + 0.5 * dx, hi) - std::max(ax - 0.5 * dx, lo);
        if (frac > 0) E += e[i] * std::min(1.0, frac / dx);
      }
      res.energy.push_back({t, lo, hi, E});
      if (k > 0 && res.total_energy.front() > 0)
        res.max_annulus_increase = std::max(res.max_annulus_increase, (E - prev[a]) / res.total_energy.front());
      prev[a] = E;
    }
  };
  record(0);

  for (int k = 1; k < steps; ++k) {
    apply_skew_D(b, x, dx, Dg1, tmp);
    for (std::size_t i = 0; i < n; ++i) g2[i] = 2.0 * g1[i] - g0[i] + dt * dt * tmp[i];
    std::swap(g0, g1);
    std::swap(g1, g2);
    std::swap(Dg0, Dg1);
    apply_skew_D(b, x, dx, g1, Dg1);
    record(k);
    if (opt.frame_every > 0 && (k + 1) % opt.frame_every == 0 && k + 1 < steps) frame((k + 1) * dt, g1);
  }
  frame(steps * dt, g1);
  return res;
}

void write_wave_csv(const WaveResult& r, std::ostream& os) {
  os << "t,x,u\n";
  os.precision(17);
  for (const auto& f : r.frames)
    for (std::size_t i = 0; i < r.x.size(); ++i) os << f.t << ',' << r.x[i] << ',' << f.u[i] << '\n';
}

void write_energy_csv(const WaveResult& r, std::ostream& os) {
  os << "t,annulus_lo,annulus_hi,E\n";
  os.precision(17);
  for (const auto& e : r.energy) os << e.t << ',' << e.lo << ',' << e.hi << ',' << e.E << '\n';
}

}  // namespace bdeform::pointwise
