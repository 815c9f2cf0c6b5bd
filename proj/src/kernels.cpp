#include "bdeform/kernels.hpp"

#include <cmath>
#include <ostream>

#include "bdeform/script_i.hpp"
#include "bdeform/specfun.hpp"

namespace bdeform::kernels {

namespace {

using specfun::cld;

double nu_of(const DeformationParams& p) { return 0.5 * (p.N() - 2); }

bool sinh_vanishes(cplx t) {
  if (std::abs(t.real()) > 1e-300) return false;
  double k = t.imag() / std::numbers::pi;
  return std::abs(k - std::round(k)) < 1e-14;
}

void check_lambda_t(cplx t) {
  if (t.real() < 0.0) throw DomainError("Lambda kernel: Re t must be >= 0");
  if (sinh_vanishes(t)) throw DomainError("Lambda kernel: sinh t = 0");
}

// K(x,y) = pref * exp(-(r^2+rho^2) q) * scriptI(ws * r * rho, cos)
struct KernelShape {
  cplx pref = 1.0;
  cplx q = 0.0;
  cplx ws = 1.0;
};

KernelShape shape(const DeformationParams& p, Transform kind, cplx t) {
  const double kappa = p.kappa();
  switch (kind) {
    case Transform::Fourier: return {1.0, 0.0, cplx(0, -1)};
    case Transform::FourierInverse: return {1.0, 0.0, cplx(0, 1)};
    case Transform::Hermite: {
      check_lambda_t(t);
      cplx s = std::sinh(t);
      return {std::exp(-kappa * log_sinh(t)), 0.5 * std::cosh(t) / s, 1.0 / s};
    }
    case Transform::Heat: {
      if (t.real() < 0.0 || t == 0.0) throw DomainError("heat kernel: need Re t >= 0 and t != 0");
      return {std::exp(-kappa * std::log(t)), 0.5 / t, 1.0 / t};
    }
  }
  return {};
}

cplx eval_shape(const DeformationParams& p, const KernelShape& s, const KernelPoint& kp) {
  cplx w = s.ws * (kp.r * kp.rho);
  cplx I = scripti::Expansion(p.b(), nu_of(p), w)(kp.cos_theta);
  return s.pref * std::exp(-(kp.r * kp.r + kp.rho * kp.rho) * s.q) * I;
}

}  // namespace

KernelPoint KernelPoint::make(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("KernelPoint: dimension mismatch");
  KernelPoint k;
  double rr = 0, pp = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    rr += x[i] * x[i];
    pp += y[i] * y[i];
    k.dot += x[i] * y[i];
  }
  k.r = std::sqrt(rr);
  k.rho = std::sqrt(pp);
  if (k.r * k.rho > 0.0) k.cos_theta = std::clamp(k.dot / (k.r * k.rho), -1.0, 1.0);
  return k;
}

cplx log_sinh(cplx t) {
  // sinh t = e^t (1 - e^{-2t}) / 2; |e^{-2t}| <= 1 keeps the log principal
  return t - std::numbers::ln2 + std::log(1.0 - std::exp(-2.0 * t));
}

cplx lambda_kernel(const DeformationParams& params, const KernelPoint& kp, cplx t) {
  return eval_shape(params, shape(params, Transform::Hermite, t), kp);
}

cplx heat_kernel(const DeformationParams& params, const KernelPoint& kp, cplx t) {
  return eval_shape(params, shape(params, Transform::Heat, t), kp);
}

cplx B_kernel(const DeformationParams& params, const KernelPoint& kp) {
  return eval_shape(params, shape(params, Transform::Fourier, 0.0), kp);
}

cplx B_kernel_beta_form(const DeformationParams& params, const KernelPoint& kp,
                        const quadrature::QuadratureRule& rule) {
  const double b = params.b();
  if (!(b > 0.0)) throw DomainError("B_kernel_beta_form: b must be positive");
  if (rule.domain != quadrature::Domain::UnitInterval || std::abs(rule.beta - (b - 1.0)) > 1e-14 ||
      std::abs(rule.alpha - (0.5 * params.N() - 1.0)) > 1e-14)
    throw DomainError("B_kernel_beta_form: rule weight must be u^{b-1} (1-u)^{N/2-1}");
  const double rp = kp.r * kp.rho;
  cld acc = 0.0L;
  long double mass = 0.0L;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double u = rule.nodes[i];
    cld J = specfun::script_bessel_ld(b, cld(0.0L, static_cast<long double>(u * rp)));
    cld ph = std::exp(cld(0.0L, -static_cast<long double>((1.0 - u) * kp.dot)));
    acc += static_cast<long double>(rule.weights[i]) * J * ph;
    mass += rule.weights[i];
  }
  return cplx(acc / mass);
}

cplx B_kernel_beta_form(const DeformationParams& params, const KernelPoint& kp) {
  if (!(params.b() > 0.0)) throw DomainError("B_kernel_beta_form: b must be positive");
  cplx prev;
  for (int n = 24; n <= 768; n *= 2) {
    auto rule = quadrature::gauss_jacobi(n, 0.5 * params.N() - 1.0, params.b() - 1.0);
    cplx v = B_kernel_beta_form(params, kp, rule);
    if (n > 24 && std::abs(v - prev) <= 1e-14 * std::max(1.0, std::abs(v))) return v;
    prev = v;
  }
  return prev;
}

namespace {

cplx n1_combo(double b, cld z, bool oscillatory) {
  // Gamma(b+1/2) (F_{b-1/2}(z) +- (z/2) F_{b+1/2}(z)) with F = I~ or J~
  const long double g = std::exp(static_cast<long double>(specfun::ln_gamma(b + 0.5)));
  cld arg = oscillatory ? cld(-z.imag(), z.real()) : z;
  auto F = specfun::tilde_bessel_orders(b - 0.5L, 2, arg);
  cld second = (z / 2.0L) * F[1];
  return cplx(g * (F[0] + (oscillatory ? cld(0.0L, -1.0L) * second : second)));
}

}  // namespace

cplx lambda_kernel_n1(double b, double x, double y, cplx t) {
  if (!(b > -0.5)) throw DomainError("N = 1 needs b > -1/2");
  check_lambda_t(t);
  cplx s = std::sinh(t);
  cplx z = x * y / s;
  cplx pre = std::exp(-(b + 0.5) * log_sinh(t) - (x * x + y * y) * 0.5 * std::cosh(t) / s);
  return pre * n1_combo(b, cld(z.real(), z.imag()), false);
}

cplx heat_kernel_n1(double b, double x, double y, cplx t) {
  if (!(b > -0.5)) throw DomainError("N = 1 needs b > -1/2");
  if (t.real() < 0.0 || t == 0.0) throw DomainError("heat kernel: need Re t >= 0 and t != 0");
  cplx z = x * y / t;
  cplx pre = std::exp(-(b + 0.5) * std::log(t) - (x * x + y * y) / (2.0 * t));
  return pre * n1_combo(b, cld(z.real(), z.imag()), false);
}

cplx B_kernel_n1(double b, double x, double y) {
  if (!(b > -0.5)) throw DomainError("N = 1 needs b > -1/2");
  // J~(s) = I~(i s): the combo with oscillatory=true takes the real argument s = xy
  return n1_combo(b, cld(static_cast<long double>(x * y), 0.0L), true);
}

cplx hille_hardy_sum(const DeformationParams& params, std::span<const double> x, std::span<const double> y,
                     cplx t, spectral::Truncation tr) {
  if (t.real() < 0.0) throw DomainError("hille_hardy_sum: Re t must be >= 0");
  spectral::Layout lay(params.N(), tr);
  std::vector<double> px, py;
  spectral::phi_all(params, lay, x, px);
  spectral::phi_all(params, lay, y, py);
  cplx s = 0.0;
  for (int i = 0; i < lay.size(); ++i) {
    auto k = lay.index(i);
    double kap = params.b() + params.lambda(k.m) + 2 * k.l + 1;
    s += std::exp(-t * kap) * px[i] * py[i] / spectral::phi_norm_sq(params, k);
  }
  return s;
}

quadrature::QuadratureRule transform_rule(const DeformationParams& params, int radial_nodes, int sphere_order) {
  return quadrature::weighted_ball_rule(params, radial_nodes, sphere_order, quadrature::RadialMap::gaussian(0.5));
}

std::vector<cplx> sample(const PointFunction& f, const quadrature::QuadratureRule& rule) {
  std::vector<cplx> v(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) v[i] = f(rule.node(i));
  return v;
}

namespace {

void check_rule(const DeformationParams& p, const quadrature::QuadratureRule& rule) {
  if (rule.domain != quadrature::Domain::RadialTimesSphere || rule.dim != p.N() ||
      std::abs(rule.alpha - p.b()) > 1e-14 || rule.weight_tag.find("R^N") == std::string::npos)
    throw DomainError("transform: rule must carry |x|^{2b} dx on R^N for these params");
}

struct Shell {
  std::size_t begin, end;
  double rho;
  double mass;  // sum |w f|
};

std::vector<Shell> shells(const std::vector<cplx>& f, const quadrature::QuadratureRule& rule) {
  std::vector<double> radius(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    double r2 = 0;
    for (double v : rule.node(i)) r2 += v * v;
    radius[i] = std::sqrt(r2);
  }
  std::vector<Shell> out;
  std::size_t i = 0;
  while (i < rule.size()) {
    std::size_t e = i;
    double m = 0;
    while (e < rule.size() && std::abs(radius[e] - radius[i]) <= 1e-12 * std::max(radius[i], 1.0)) {
      m += std::abs(rule.weights[e] * f[e]);
      ++e;
    }
    out.push_back({i, e, radius[i], m});
    i = e;
  }
  return out;
}

// f weighted by the kernel's radial Gaussian at the origin must be negligible
// on the outermost shells, or the rule cannot integrate it.
void check_decay(const std::vector<Shell>& sh, const KernelShape& s) {
  double rmax = 0, total = 0, outer = 0;
  for (const auto& x : sh) rmax = std::max(rmax, x.rho);
  for (const auto& x : sh) {
    double c = x.mass * std::exp(-x.rho * x.rho * s.q.real());
    total += c;
    if (x.rho >= 0.8 * rmax) outer += c;
  }
  if (total > 0 && outer > 1e-10 * total)
    throw DomainError("transform: f does not decay fast enough for the Gaussian-adapted rule");
}

}  // namespace

std::vector<cplx> transform_values(const DeformationParams& params, Transform kind, cplx t,
                                   const std::vector<cplx>& f_at_nodes, const quadrature::QuadratureRule& rule,
                                   const std::vector<std::vector<double>>& targets) {
  check_rule(params, rule);
  if (f_at_nodes.size() != rule.size()) throw DomainError("transform: sample count differs from rule size");
  if (kind == Transform::Hermite && t.real() <= 0.0) throw DomainError("semigroup: Re t must be > 0");
  if (kind == Transform::Heat && t.real() <= 0.0) throw DomainError("heat semigroup: Re t must be > 0");
  const int N = params.N();
  const KernelShape s = shape(params, kind, t);
  const double nu = nu_of(params);
  const auto bound = scripti::poly_exp_bound(params.b(), nu);
  const auto sh = shells(f_at_nodes, rule);
  check_decay(sh, s);

  std::vector<cplx> out;
  out.reserve(targets.size());
  std::vector<double> logb(sh.size());
  for (const auto& x : targets) {
    if (static_cast<int>(x.size()) != N) throw DomainError("transform: target dimension mismatch");
    double r = 0;
    for (double v : x) r += v * v;
    r = std::sqrt(r);
    // log of a bound on each shell's contribution; shells far below the
    // largest are skipped, which also keeps |w| inside the series range
    double top = -INFINITY;
    for (std::size_t k = 0; k < sh.size(); ++k) {
      cplx w = s.ws * (r * sh[k].rho);
      logb[k] = sh[k].mass > 0 ? std::log(sh[k].mass) - (r * r + sh[k].rho * sh[k].rho) * s.q.real() +
                                     std::abs(w.real()) + bound.M * std::log1p(std::abs(w))
                               : -INFINITY;
      top = std::max(top, logb[k]);
    }
    cld acc = 0.0L;
    for (std::size_t k = 0; k < sh.size(); ++k) {
      if (logb[k] < top + std::log(1e-18)) continue;
      const double rho = sh[k].rho;
      scripti::Expansion ex(params.b(), nu, s.ws * (r * rho));
      const cplx g = std::exp(-(r * r + rho * rho) * s.q);
      cld acc_shell = 0.0L;
      for (std::size_t i = sh[k].begin; i < sh[k].end; ++i) {
        if (f_at_nodes[i] == 0.0) continue;
        auto y = rule.node(i);
        double c = 0.0;
        if (r * rho > 0.0) {
          double d = 0;
          for (int n = 0; n < N; ++n) d += x[n] * y[n];
          c = std::clamp(d / (r * rho), -1.0, 1.0);
        }
        cplx v = ex(c) * f_at_nodes[i] * rule.weights[i];
        acc_shell += cld(v.real(), v.imag());
      }
      acc += cld(g.real(), g.imag()) * acc_shell;
    }
    out.push_back(params.c_bN() * s.pref * cplx(acc));
  }
  return out;
}

std::vector<cplx> transform_on_nodes(const DeformationParams& params, Transform kind, cplx t,
                                     const std::vector<cplx>& f_at_nodes, const quadrature::QuadratureRule& rule,
                                     double r_max) {
  std::vector<std::vector<double>> inside;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    auto y = rule.node(i);
    double r2 = 0;
    for (double v : y) r2 += v * v;
    if (r2 > r_max * r_max) continue;
    inside.emplace_back(y.begin(), y.end());
    where.push_back(i);
  }
  auto v = transform_values(params, kind, t, f_at_nodes, rule, inside);
  std::vector<cplx> out(rule.size(), 0.0);
  for (std::size_t k = 0; k < where.size(); ++k) out[where[k]] = v[k];
  return out;
}

namespace {

cplx one_point(const DeformationParams& params, Transform kind, cplx t, const PointFunction& f,
               std::span<const double> x, const quadrature::QuadratureRule& rule) {
  check_rule(params, rule);
  std::vector<std::vector<double>> tg{std::vector<double>(x.begin(), x.end())};
  return transform_values(params, kind, t, sample(f, rule), rule, tg)[0];
}

}  // namespace

cplx fourier_quadrature(const DeformationParams& params, const PointFunction& f, std::span<const double> x,
                        const quadrature::QuadratureRule& rule) {
  return one_point(params, Transform::Fourier, 0.0, f, x, rule);
}

cplx fourier_inverse_quadrature(const DeformationParams& params, const PointFunction& f,
                                std::span<const double> x, const quadrature::QuadratureRule& rule) {
  return one_point(params, Transform::FourierInverse, 0.0, f, x, rule);
}

cplx semigroup_quadrature(const DeformationParams& params, const PointFunction& f, std::span<const double> x,
                          cplx t, const quadrature::QuadratureRule& rule) {
  return one_point(params, Transform::Hermite, t, f, x, rule);
}

cplx heat_apply(const DeformationParams& params, const PointFunction& f, std::span<const double> x, cplx t,
                const quadrature::QuadratureRule& rule) {
  return one_point(params, Transform::Heat, t, f, x, rule);
}

void write_kernel_csv(const std::vector<KernelRow>& rows, int N, std::ostream& os) {
  for (int i = 1; i <= N; ++i) os << 'x' << i << ',';
  for (int i = 1; i <= N; ++i) os << 'y' << i << ',';
  os << "t_re,t_im,val_re,val_im\n";
  os.precision(17);
  for (const auto& r : rows) {
    for (double v : r.x) os << v << ',';
    for (double v : r.y) os << v << ',';
    os << r.t.real() << ',' << r.t.imag() << ',' << r.value.real() << ',' << r.value.imag() << '\n';
  }
}

}  // namespace bdeform::kernels
