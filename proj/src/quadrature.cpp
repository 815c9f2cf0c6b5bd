#include "bdeform/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <queue>
#include <sstream>

#include "bdeform/specfun.hpp"

namespace bdeform::quadrature {

double QuadratureRule::mass() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

Recurrence legendre_recurrence(int n) {
  Recurrence r;
  r.a.assign(n, 0.0);
  r.b.assign(n, 0.0);
  for (int k = 1; k < n; ++k) r.b[k] = double(k) * k / (4.0 * k * k - 1.0);
  r.mu0 = 2.0;
  return r;
}

Recurrence jacobi01_recurrence(int n, double alpha, double beta) {
  if (!(alpha > -1.0) || !(beta > -1.0)) throw DomainError("Jacobi weight exponents must exceed -1");
  Recurrence r;
  r.a.assign(n, 0.0);
  r.b.assign(n, 0.0);
  const double ab = alpha + beta;
  for (int k = 0; k < n; ++k) {
    double a;
    if (k == 0) {
      a = (beta - alpha) / (ab + 2.0);
    } else {
      const double s = 2.0 * k + ab;
      a = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
    r.a[k] = 0.5 * (1.0 + a);
    if (k == 0) continue;
    double bk;
    if (k == 1) {
      bk = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double s = 2.0 * k + ab;
      bk = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    r.b[k] = 0.25 * bk;
  }
  r.mu0 = std::exp(specfun::ln_gamma(alpha + 1.0) + specfun::ln_gamma(beta + 1.0) -
                   specfun::ln_gamma(ab + 2.0));
  return r;
}

Recurrence laguerre_recurrence(int n, double alpha) {
  if (!(alpha > -1.0)) throw DomainError("Laguerre weight exponent must exceed -1");
  Recurrence r;
  r.a.resize(n);
  r.b.assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    r.a[k] = 2.0 * k + alpha + 1.0;
    r.b[k] = k * (k + alpha);
  }
  r.mu0 = std::exp(specfun::ln_gamma(alpha + 1.0));
  return r;
}

namespace {

// Orthonormal polynomial values p_0..p_{deg} at x (long double for range).
void orthonormal_values(const Recurrence& rec, int deg, long double x, std::vector<long double>& p,
                        std::vector<long double>* dp = nullptr) {
  p.assign(deg + 1, 0.0L);
  if (dp) dp->assign(deg + 1, 0.0L);
  p[0] = 1.0L / std::sqrt(static_cast<long double>(rec.mu0));
  if (deg == 0) return;
  long double sb = std::sqrt(static_cast<long double>(rec.b[1]));
  p[1] = (x - rec.a[0]) * p[0] / sb;
  if (dp) (*dp)[1] = p[0] / sb;
  for (int k = 1; k < deg; ++k) {
    long double sk = std::sqrt(static_cast<long double>(rec.b[k]));
    long double sk1 = std::sqrt(static_cast<long double>(rec.b[k + 1]));
    p[k + 1] = ((x - rec.a[k]) * p[k] - sk * p[k - 1]) / sk1;
    if (dp) (*dp)[k + 1] = (p[k] + (x - rec.a[k]) * (*dp)[k] - sk * (*dp)[k - 1]) / sk1;
  }
}

void self_test(const QuadratureRule& rule, const Recurrence& rec, int n) {
  const int top = 2 * n - 1;
  std::vector<long double> sum(top + 1, 0.0L), absum(top + 1, 0.0L), p;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    orthonormal_values(rec, top, rule.nodes[i], p);
    for (int k = 0; k <= top; ++k) {
      sum[k] += rule.weights[i] * p[k];
      absum[k] += std::abs(rule.weights[i] * p[k]);
    }
  }
  const long double s0 = std::sqrt(static_cast<long double>(rec.mu0));
  for (int k = 0; k <= top; ++k) {
    long double expect = k == 0 ? s0 : 0.0L;
    long double scale = std::max(s0, absum[k]);
    if (!(std::abs(sum[k] - expect) <= 1e-10L * scale)) {
      std::ostringstream os;
      os << "quadrature self-test failed at degree " << k << " (" << rule.weight_tag << ", n=" << n
         << ")";
      throw NumericError(os.str(), cplx(double(sum[k])), double(scale));
    }
  }
}

}  // namespace

QuadratureRule gauss_from_recurrence(const Recurrence& rec, int n) {
  if (n < 1) throw DomainError("rule size must be positive");
  if (static_cast<int>(rec.a.size()) < 2 * n) throw DomainError("recurrence too short for self-test");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.exactness_degree = 2 * n - 1;

  Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) diag[k] = rec.a[k];
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(rec.b[k]);
  Eigen::VectorXd ev;
  if (n == 1) {
    ev = diag;
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
    ev = es.eigenvalues();
  }

  std::vector<long double> p, dp;
  for (int i = 0; i < n; ++i) {
    long double x = ev[i];
    for (int it = 0; it < 8; ++it) {
      orthonormal_values(rec, n, x, p, &dp);
      if (dp[n] == 0.0L) break;
      long double dx = p[n] / dp[n];
      x -= dx;
      if (std::abs(dx) <= 1e-19L * std::max(std::abs(x), 1e-300L)) break;
    }
    orthonormal_values(rec, n - 1, x, p);
    long double s = 0.0L;
    for (int k = 0; k < n; ++k) s += p[k] * p[k];
    rule.nodes[i] = static_cast<double>(x);
    rule.weights[i] = static_cast<double>(1.0L / s);
  }
  return rule;
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1 || n > 512) throw DomainError("gauss_legendre: 1 <= n <= 512");
  auto rec = legendre_recurrence(2 * n);
  auto rule = gauss_from_recurrence(rec, n);
  rule.domain = Domain::SymmetricInterval;
  rule.weight_tag = "1 on [-1,1]";
  self_test(rule, rec, n);
  return rule;
}

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
  auto rec = jacobi01_recurrence(2 * n, alpha, beta);
  auto rule = gauss_from_recurrence(rec, n);
  rule.domain = Domain::UnitInterval;
  rule.alpha = alpha;
  rule.beta = beta;
  std::ostringstream tag;
  tag << "u^" << beta << " (1-u)^" << alpha << " on [0,1]";
  rule.weight_tag = tag.str();
  self_test(rule, rec, n);
  return rule;
}

QuadratureRule gauss_laguerre_gen(int n, double alpha) {
  if (n < 1 || n > 200) throw DomainError("gauss_laguerre_gen: 1 <= n <= 200");
  auto rec = laguerre_recurrence(2 * n, alpha);
  auto rule = gauss_from_recurrence(rec, n);
  rule.domain = Domain::HalfLine;
  rule.alpha = alpha;
  std::ostringstream tag;
  tag << "t^" << alpha << " e^-t on [0,inf)";
  rule.weight_tag = tag.str();
  self_test(rule, rec, n);
  return rule;
}

namespace {

void sphere_self_test(const QuadratureRule& rule, int N) {
  const double vol = sphere_volume(N);
  double mass = 0.0;
  std::vector<double> first(N, 0.0), second(N * N, 0.0);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    auto x = rule.node(i);
    double w = rule.weights[i];
    mass += w;
    for (int a = 0; a < N; ++a) {
      first[a] += w * x[a];
      for (int c = 0; c < N; ++c) second[a * N + c] += w * x[a] * x[c];
    }
  }
  bool ok = std::abs(mass - vol) <= 1e-12 * vol;
  for (int a = 0; a < N; ++a) {
    ok = ok && std::abs(first[a]) <= 1e-12 * vol;
    for (int c = 0; c < N; ++c) {
      double expect = a == c ? vol / N : 0.0;
      ok = ok && std::abs(second[a * N + c] - expect) <= 1e-12 * vol;
    }
  }
  if (!ok) throw NumericError("sphere rule self-test failed", cplx(mass), vol);
}

}  // namespace

QuadratureRule sphere_rule(int N, int order) {
  if (N < 1 || N > 4) throw DomainError("sphere_rule: N must be in [1,4]");
  if (order < 1) order = 1;
  QuadratureRule rule;
  rule.domain = Domain::Sphere;
  rule.dim = N;
  rule.weight_tag = "surface measure on S^" + std::to_string(N - 1);
  if (N == 1) {
    rule.nodes = {-1.0, 1.0};
    rule.weights = {1.0, 1.0};
    rule.exactness_degree = 1 << 20;
    return rule;
  }
  if (N == 2) {
    int n = order + 1;
    if (n % 2) ++n;
    if (n < 4) n = 4;
    for (int k = 0; k < n; ++k) {
      double th = 2.0 * std::numbers::pi * k / n;
      rule.nodes.push_back(std::cos(th));
      rule.nodes.push_back(std::sin(th));
      rule.weights.push_back(2.0 * std::numbers::pi / n);
    }
    rule.exactness_degree = n - 1;
    sphere_self_test(rule, N);
    return rule;
  }
  const double a = 0.5 * (N - 3);
  const int ns = order / 2 + 1;
  auto polar = gauss_jacobi(ns, a, a);
  auto lower = sphere_rule(N - 1, order);
  const double scale = std::pow(2.0, 2.0 * a + 1.0);
  for (std::size_t i = 0; i < polar.size(); ++i) {
    double s = 2.0 * polar.nodes[i] - 1.0;
    double c = std::sqrt(std::max(0.0, 1.0 - s * s));
    for (std::size_t k = 0; k < lower.size(); ++k) {
      auto eta = lower.node(k);
      for (int d = 0; d < N - 1; ++d) rule.nodes.push_back(c * eta[d]);
      rule.nodes.push_back(s);
      rule.weights.push_back(scale * polar.weights[i] * lower.weights[k]);
    }
  }
  rule.exactness_degree = std::min(2 * ns - 1, lower.exactness_degree);
  sphere_self_test(rule, N);
  return rule;
}

QuadratureRule weighted_ball_rule(const DeformationParams& params, int radial_nodes,
                                  int sphere_order, RadialMap map) {
  const int N = params.N();
  const double b = params.b();
  if (!(b > -0.5 * N)) throw DomainError("weighted_ball_rule: b must exceed -N/2");
  auto sph = sphere_rule(N, sphere_order);
  std::vector<double> r, w;
  int radial_exact = 0;
  std::string tag;
  if (map.kind == RadialMapKind::GaussianFull) {
    const double s = map.gaussian_scale;
    const double kappa = b + 0.5 * N;
    auto lag = gauss_laguerre_gen(radial_nodes, kappa - 1.0);
    const long double pref = 0.5L * std::pow(static_cast<long double>(s), -kappa);
    for (std::size_t i = 0; i < lag.size(); ++i) {
      long double t = lag.nodes[i];
      r.push_back(std::sqrt(static_cast<double>(t / s)));
      w.push_back(static_cast<double>(pref * lag.weights[i] * std::exp(t)));
    }
    radial_exact = lag.exactness_degree;
    tag = "|x|^{2b} dx on R^N (Gaussian-adapted)";
  } else {
    const double R = map.R;
    if (!(R > 0.0)) throw DomainError("weighted_ball_rule: radius must be positive");
    auto jac = gauss_jacobi(radial_nodes, 0.0, N + 2.0 * b - 1.0);
    const double scale = std::pow(R, N + 2.0 * b);
    for (std::size_t i = 0; i < jac.size(); ++i) {
      r.push_back(R * jac.nodes[i]);
      w.push_back(scale * jac.weights[i]);
    }
    radial_exact = jac.exactness_degree;
    tag = "|x|^{2b} dx on B_R";
  }
  QuadratureRule rule;
  rule.domain = Domain::RadialTimesSphere;
  rule.dim = N;
  rule.weight_tag = tag;
  rule.alpha = b;
  rule.exactness_degree = std::min(radial_exact, sph.exactness_degree);
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t k = 0; k < sph.size(); ++k) {
      auto om = sph.node(k);
      for (int d = 0; d < N; ++d) rule.nodes.push_back(r[i] * om[d]);
      rule.weights.push_back(w[i] * sph.weights[k]);
    }
  }
  return rule;
}

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Piece {
  double a, b;
  T val;
  double err;
  bool operator<(const Piece& o) const { return err < o.err; }
};

template <class T, class F>
Piece<T> gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fc = f(c);
  T k = kWgk[7] * fc, g = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    T s = f(c - h * kXgk[i]) + f(c + h * kXgk[i]);
    k += kWgk[i] * s;
    if (i % 2 == 1) g += kWg[i / 2] * s;
  }
  return {a, b, h * k, std::abs(h * (k - g))};
}

template <class T, class F>
T adaptive(const F& f, double a, double b, AdaptiveOptions opt) {
  std::priority_queue<Piece<T>> pq;
  auto first = gk15<T>(f, a, b);
  T total = first.val;
  double err = first.err;
  pq.push(first);
  int count = 1;
  while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (count >= opt.max_intervals)
      throw NumericError("adaptive_1d: subdivision cap reached", cplx(total), err);
    auto top = pq.top();
    pq.pop();
    double mid = 0.5 * (top.a + top.b);
    auto l = gk15<T>(f, top.a, mid), r = gk15<T>(f, mid, top.b);
    total += l.val + r.val - top.val;
    err += l.err + r.err - top.err;
    pq.push(l);
    pq.push(r);
    ++count;
  }
  // resum to shed accumulated cancellation error
  T sum{};
  for (; !pq.empty(); pq.pop()) sum += pq.top().val;
  return sum;
}

}  // namespace

double adaptive_1d_real(const std::function<double(double)>& f, double a, double b,
                        AdaptiveOptions opt) {
  return adaptive<double>(f, a, b, opt);
}
cplx adaptive_1d_complex(const std::function<cplx(double)>& f, double a, double b,
                         AdaptiveOptions opt) {
  return adaptive<cplx>(f, a, b, opt);
}

void write_csv(const QuadratureRule& rule, std::ostream& os) {
  for (int d = 0; d < rule.dim; ++d) os << "x" << d + 1 << ",";
  os << "w\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    auto x = rule.node(i);
    for (int d = 0; d < rule.dim; ++d) os << x[d] << ",";
    os << rule.weights[i] << "\n";
  }
}

}  // namespace bdeform::quadrature
