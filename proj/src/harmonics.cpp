#include "bdeform/harmonics.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <tuple>

#include "bdeform/specfun.hpp"

namespace bdeform::harmonics {

// ---- MultiPoly

MultiPoly MultiPoly::constant(int N, const mpq_class& c) {
  MultiPoly p(N);
  p.add_term(Exponent(N, 0), c);
  return p;
}

MultiPoly MultiPoly::monomial(const Exponent& e, const mpq_class& c) {
  MultiPoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

MultiPoly MultiPoly::coord(int N, int n) {
  Exponent e(N, 0);
  e.at(n) = 1;
  return monomial(e);
}

MultiPoly MultiPoly::abs_x2(int N) {
  MultiPoly p(N);
  for (int n = 0; n < N; ++n) {
    Exponent e(N, 0);
    e[n] = 2;
    p.add_term(e, 1);
  }
  return p;
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

void MultiPoly::add_term(const Exponent& e, const mpq_class& c) {
  if (static_cast<int>(e.size()) != N_) throw DomainError("MultiPoly: exponent length mismatch");
  mpq_class v = c;
  v.canonicalize();
  if (v == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, v);
    return;
  }
  it->second += v;
  if (it->second == 0) terms_.erase(it);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.N_ != N_) throw DomainError("MultiPoly: dimension mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.N_ != N_) throw DomainError("MultiPoly: dimension mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.N_ != b.N_) throw DomainError("MultiPoly: dimension mismatch");
  MultiPoly r(a.N_);
  Exponent e(a.N_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int k = 0; k < a.N_; ++k) e[k] = ea[k] + eb[k];
      r.add_term(e, ca * cb);
    }
  return r;
}

MultiPoly MultiPoly::derivative(int n) const {
  MultiPoly r(N_);
  for (const auto& [e, c] : terms_) {
    if (e[n] == 0) continue;
    Exponent f = e;
    f[n] -= 1;
    r.add_term(f, c * e[n]);
  }
  return r;
}

double MultiPoly::eval(std::span<const double> x) const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (int k = 0; k < N_; ++k)
      for (int i = 0; i < e[k]; ++i) t *= x[k];
    s += t;
  }
  return s;
}

MultiPoly laplacian(const MultiPoly& p) {
  MultiPoly r(p.N());
  for (const auto& [e, c] : p.terms()) {
    for (int k = 0; k < p.N(); ++k) {
      if (e[k] < 2) continue;
      Exponent f = e;
      f[k] -= 2;
      r.add_term(f, c * (e[k] * (e[k] - 1)));
    }
  }
  return r;
}

MultiPoly euler_apply(const MultiPoly& p) {
  MultiPoly r(p.N());
  for (const auto& [e, c] : p.terms()) {
    int s = 0;
    for (int k : e) s += k;
    r.add_term(e, c * s);
  }
  return r;
}

mpq_class monomial_sphere_ratio(const Exponent& a) {
  const int N = static_cast<int>(a.size());
  int total = 0;
  mpz_class num = 1;
  for (int k : a) {
    if (k % 2) return 0;
    for (int i = k - 1; i > 0; i -= 2) num *= i;
    total += k;
  }
  mpz_class den = 1;
  for (int i = 0; i < total / 2; ++i) den *= N + 2 * i;
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

double monomial_sphere_integral(const Exponent& a) {
  return monomial_sphere_ratio(a).get_d() * sphere_volume(static_cast<int>(a.size()));
}

mpq_class sphere_inner_ratio(const MultiPoly& p, const MultiPoly& q) {
  mpq_class s = 0;
  Exponent e(p.N());
  for (const auto& [ea, ca] : p.terms())
    for (const auto& [eb, cb] : q.terms()) {
      bool odd = false;
      for (int k = 0; k < p.N(); ++k) {
        e[k] = ea[k] + eb[k];
        odd = odd || (e[k] % 2);
      }
      if (!odd) s += ca * cb * monomial_sphere_ratio(e);
    }
  return s;
}

namespace {

// sum alpha! p_a q_a; proportional to the sphere product on H^m
mpq_class fischer(const MultiPoly& p, const MultiPoly& q) {
  const auto& small = p.terms().size() <= q.terms().size() ? p : q;
  const auto& big = &small == &p ? q : p;
  mpq_class s = 0;
  for (const auto& [e, c] : small.terms()) {
    auto it = big.terms().find(e);
    if (it == big.terms().end()) continue;
    mpz_class f = 1;
    for (int k : e)
      for (int i = 2; i <= k; ++i) f *= i;
    s += c * it->second * f;
  }
  return s;
}

void exponents_of_degree(int N, int m, Exponent& cur, int pos, std::vector<Exponent>& out) {
  if (pos == N - 1) {
    cur[pos] = m;
    out.push_back(cur);
    return;
  }
  for (int k = m; k >= 0; --k) {
    cur[pos] = k;
    exponents_of_degree(N, m - k, cur, pos + 1, out);
  }
}

// sum_k a_k |x|^{2k} Delta^k p, the harmonic component of a degree-m form
MultiPoly harmonic_projection(const MultiPoly& p, int m) {
  const int N = p.N();
  const MultiPoly r2 = MultiPoly::abs_x2(N);
  MultiPoly out = p;
  MultiPoly lap = p;
  MultiPoly rpow = MultiPoly::constant(N, 1);
  mpq_class a = 1;
  for (int k = 0;; ++k) {
    lap = laplacian(lap);
    if (lap.is_zero()) break;
    a = -a / mpq_class(2 * (k + 1) * (N + 2 * m - 2 * k - 4));
    rpow = rpow * r2;
    out += (rpow * lap) * a;
  }
  return out;
}

void fill_float(HarmonicElement& h, int N) {
  const double vol = sphere_volume(N);
  h.scale = static_cast<double>(1.0L / std::sqrt(static_cast<long double>(vol) *
                                                  static_cast<long double>(h.norm_ratio.get_d())));
  h.fterms.clear();
  for (const auto& [e, c] : h.poly.terms()) h.fterms.emplace_back(e, h.scale * c.get_d());
}

std::vector<HarmonicElement> build_basis(int N, int m, unsigned seed) {
  std::vector<HarmonicElement> out;
  if (N == 1) {
    if (m > 1) return out;
    HarmonicElement h;
    h.poly = MultiPoly::monomial(Exponent{m});
    h.m = m;
    h.norm_ratio = 1;
    fill_float(h, 1);
    out.push_back(h);
    return out;
  }
  std::vector<Exponent> seeds;
  Exponent cur(N);
  exponents_of_degree(N, m, cur, 0, seeds);
  if (seed != 0) {
    std::mt19937 rng(seed);
    std::shuffle(seeds.begin(), seeds.end(), rng);
  }
  const int dim = harmonic_dimension(N, m);
  std::vector<mpq_class> fnorm;
  for (const auto& e : seeds) {
    if (static_cast<int>(out.size()) == dim) break;
    MultiPoly v = harmonic_projection(MultiPoly::monomial(e), m);
    for (std::size_t k = 0; k < out.size(); ++k) {
      mpq_class c = fischer(v, out[k].poly);
      if (c != 0) v -= out[k].poly * mpq_class(c / fnorm[k]);
    }
    if (v.is_zero()) continue;
    if (!laplacian(v).is_zero()) throw std::logic_error("harmonic_basis: projection not harmonic");
    HarmonicElement h;
    h.poly = std::move(v);
    h.m = m;
    h.j = static_cast<int>(out.size());
    h.norm_ratio = sphere_inner_ratio(h.poly, h.poly);
    fill_float(h, N);
    fnorm.push_back(fischer(h.poly, h.poly));
    out.push_back(std::move(h));
  }
  if (static_cast<int>(out.size()) != dim) throw std::logic_error("harmonic_basis: dimension mismatch");
  return out;
}

}  // namespace

double HarmonicElement::eval(std::span<const double> x) const {
  double s = 0.0;
  for (const auto& [e, c] : fterms) {
    double t = c;
    for (std::size_t k = 0; k < e.size(); ++k)
      for (int i = 0; i < e[k]; ++i) t *= x[k];
    s += t;
  }
  return s;
}

int harmonic_dimension(int N, int m) {
  if (m < 0) return 0;
  if (N == 1) return m <= 1 ? 1 : 0;
  if (N == 2) return m == 0 ? 1 : 2;
  // (2m+N-2)(m+N-3)!/(m!(N-2)!)
  long long num = 2 * m + N - 2;
  long long binom = 1;  // C(m+N-3, m) = (m+N-3)!/(m!(N-3)!)
  for (int i = 1; i <= N - 3; ++i) binom = binom * (m + i) / i;
  return static_cast<int>(num * binom / (N - 2));
}

const std::vector<HarmonicElement>& harmonic_basis(int N, int m, unsigned seed) {
  if (N < 1 || N > 4) throw DomainError("harmonic_basis: N must be in 1..4");
  if (m < 0) throw DomainError("harmonic_basis: negative degree");
  static std::mutex mu;
  static std::map<std::tuple<int, int, unsigned>, std::vector<HarmonicElement>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(N, m, seed);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_basis(N, m, seed)).first;
  return it->second;
}

Split split_xn_p(const MultiPoly& p, int m, int n) {
  const int N = p.N();
  if (n < 0 || n >= N) throw DomainError("split_xn_p: coordinate out of range");
  if (!laplacian(p).is_zero() || !(euler_apply(p) == p * mpq_class(m)))
    throw DomainError("split_xn_p: input is not harmonic of the given degree");
  Split s{MultiPoly(N), MultiPoly(N)};
  if (m > 0) {
    // lambda_{N,m} = (N-2)/2 + m
    mpq_class two_lambda(N - 2 + 2 * m);
    s.minus = p.derivative(n) * mpq_class(1 / two_lambda);
  }
  s.plus = MultiPoly::coord(N, n) * p - MultiPoly::abs_x2(N) * s.minus;
  if (!laplacian(s.plus).is_zero() || !laplacian(s.minus).is_zero())
    throw std::logic_error("split_xn_p: components not harmonic");
  return s;
}

namespace {

// coefficient of scale_j * h on the orthonormal element q (same degree)
double coefficient(const MultiPoly& h, double scale_j, const HarmonicElement& q, double vol) {
  if (h.is_zero()) return 0.0;
  // sphere product from the Fischer product via the fixed ratio on H^m
  mpq_class fq = fischer(q.poly, q.poly);
  mpq_class r = fischer(h, q.poly) * q.norm_ratio / fq;
  return static_cast<double>(static_cast<long double>(r.get_d()) * vol * scale_j * q.scale);
}

}  // namespace

const SplitMatrices& split_matrices(int N, int m, int n, unsigned seed) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int, unsigned>, SplitMatrices> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({N, m, n, seed});
    if (it != cache.end()) return it->second;
  }
  const auto& cur = harmonic_basis(N, m, seed);
  const auto& up = harmonic_basis(N, m + 1, seed);
  static const std::vector<HarmonicElement> none;
  const auto& down = m > 0 ? harmonic_basis(N, m - 1, seed) : none;
  const double vol = sphere_volume(N);
  SplitMatrices sm;
  sm.plus = Eigen::MatrixXd::Zero(up.size(), cur.size());
  sm.minus = Eigen::MatrixXd::Zero(down.size(), cur.size());
  for (std::size_t j = 0; j < cur.size(); ++j) {
    auto s = split_xn_p(cur[j].poly, m, n);
    for (std::size_t k = 0; k < up.size(); ++k) sm.plus(k, j) = coefficient(s.plus, cur[j].scale, up[k], vol);
    for (std::size_t k = 0; k < down.size(); ++k)
      sm.minus(k, j) = coefficient(s.minus, cur[j].scale, down[k], vol);
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_tuple(N, m, n, seed), std::move(sm)).first->second;
}

double zonal_check(int N, int m, std::span<const double> omega, std::span<const double> mu,
                   unsigned seed) {
  const auto& basis = harmonic_basis(N, m, seed);
  double lhs = 0.0;
  for (const auto& h : basis) lhs += h.eval(omega) * h.eval(mu);
  double t = 0.0;
  for (int k = 0; k < N; ++k) t += omega[k] * mu[k];
  t = std::clamp(t, -1.0, 1.0);
  double rhs = N == 1 && m > 1 ? 0.0 : specfun::gegenbauer_tilde(m, 0.5 * (N - 2), t) / sphere_volume(N);
  return std::abs(lhs - rhs);
}

}  // namespace bdeform::harmonics
