#include "bdeform/spectral.hpp"

#include <cmath>
#include <ostream>

#include <unsupported/Eigen/MatrixFunctions>

#include "bdeform/harmonics.hpp"
#include "bdeform/specfun.hpp"

namespace bdeform::spectral {

namespace {

using Triplet = Eigen::Triplet<cplx>;

// -(b + lambda + 2l + 1)
double weight_h(const DeformationParams& p, int l, int m) { return -(p.b() + p.lambda(m) + 2 * l + 1); }

// N = 1 has no harmonics beyond degree 1, so M >= 1 truncates nothing.
bool m_truncated(int N, int M) { return !(N == 1 && M >= 1); }

void check_same(const Layout& a, const Layout& b) {
  if (!(a == b)) throw DomainError("spectral: inconsistent truncations");
}

}  // namespace

Layout::Layout(int N, Truncation tr, unsigned seed) : N_(N), tr_(tr), seed_(seed) {
  if (N < 1 || N > 4) throw DomainError("Layout: N must be in 1..4");
  if (tr.L < 0 || tr.M < 0) throw DomainError("Layout: negative truncation");
  for (int m = 0; m <= tr.M; ++m) {
    int d = static_cast<int>(harmonics::harmonic_basis(N, m, seed).size());
    dims_.push_back(d);
    offset_.push_back(harmonics_);
    for (int j = 0; j < d; ++j) block_m_.push_back(m);
    harmonics_ += d;
  }
}

BasisIndex Layout::index(int flat) const {
  int J = flat / (L() + 1);
  BasisIndex k;
  k.l = flat % (L() + 1);
  k.m = block_m_.at(J);
  k.j = J - offset_[k.m];
  return k;
}

bool Layout::contains(const BasisIndex& k) const {
  return k.l >= 0 && k.l <= L() && k.m >= 0 && k.m <= M() && k.j >= 0 && k.j < dims_[k.m];
}

bool Layout::interior(int flat, int margin) const {
  auto k = index(flat);
  if (k.l > L() - margin) return false;
  return !m_truncated(N_, M()) || k.m <= M() - margin;
}

double phi_norm_sq(const DeformationParams& params, const BasisIndex& idx) {
  double a = idx.l + params.b() + params.lambda(idx.m) + 1;
  return 0.5 * std::exp(specfun::ln_gamma(a) - specfun::ln_gamma(idx.l + 1.0));
}

double phi_eval(const DeformationParams& params, const BasisIndex& idx, std::span<const double> x,
                unsigned seed) {
  const auto& basis = harmonics::harmonic_basis(params.N(), idx.m, seed);
  if (idx.j < 0 || idx.j >= static_cast<int>(basis.size())) throw DomainError("phi_eval: bad index");
  double r2 = 0;
  for (double v : x) r2 += v * v;
  return std::exp(-0.5 * r2) * specfun::laguerre(idx.l, params.b() + params.lambda(idx.m), r2) *
         basis[idx.j].eval(x);
}

void phi_all(const DeformationParams& params, const Layout& layout, std::span<const double> x,
             std::vector<double>& out) {
  out.assign(layout.size(), 0.0);
  double r2 = 0;
  for (double v : x) r2 += v * v;
  const double g = std::exp(-0.5 * r2);
  const int L = layout.L();
  std::vector<double> lag(L + 1);
  for (int m = 0; m <= layout.M(); ++m) {
    if (layout.dim(m) == 0) continue;
    const double a = params.b() + params.lambda(m);
    lag[0] = g;
    if (L >= 1) lag[1] = g * (1 + a - r2);
    for (int k = 1; k < L; ++k) lag[k + 1] = ((2 * k + 1 + a - r2) * lag[k] - (k + a) * lag[k - 1]) / (k + 1);
    const auto& basis = harmonics::harmonic_basis(params.N(), m, layout.seed());
    for (int j = 0; j < layout.dim(m); ++j) {
      double p = basis[j].eval(x);
      int base = layout.flat({0, m, j});
      for (int l = 0; l <= L; ++l) out[base + l] = lag[l] * p;
    }
  }
}

SpectralVector SpectralVector::unit(const DeformationParams& p, const Layout& l, const BasisIndex& k) {
  if (!l.contains(k)) throw DomainError("SpectralVector: index outside truncation");
  SpectralVector v(p, l);
  v[k] = 1.0;
  return v;
}

double l2_norm_sq(const SpectralVector& v) { return sobolev_norm(v, 0.0); }

SpectralVector apply_weight_h(const SpectralVector& v) {
  SpectralVector r = v;
  for (int i = 0; i < v.layout.size(); ++i) {
    auto k = v.layout.index(i);
    r.coeffs[i] *= weight_h(v.params, k.l, k.m);
  }
  return r;
}

SpectralVector apply_raise(const SpectralVector& v) {
  SpectralVector r(v.params, v.layout);
  for (int i = 0; i < v.layout.size(); ++i) {
    if (v.coeffs[i] == 0.0) continue;
    auto k = v.layout.index(i);
    if (k.l == v.layout.L()) throw TruncationError("apply_raise: coefficient at l = L_max leaves the truncation");
    r.coeffs[i + 1] += 2.0 * (k.l + 1) * v.coeffs[i];
  }
  return r;
}

SpectralVector apply_lower(const SpectralVector& v) {
  SpectralVector r(v.params, v.layout);
  for (int i = 0; i < v.layout.size(); ++i) {
    auto k = v.layout.index(i);
    if (k.l == 0) continue;
    r.coeffs[i - 1] += -2.0 * (v.params.b() + v.params.lambda(k.m) + k.l) * v.coeffs[i];
  }
  return r;
}

std::string op_name(Op op) {
  switch (op) {
    case Op::Xn: return "x_n";
    case Op::Dn: return "D_n";
    case Op::AbsX2: return "|x|^2";
    case Op::Hb: return "H_b";
    case Op::EulerShifted: return "E+(N+2b)/2";
    case Op::Raise: return "raise";
    case Op::Lower: return "lower";
    case Op::WeightH: return "(H_b-|x|^2)/2";
  }
  return "?";
}

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& o) const {
  check_same(layout, o.layout);
  Eigen::SparseMatrix<cplx> m = mat * o.mat;
  m.prune(cplx(0.0));
  return {layout, m, "(" + tag + ")(" + o.tag + ")", std::max(interior_margin, o.interior_margin)};
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& o) const {
  check_same(layout, o.layout);
  return {layout, mat + o.mat, tag + "+" + o.tag, std::max(interior_margin, o.interior_margin)};
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& o) const {
  check_same(layout, o.layout);
  return {layout, mat - o.mat, tag + "-" + o.tag, std::max(interior_margin, o.interior_margin)};
}

OperatorMatrix OperatorMatrix::operator*(cplx s) const { return {layout, mat * s, tag, interior_margin}; }

SpectralVector OperatorMatrix::apply(const SpectralVector& v) const {
  check_same(layout, v.layout);
  SpectralVector r(v.params, v.layout);
  r.coeffs = mat * v.coeffs;
  return r;
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  auto c = a * b - b * a;
  c.tag = "[" + a.tag + "," + b.tag + "]";
  return c;
}

OperatorMatrix identity(const Layout& layout) {
  Eigen::SparseMatrix<cplx> m(layout.size(), layout.size());
  m.setIdentity();
  return {layout, m, "I", 0};
}

double interior_max_abs(const OperatorMatrix& a, int margin) {
  double mx = 0.0;
  std::vector<char> in(a.layout.size());
  for (int i = 0; i < a.layout.size(); ++i) in[i] = a.layout.interior(i, margin);
  for (int c = 0; c < a.mat.outerSize(); ++c) {
    if (!in[c]) continue;
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(a.mat, c); it; ++it)
      if (in[it.row()]) mx = std::max(mx, std::abs(it.value()));
  }
  return mx;
}

namespace {

// x_n (sign = +1) or D_n (sign = -1) from the two ladder identities
OperatorMatrix ladder(const DeformationParams& p, const Layout& lay, int n, int sign) {
  if (n < 0 || n >= p.N()) throw DomainError("build_matrix: coordinate out of range");
  std::vector<Triplet> t;
  const double b = p.b();
  for (int m = 0; m <= lay.M(); ++m) {
    if (lay.dim(m) == 0) continue;
    const auto& sm = harmonics::split_matrices(p.N(), m, n, lay.seed());
    const double lam = p.lambda(m);
    for (int j = 0; j < lay.dim(m); ++j) {
      for (int l = 0; l <= lay.L(); ++l) {
        const int col = lay.flat({l, m, j});
        if (m + 1 <= lay.M()) {
          for (int k = 0; k < sm.plus.rows(); ++k) {
            double c = sm.plus(k, j);
            if (c == 0.0) continue;
            t.emplace_back(lay.flat({l, m + 1, k}), col, sign * c);
            if (l >= 1) t.emplace_back(lay.flat({l - 1, m + 1, k}), col, -c);
          }
        }
        if (m >= 1) {
          for (int k = 0; k < sm.minus.rows(); ++k) {
            double c = sm.minus(k, j);
            if (c == 0.0) continue;
            t.emplace_back(lay.flat({l, m - 1, k}), col, (b + lam + l) * c);
            if (l + 1 <= lay.L()) t.emplace_back(lay.flat({l + 1, m - 1, k}), col, -sign * (l + 1.0) * c);
          }
        }
      }
    }
  }
  Eigen::SparseMatrix<cplx> mat(lay.size(), lay.size());
  mat.setFromTriplets(t.begin(), t.end());
  return {lay, mat, sign > 0 ? "x_" + std::to_string(n + 1) : "D_" + std::to_string(n + 1), 2};
}

OperatorMatrix diagonal_op(const DeformationParams& p, const Layout& lay, Op op) {
  std::vector<Triplet> t;
  for (int i = 0; i < lay.size(); ++i) {
    auto k = lay.index(i);
    if (op == Op::WeightH) t.emplace_back(i, i, weight_h(p, k.l, k.m));
    if (op == Op::Raise && k.l < lay.L()) t.emplace_back(i + 1, i, 2.0 * (k.l + 1));
    if (op == Op::Lower && k.l > 0) t.emplace_back(i - 1, i, -2.0 * (p.b() + p.lambda(k.m) + k.l));
  }
  Eigen::SparseMatrix<cplx> mat(lay.size(), lay.size());
  mat.setFromTriplets(t.begin(), t.end());
  return {lay, mat, op_name(op), 2};
}

}  // namespace

OperatorMatrix build_matrix(const DeformationParams& params, Op op, Truncation tr, int n, unsigned seed) {
  Layout lay(params.N(), tr, seed);
  switch (op) {
    case Op::Xn: return ladder(params, lay, n, +1);
    case Op::Dn: return ladder(params, lay, n, -1);
    case Op::WeightH:
    case Op::Raise:
    case Op::Lower: return diagonal_op(params, lay, op);
    default: break;
  }
  OperatorMatrix acc{lay, Eigen::SparseMatrix<cplx>(lay.size(), lay.size()), op_name(op), 2};
  for (int k = 0; k < params.N(); ++k) {
    auto x = ladder(params, lay, k, +1);
    auto d = ladder(params, lay, k, -1);
    if (op == Op::AbsX2) acc.mat += (x * x).mat;
    if (op == Op::Hb) acc.mat += (d * d).mat;
    if (op == Op::EulerShifted) acc.mat += 0.5 * ((d * x).mat + (x * d).mat);
  }
  acc.mat.prune(cplx(0.0));
  return acc;
}

Eigen::VectorXcd fourier_factors(const Layout& layout) {
  Eigen::VectorXcd f(layout.size());
  for (int i = 0; i < layout.size(); ++i) {
    auto k = layout.index(i);
    f[i] = ipow_int(-(2 * k.l + k.m));
  }
  return f;
}

SpectralVector fourier_spectral(const SpectralVector& v) {
  SpectralVector r = v;
  r.coeffs = v.coeffs.cwiseProduct(fourier_factors(v.layout));
  return r;
}

SpectralVector semigroup_spectral(const SpectralVector& v, cplx t) {
  if (t.real() < 0.0) throw DomainError("semigroup_spectral: Re t must be >= 0");
  SpectralVector r = v;
  for (int i = 0; i < v.layout.size(); ++i) {
    auto k = v.layout.index(i);
    r.coeffs[i] *= std::exp(t * weight_h(v.params, k.l, k.m));
  }
  return r;
}

OperatorMatrix conjugate_diagonal(const OperatorMatrix& a, const Eigen::VectorXcd& d) {
  OperatorMatrix r = a;
  for (int c = 0; c < r.mat.outerSize(); ++c)
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(r.mat, c); it; ++it)
      it.valueRef() *= d[it.row()] / d[c];
  return r;
}

namespace {

Eigen::VectorXd sqrt_norms(const DeformationParams& p, const Layout& lay) {
  Eigen::VectorXd s(lay.size());
  for (int i = 0; i < lay.size(); ++i) s[i] = std::sqrt(phi_norm_sq(p, lay.index(i)));
  return s;
}

}  // namespace

Translation translation_expm(const DeformationParams& params, int n, double t, Truncation tr,
                             unsigned seed, double max_defect) {
  if (tr.L < 4 || (m_truncated(params.N(), tr.M) && tr.M < 4))
    throw DomainError("translation_expm: truncation margin must be at least 4");
  auto D = build_matrix(params, Op::Dn, tr, n, seed);
  const auto& lay = D.layout;
  Eigen::VectorXd s = sqrt_norms(params, lay);
  Eigen::MatrixXd G = Eigen::MatrixXd(Eigen::MatrixXcd(D.mat).real());
  G = s.asDiagonal() * G * s.cwiseInverse().asDiagonal();
  Translation out{lay, {}, 0.0, 0.0, 4};
  const double gmax = std::max(G.cwiseAbs().maxCoeff(), 1.0);
  out.skew_defect = (G + G.transpose()).cwiseAbs().maxCoeff();
  if (out.skew_defect > max_defect * gmax)
    throw TruncationError("translation_expm: generator is not skew on this truncation");
  Eigen::MatrixXd A = t * 0.5 * (G - G.transpose());
  out.U = A.exp();
  Eigen::MatrixXd E = out.U.transpose() * out.U - Eigen::MatrixXd::Identity(lay.size(), lay.size());
  for (int c = 0; c < lay.size(); ++c) {
    if (!lay.interior(c, out.interior_margin)) continue;
    out.unitarity_defect = std::max(out.unitarity_defect, E.col(c).cwiseAbs().maxCoeff());
  }
  return out;
}

SpectralVector apply_translation(const Translation& tr, const SpectralVector& v) {
  check_same(tr.layout, v.layout);
  Eigen::VectorXd s = sqrt_norms(v.params, v.layout);
  Eigen::VectorXcd a = s.cast<cplx>().cwiseProduct(v.coeffs);
  a = tr.U.cast<cplx>() * a;
  SpectralVector r(v.params, v.layout);
  r.coeffs = a.cwiseQuotient(s.cast<cplx>());
  return r;
}

double sobolev_norm(const SpectralVector& v, double s) {
  double acc = 0.0;
  for (int i = 0; i < v.layout.size(); ++i) {
    if (v.coeffs[i] == 0.0) continue;
    auto k = v.layout.index(i);
    acc += std::pow(1.0 + 2 * k.l + k.m, s) * std::norm(v.coeffs[i]) * phi_norm_sq(v.params, k);
  }
  return acc;
}

SpectralVector project_function(const DeformationParams& params, const PointFunction& f,
                                const Layout& layout, const quadrature::QuadratureRule& rule) {
  if (rule.domain != quadrature::Domain::RadialTimesSphere || rule.dim != params.N() ||
      std::abs(rule.alpha - params.b()) > 1e-14)
    throw DomainError("project_function: rule does not carry the |x|^{2b} weight for these params");
  SpectralVector v(params, layout);
  std::vector<double> phi;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    auto x = rule.node(i);
    cplx fx = f(x);
    if (fx == 0.0) continue;
    phi_all(params, layout, x, phi);
    for (int k = 0; k < layout.size(); ++k) v.coeffs[k] += rule.weights[i] * fx * phi[k];
  }
  for (int k = 0; k < layout.size(); ++k) v.coeffs[k] /= phi_norm_sq(params, layout.index(k));
  return v;
}

cplx evaluate(const SpectralVector& v, std::span<const double> x) {
  std::vector<double> phi;
  phi_all(v.params, v.layout, x, phi);
  cplx s = 0.0;
  for (int k = 0; k < v.layout.size(); ++k)
    if (v.coeffs[k] != 0.0) s += v.coeffs[k] * phi[k];
  return s;
}

cplx group_elementary_pointwise(const DeformationParams& params, GroupElement g, double arg,
                                const PointFunction& f, std::span<const double> x) {
  const double kappa = params.kappa();
  std::vector<double> y(x.begin(), x.end());
  switch (g) {
    case GroupElement::M: {
      double k = std::round(arg);
      if (std::abs(k - arg) > 0) throw DomainError("group element M: k must be an integer");
      if (std::fmod(std::abs(k), 2.0) == 1.0)
        for (auto& v : y) v = -v;
      return std::polar(1.0, -k * std::numbers::pi * kappa) * f(y);
    }
    case GroupElement::A: {
      double s = std::exp(arg);
      for (auto& v : y) v *= s;
      return std::exp(arg * kappa) * f(y);
    }
    case GroupElement::NPlus: {
      if (arg < 0) throw DomainError("group element N+: beta must be >= 0");
      double r2 = 0;
      for (double v : x) r2 += v * v;
      return std::exp(-0.5 * arg * r2) * f(y);
    }
  }
  return 0.0;
}

void write_csv(const SpectralVector& v, std::ostream& os) {
  os << "l,m,j,re,im\n";
  os.precision(17);
  for (int i = 0; i < v.layout.size(); ++i) {
    if (v.coeffs[i] == 0.0) continue;
    auto k = v.layout.index(i);
    os << k.l << ',' << k.m << ',' << k.j << ',' << v.coeffs[i].real() << ',' << v.coeffs[i].imag() << '\n';
  }
}

}  // namespace bdeform::spectral
