#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "bdeform/harmonics.hpp"
#include "bdeform/spectral.hpp"
#include "doctest.h"

using namespace bdeform;
using namespace bdeform::spectral;

namespace {

constexpr double kPi = std::numbers::pi;

struct Case {
  double b;
  int N;
  Truncation tr;
};

// the identity checks run on all of these
const std::vector<Case>& cases() {
  static const std::vector<Case> c = {
      {0.5, 2, {8, 6}}, {0.0, 2, {7, 5}}, {0.3, 3, {7, 5}}, {1.2, 1, {10, 1}}, {-0.3, 1, {10, 1}}, {0.7, 4, {6, 4}}};
  return c;
}

OperatorMatrix mat(const DeformationParams& p, Op op, Truncation tr, int n = 0, unsigned seed = 0) {
  return build_matrix(p, op, tr, n, seed);
}

double interior_diff(const OperatorMatrix& a, const OperatorMatrix& b, int margin = 2) {
  return interior_max_abs(a - b, margin);
}

std::vector<double> random_point(std::mt19937_64& rng, int N, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<double> x(N);
  for (auto& v : x) v = g(rng);
  return x;
}

}  // namespace

TEST_CASE("phi_norm_sq examples") {
  CHECK(phi_norm_sq(DeformationParams(0.5, 2), {0, 0, 0}) == doctest::Approx(0.44311346).epsilon(1e-8));
  CHECK(phi_norm_sq(DeformationParams(0.0, 2), {1, 0, 0}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(phi_norm_sq(DeformationParams(1.0, 3), {2, 1, 0}) == doctest::Approx(std::tgamma(5.5) / 4).epsilon(1e-14));
}

TEST_CASE("phi_norm_sq against quadrature") {
  for (auto [b, N] : {std::pair{0.5, 2}, {0.0, 3}, {1.3, 1}, {-0.2, 1}, {0.4, 4}}) {
    DeformationParams p(b, N);
    auto rule = quadrature::weighted_ball_rule(p, 30, 12);
    for (int m = 0; m <= (N == 1 ? 1 : 3); ++m)
      for (int l = 0; l <= 4; ++l) {
        BasisIndex k{l, m, 0};
        double s = 0;
        for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * std::pow(phi_eval(p, k, rule.node(i)), 2);
        CHECK(s == doctest::Approx(phi_norm_sq(p, k)).epsilon(1e-11));
      }
  }
}

TEST_CASE("phi_eval examples") {
  for (int N = 1; N <= 4; ++N) {
    DeformationParams p(0.3, N);
    std::vector<double> zero(N, 0.0);
    CHECK(phi_eval(p, {0, 0, 0}, zero) == doctest::Approx(1 / std::sqrt(sphere_volume(N))).epsilon(1e-15));
  }
  double x = 2.0;
  CHECK(phi_eval(DeformationParams(0, 1), {0, 1, 0}, std::span(&x, 1)) ==
        doctest::Approx(std::exp(-2.0) * 2 / std::sqrt(2.0)).epsilon(1e-14));
  // decay
  DeformationParams p(0.5, 2);
  for (int l = 0; l <= 5; ++l)
    for (double r : {12.0, 15.0, 20.0}) {
      double y[2] = {r * 0.6, r * 0.8};
      CHECK(std::abs(phi_eval(p, {l, 2, 1}, y)) <= std::exp(-r * r / 4));
    }
}

TEST_CASE("phi_all matches phi_eval") {
  DeformationParams p(0.7, 3);
  Layout lay(3, {6, 4});
  std::mt19937_64 rng(1);
  std::vector<double> out;
  for (int s = 0; s < 5; ++s) {
    auto x = random_point(rng, 3, 1.5);
    phi_all(p, lay, x, out);
    for (int i = 0; i < lay.size(); ++i) CHECK(out[i] == doctest::Approx(phi_eval(p, lay.index(i), x)).epsilon(1e-12));
  }
}

TEST_CASE("layout indexing") {
  Layout lay(3, {5, 3});
  CHECK(lay.size() == 6 * (1 + 3 + 5 + 7));
  for (int i = 0; i < lay.size(); ++i) CHECK(lay.flat(lay.index(i)) == i);
  CHECK(lay.contains({5, 3, 6}));
  CHECK_FALSE(lay.contains({5, 3, 7}));
  CHECK_FALSE(lay.contains({6, 0, 0}));
  Layout one(1, {4, 3});
  CHECK(one.size() == 5 * 2);
  CHECK(one.interior(one.flat({2, 1, 0}), 2));
}

TEST_CASE("weight, raise and lower") {
  DeformationParams p(0.5, 2);
  Layout lay(2, {4, 2});
  auto v = SpectralVector::unit(p, lay, {2, 1, 0});
  CHECK(apply_weight_h(v)[{2, 1, 0}] == cplx(-6.5));
  CHECK(apply_weight_h(SpectralVector(p, lay)).coeffs.norm() == 0.0);
  DeformationParams p0(0.0, 2);
  CHECK(apply_weight_h(SpectralVector::unit(p0, lay, {0, 0, 0}))[{0, 0, 0}] == cplx(-1.0));

  auto r = apply_raise(SpectralVector::unit(p, lay, {0, 1, 1}));
  CHECK(r[{1, 1, 1}] == cplx(2.0));
  CHECK(r.coeffs.norm() == doctest::Approx(2.0));
  CHECK(apply_lower(SpectralVector::unit(p, lay, {0, 1, 1})).coeffs.norm() == 0.0);
  auto lo = apply_lower(SpectralVector::unit(p, lay, {3, 1, 0}));
  CHECK(lo[{2, 1, 0}] == cplx(-2 * (0.5 + 1 + 3)));
  CHECK_THROWS_AS(apply_raise(SpectralVector::unit(p, lay, {4, 0, 0})), TruncationError);
  CHECK_THROWS_AS(SpectralVector::unit(p, lay, {5, 0, 0}), DomainError);
}

TEST_CASE("build_matrix structure and examples") {
  DeformationParams p(0.5, 3);
  Truncation tr{6, 4};
  for (int n = 0; n < 3; ++n) {
    auto x = mat(p, Op::Xn, tr, n), d = mat(p, Op::Dn, tr, n);
    // (x_n + D_n) kills the Gaussian
    auto s = (x + d).apply(SpectralVector::unit(p, x.layout, {0, 0, 0}));
    CHECK(s.coeffs.norm() <= 1e-14);
    // sparsity: (l,m) connects to (l, m±1), (l-1, m+1), (l+1, m-1)
    for (int c = 0; c < x.mat.outerSize(); ++c)
      for (Eigen::SparseMatrix<cplx>::InnerIterator it(x.mat, c); it; ++it) {
        auto a = x.layout.index(it.row()), bidx = x.layout.index(c);
        int dl = a.l - bidx.l, dm = a.m - bidx.m;
        bool ok = (dm == 1 && (dl == 0 || dl == -1)) || (dm == -1 && (dl == 0 || dl == 1));
        CHECK(ok);
      }
  }
  auto w = mat(p, Op::WeightH, tr);
  for (int i = 0; i < w.layout.size(); ++i) {
    auto k = w.layout.index(i);
    CHECK(w.mat.coeff(i, i) == cplx(-(0.5 + p.lambda(k.m) + 2 * k.l + 1)));
  }
  CHECK(w.mat.nonZeros() == w.layout.size());
  CHECK(op_name(Op::Hb) == "H_b");
  auto other = mat(p, Op::Xn, {5, 4});
  CHECK_THROWS_AS(w * other, DomainError);
  CHECK_THROWS_AS(mat(p, Op::Xn, tr, 3), DomainError);
}

TEST_CASE("D_1 at b = 0, N = 1 is d/dx") {
  DeformationParams p(0.0, 1);
  Truncation tr{12, 1};
  auto d = mat(p, Op::Dn, tr);
  const auto& lay = d.layout;
  std::vector<double> phi;
  const double h = 1e-5;
  for (double x : {-2.1, -0.7, 0.3, 1.4, 2.6}) {
    phi_all(p, lay, std::span(&x, 1), phi);
    for (int c = 0; c < lay.size(); ++c) {
      if (!lay.interior(c, 2)) continue;
      auto k = lay.index(c);
      double xp = x + h, xm = x - h;
      double fd = (phi_eval(p, k, std::span(&xp, 1)) - phi_eval(p, k, std::span(&xm, 1))) / (2 * h);
      cplx s = 0;
      for (Eigen::SparseMatrix<cplx>::InnerIterator it(d.mat, c); it; ++it) s += it.value() * phi[it.row()];
      CHECK(std::abs(s - fd) <= 1e-7 * (1 + std::abs(fd)));
    }
  }
}

TEST_CASE("sl2 relations") {
  for (const auto& c : cases()) {
    CAPTURE(c.b);
    CAPTURE(c.N);
    DeformationParams p(c.b, c.N);
    auto E = mat(p, Op::EulerShifted, c.tr), X2 = mat(p, Op::AbsX2, c.tr), H = mat(p, Op::Hb, c.tr);
    const cplx I(0, 1);
    CHECK(interior_diff(commutator(E, X2 * (0.5 * I)), X2 * I) <= 1e-10);
    CHECK(interior_diff(commutator(E, H * (0.5 * I)), H * (-I)) <= 1e-10);
    CHECK(interior_diff(commutator(X2 * (0.5 * I), H * (0.5 * I)), E) <= 1e-10);
  }
}

TEST_CASE("Cartan triple, quadratic relation and ladder realization") {
  for (const auto& c : cases()) {
    CAPTURE(c.b);
    CAPTURE(c.N);
    DeformationParams p(c.b, c.N);
    auto E = mat(p, Op::EulerShifted, c.tr), X2 = mat(p, Op::AbsX2, c.tr), H = mat(p, Op::Hb, c.tr);
    auto W = mat(p, Op::WeightH, c.tr);
    auto h = W * cplx(-1), e = mat(p, Op::Raise, c.tr) * cplx(0.5), f = mat(p, Op::Lower, c.tr) * cplx(0.5);
    CHECK(interior_diff(commutator(h, e), e * cplx(2)) <= 1e-10);
    CHECK(interior_diff(commutator(h, f), f * cplx(-2)) <= 1e-10);
    CHECK(interior_diff(commutator(e, f), h) <= 1e-10);
    // (H_b - |x|^2)/2 from the D and x matrices
    CHECK(interior_diff(W, (H - X2) * cplx(0.5)) <= 1e-10);
    // e and f from E, |x|^2 and H_b
    CHECK(interior_diff(e, (E - (H + X2) * cplx(0.5)) * cplx(0.5)) <= 1e-10);
    CHECK(interior_diff(f, (E + (H + X2) * cplx(0.5)) * cplx(0.5)) <= 1e-10);
  }
}

TEST_CASE("commutativity and Weyl relation") {
  for (const auto& c : cases()) {
    DeformationParams p(c.b, c.N);
    for (int m = 0; m < c.N; ++m)
      for (int n = 0; n < c.N; ++n) {
        auto dm = mat(p, Op::Dn, c.tr, m), dn = mat(p, Op::Dn, c.tr, n);
        CHECK(interior_max_abs(commutator(dm, dn), 2) <= 1e-10);
        auto xm = mat(p, Op::Xn, c.tr, m), xn = mat(p, Op::Xn, c.tr, n);
        CHECK(interior_max_abs(commutator(xm, xn), 2) <= 1e-10);
        if (c.b == 0.0) {
          auto w = commutator(dm, xn);
          auto target = m == n ? identity(w.layout) : identity(w.layout) * cplx(0);
          CHECK(interior_diff(w, target) <= 1e-12);
        }
      }
  }
}

TEST_CASE("Fourier intertwining and standard representation") {
  const cplx I(0, 1);
  for (const auto& c : cases()) {
    DeformationParams p(c.b, c.N);
    Layout lay(c.N, c.tr);
    auto F = fourier_factors(lay);
    Eigen::VectorXcd om6(lay.size()), om2(lay.size());
    for (int i = 0; i < lay.size(); ++i) {
      auto k = lay.index(i);
      double kap = c.b + p.lambda(k.m) + 2 * k.l + 1;
      om6[i] = std::polar(1.0, -kPi / 6 * kap);
      om2[i] = std::polar(1.0, -kPi / 2 * kap);
    }
    for (int n = 0; n < c.N; ++n) {
      auto x = mat(p, Op::Xn, c.tr, n), d = mat(p, Op::Dn, c.tr, n);
      CHECK(interior_diff(conjugate_diagonal(d, F), x * I) <= 1e-10);
      CHECK(interior_diff(conjugate_diagonal(x, F), d * I) <= 1e-10);
      for (auto [th, om] : {std::pair{kPi / 6, &om6}, {kPi / 2, &om2}}) {
        CHECK(interior_diff(conjugate_diagonal(x, *om), x * std::cos(th) + d * (I * std::sin(th))) <= 1e-8);
        auto iD = d * I;
        CHECK(interior_diff(conjugate_diagonal(iD, *om), x * (-std::sin(th)) + iD * std::cos(th)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("characterization recursion") {
  for (const auto& c : cases()) {
    CAPTURE(c.b);
    CAPTURE(c.N);
    DeformationParams p(c.b, c.N);
    const double nb = c.N + 2 * c.b;
    auto Eop = mat(p, Op::EulerShifted, c.tr);
    auto X2 = mat(p, Op::AbsX2, c.tr);
    auto h = mat(p, Op::WeightH, c.tr) * cplx(-1);
    auto Id = identity(Eop.layout);
    auto E = Eop - Id * cplx(0.5 * nb);
    for (int m = 0; m <= c.tr.M - 2 && (c.N > 1 || m <= 1); ++m) {
      int mm = m;
      auto F = SpectralVector::unit(p, Eop.layout, {0, mm, 0});
      // f F = 0 and h F = (b + (N+2m)/2) F
      CHECK(apply_lower(F).coeffs.norm() == 0.0);
      CHECK((h.apply(F).coeffs - (c.b + 0.5 * (c.N + 2 * m)) * F.coeffs).norm() <= 1e-12);
      // lowest weight equation (h - 2f)F = (E + (N+2b)/2 + |x|^2)F
      CHECK(((Eop + X2).apply(F).coeffs - (c.b + 0.5 * (c.N + 2 * m)) * F.coeffs).norm() <= 1e-10);
      auto el = F;
      for (int l = 0; l <= 4 && l + 1 <= c.tr.L - 2; ++l) {
        SpectralVector next = apply_raise(el);
        next.coeffs *= 0.5;
        auto first = (Eop - X2 + h).apply(el);
        first.coeffs *= 0.5;
        CHECK((next.coeffs - first.coeffs).cwiseAbs().maxCoeff() <= 1e-10 * (1 + next.coeffs.cwiseAbs().maxCoeff()));
        auto second = (E - X2 + Id * cplx(2 * c.b + c.N + m + 2 * l)).apply(el);
        second.coeffs *= 0.5;
        CHECK((next.coeffs - second.coeffs).cwiseAbs().maxCoeff() <= 1e-10 * (1 + next.coeffs.cwiseAbs().maxCoeff()));
        el = next;
      }
    }
  }
}

TEST_CASE("fourier_spectral and semigroup") {
  DeformationParams p(0.5, 2);
  Layout lay(2, {6, 3});
  CHECK(fourier_spectral(SpectralVector::unit(p, lay, {0, 1, 0}))[{0, 1, 0}] == cplx(0, -1));
  CHECK(fourier_spectral(SpectralVector::unit(p, lay, {1, 0, 0}))[{1, 0, 0}] == cplx(-1, 0));
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  SpectralVector v(p, lay);
  for (int i = 0; i < lay.size(); ++i) v.coeffs[i] = cplx(g(rng), g(rng));
  auto f4 = fourier_spectral(fourier_spectral(fourier_spectral(fourier_spectral(v))));
  CHECK((f4.coeffs - v.coeffs).norm() == 0.0);

  CHECK((semigroup_spectral(v, 0.0).coeffs - v.coeffs).norm() == 0.0);
  auto half = semigroup_spectral(v, cplx(0, kPi / 2));
  half.coeffs *= ipow(p.kappa());
  CHECK((half.coeffs - fourier_spectral(v).coeffs).cwiseAbs().maxCoeff() <= 1e-13);
  // b + lambda + 2l + 1 = 1.5 here
  CHECK(std::abs(semigroup_spectral(SpectralVector::unit(p, lay, {0, 0, 0}), 1.0)[{0, 0, 0}] - std::exp(-1.5)) <=
        1e-15);
  CHECK_THROWS_AS(semigroup_spectral(v, cplx(-0.1, 1)), DomainError);
  CHECK_NOTHROW(semigroup_spectral(v, cplx(0, -3)));
}

TEST_CASE("translation: unitarity and classical shift") {
  DeformationParams p0(0.0, 1);
  Truncation tr{40, 1};
  auto zero = translation_expm(p0, 0, 0.0, tr);
  CHECK((zero.U - Eigen::MatrixXd::Identity(zero.U.rows(), zero.U.cols())).cwiseAbs().maxCoeff() == 0.0);
  for (double t : {0.3, -0.5, 1.0}) {
    auto T = translation_expm(p0, 0, t, tr);
    CHECK(T.skew_defect <= 1e-12);
    CHECK(T.unitarity_defect <= 1e-8);
    auto v = SpectralVector::unit(p0, T.layout, {0, 0, 0});
    auto w = apply_translation(T, v);
    CHECK(std::abs(l2_norm_sq(w) - l2_norm_sq(v)) <= 1e-8);
    double err = 0;
    for (double x = -4; x <= 4; x += 0.25) {
      double y = x + t;
      double exact = phi_eval(p0, {0, 0, 0}, std::span(&y, 1));
      err = std::max(err, std::abs(evaluate(w, std::span(&x, 1)) - exact));
    }
    CHECK(err <= 1e-4);
  }
  // deformed: norm preserved for interior-supported v
  for (const auto& c : {Case{0.5, 2, {10, 6}}, Case{1.3, 1, {30, 1}}, Case{0.4, 3, {8, 5}}}) {
    DeformationParams p(c.b, c.N);
    auto T = translation_expm(p, c.N - 1, 0.7, c.tr);
    CHECK(T.unitarity_defect <= 1e-8);
    SpectralVector v(p, T.layout);
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    for (int i = 0; i < T.layout.size(); ++i)
      if (T.layout.interior(i, 4)) v.coeffs[i] = cplx(g(rng), g(rng));
    CHECK(std::abs(l2_norm_sq(apply_translation(T, v)) / l2_norm_sq(v) - 1) <= 1e-8);
  }
  CHECK_THROWS_AS(translation_expm(p0, 0, 0.1, {3, 1}), DomainError);
}

TEST_CASE("sobolev norm") {
  DeformationParams p(0.5, 2);
  Layout lay(2, {5, 3});
  auto v = SpectralVector::unit(p, lay, {2, 3, 1});
  CHECK(sobolev_norm(v, 1.5) == doctest::Approx(std::pow(8.0, 1.5) * phi_norm_sq(p, {2, 3, 1})).epsilon(1e-14));
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  SpectralVector w(p, lay);
  for (int i = 0; i < lay.size(); ++i) w.coeffs[i] = cplx(g(rng), g(rng));
  CHECK(sobolev_norm(w, 0.0) == l2_norm_sq(w));
  double prev = sobolev_norm(w, -1.0);
  for (double s : {-0.5, 0.0, 0.5, 1.0, 2.0}) {
    double cur = sobolev_norm(w, s);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("project and evaluate") {
  DeformationParams p(0.6, 2);
  Layout lay(2, {8, 4});
  auto rule = quadrature::weighted_ball_rule(p, 30, 16);
  for (int j = 0; j < 2; ++j) {
    BasisIndex k{2, 1, j};
    auto v = project_function(p, [&](std::span<const double> x) { return cplx(phi_eval(p, k, x)); }, lay, rule);
    for (int i = 0; i < lay.size(); ++i) {
      double target = lay.index(i) == k ? 1.0 : 0.0;
      CHECK(std::abs(v.coeffs[i] - target) <= 1e-10);
    }
  }
  auto z = project_function(p, [](std::span<const double>) { return cplx(0); }, lay, rule);
  CHECK(z.coeffs.norm() == 0.0);

  // e^{-|x|^2/2} x_1 = sum_j c_j Phi_{0,1,j} with x_1 = sum_j c_j p_j
  auto g1 = project_function(
      p, [](std::span<const double> x) { return cplx(std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1])) * x[0]); }, lay,
      rule);
  const auto& basis = harmonics::harmonic_basis(2, 1);
  std::mt19937_64 rng(6);
  for (int s = 0; s < 5; ++s) {
    auto x = random_point(rng, 2, 1.0);
    double recon = 0;
    for (int j = 0; j < 2; ++j) recon += g1[{0, 1, j}].real() * basis[j].eval(x);
    CHECK(recon == doctest::Approx(x[0]).epsilon(1e-12));
  }
  for (int i = 0; i < lay.size(); ++i) {
    auto k = lay.index(i);
    if (k.l != 0 || k.m != 1) CHECK(std::abs(g1.coeffs[i]) <= 1e-12);
  }

  // round trip for a function resolved by the truncation
  Layout big(2, {30, 4});
  auto rule2 = quadrature::weighted_ball_rule(p, 60, 16);
  auto f = [](std::span<const double> x) {
    double r2 = x[0] * x[0] + x[1] * x[1];
    return cplx(std::exp(-r2) * (1 + x[0] * x[1]), std::exp(-r2) * x[1]);
  };
  auto v = project_function(p, f, big, rule2);
  for (int s = 0; s < 10; ++s) {
    auto x = random_point(rng, 2, 1.0);
    CHECK(std::abs(evaluate(v, x) - f(x)) <= 1e-9);
  }
  // linearity and unit evaluation
  SpectralVector a(p, lay), b(p, lay);
  std::normal_distribution<double> g;
  for (int i = 0; i < lay.size(); ++i) {
    a.coeffs[i] = cplx(g(rng), g(rng));
    b.coeffs[i] = cplx(g(rng), g(rng));
  }
  SpectralVector ab(p, lay);
  ab.coeffs = 2.0 * a.coeffs - cplx(0, 3) * b.coeffs;
  auto x = random_point(rng, 2, 1.0);
  CHECK(std::abs(evaluate(ab, x) - (2.0 * evaluate(a, x) - cplx(0, 3) * evaluate(b, x))) <= 1e-12);
  CHECK(evaluate(SpectralVector::unit(p, lay, {3, 2, 1}), x).real() ==
        doctest::Approx(phi_eval(p, {3, 2, 1}, x)).epsilon(1e-13));

  auto wrong = quadrature::weighted_ball_rule(DeformationParams(0.5, 2), 20, 10);
  CHECK_THROWS_AS(project_function(p, f, lay, wrong), DomainError);
  auto wrongN = quadrature::weighted_ball_rule(DeformationParams(0.6, 3), 20, 10);
  CHECK_THROWS_AS(project_function(p, f, lay, wrongN), DomainError);
}

TEST_CASE("group elements") {
  DeformationParams p(0.5, 2);
  auto f = [](std::span<const double> x) { return cplx(std::exp(-x[0] * x[0]) * (1 + x[1]), x[0]); };
  double x[2] = {0.4, -0.3};
  CHECK(std::abs(group_elementary_pointwise(p, GroupElement::M, 2, f, x) + f(x)) <= 1e-14);
  CHECK(group_elementary_pointwise(p, GroupElement::A, 0.0, f, x) == f(x));
  double o[2] = {0, 0};
  CHECK(group_elementary_pointwise(p, GroupElement::NPlus, 1.0, f, o) == f(o));
  double a = 0.3;
  double y[2] = {x[0] * std::exp(a), x[1] * std::exp(a)};
  CHECK(std::abs(group_elementary_pointwise(p, GroupElement::A, a, f, x) - std::exp(1.5 * a) * f(y)) <= 1e-14);

  // M(k) agrees with the semigroup at t = i pi k
  Layout lay(2, {4, 3});
  auto rule = quadrature::weighted_ball_rule(p, 20, 12);
  auto g = [](std::span<const double> z) {
    double r2 = z[0] * z[0] + z[1] * z[1];
    return cplx(std::exp(-r2 / 2) * (z[0] + 0.5 * z[0] * z[1] - 0.2 * z[1] * z[1]), std::exp(-r2 / 2) * z[1]);
  };
  auto v = project_function(p, g, lay, rule);
  for (int k : {1, 2, 3}) {
    auto sv = semigroup_spectral(v, cplx(0, kPi * k));
    CHECK(std::abs(evaluate(sv, x) - group_elementary_pointwise(p, GroupElement::M, k, g, x)) <= 1e-12);
  }
  CHECK_THROWS_AS(group_elementary_pointwise(p, GroupElement::M, 0.5, f, x), DomainError);
  CHECK_THROWS_AS(group_elementary_pointwise(p, GroupElement::NPlus, -1.0, f, x), DomainError);
}

TEST_CASE("basis seed invariance of spectra") {
  for (auto [b, N] : {std::pair{0.5, 3}, {0.2, 4}}) {
    DeformationParams p(b, N);
    Truncation tr{5, 4};
    auto spectrum = [&](Op op, unsigned seed) {
      auto A = mat(p, op, tr, N - 1, seed);
      const auto& lay = A.layout;
      Eigen::VectorXd s(lay.size());
      for (int i = 0; i < lay.size(); ++i) s[i] = std::sqrt(phi_norm_sq(p, lay.index(i)));
      Eigen::MatrixXd M = Eigen::MatrixXcd(A.mat).real();
      M = s.asDiagonal() * M * s.cwiseInverse().asDiagonal();
      Eigen::MatrixXd S = 0.5 * (M + M.transpose());
      return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S).eigenvalues().eval();
    };
    for (Op op : {Op::AbsX2, Op::Xn, Op::Hb}) {
      auto e0 = spectrum(op, 0), e1 = spectrum(op, 12345);
      CHECK((e0 - e1).cwiseAbs().maxCoeff() <= 1e-10 * (1 + e0.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("csv output") {
  DeformationParams p(0.5, 2);
  Layout lay(2, {2, 1});
  SpectralVector v(p, lay);
  v[{1, 1, 0}] = cplx(0.25, -1.5);
  v[{0, 0, 0}] = cplx(2, 0);
  std::ostringstream os;
  write_csv(v, os);
  CHECK(os.str() == "l,m,j,re,im\n0,0,0,2,0\n1,1,0,0.25,-1.5\n");
}
