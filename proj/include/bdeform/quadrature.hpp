#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "bdeform/common.hpp"

namespace bdeform::quadrature {

enum class Domain { UnitInterval, SymmetricInterval, HalfLine, Sphere, RadialTimesSphere };

struct QuadratureRule {
  Domain domain = Domain::UnitInterval;
  int dim = 1;  // coordinates per node
  std::vector<double> nodes;  // size() * dim, row major
  std::vector<double> weights;
  std::string weight_tag;
  int exactness_degree = 0;
  // exponents of the analytic weight for Jacobi (u^beta (1-u)^alpha) and
  // Laguerre (t^alpha e^-t) rules; weighted_ball_rule stores b in alpha
  double alpha = 0.0, beta = 0.0;

  std::size_t size() const { return weights.size(); }
  std::span<const double> node(std::size_t i) const {
    return {nodes.data() + i * dim, static_cast<std::size_t>(dim)};
  }
  double mass() const;
};

// Three-term recurrence of a family of monic orthogonal polynomials:
// p_{k+1} = (x - a_k) p_k - b_k p_{k-1}; mu0 is the total mass of the weight.
struct Recurrence {
  std::vector<double> a;  // a_0 .. a_{n-1}
  std::vector<double> b;  // b_0 unused, b_1 .. b_{n-1}
  double mu0 = 1.0;
};

Recurrence legendre_recurrence(int n);
// weight u^beta (1-u)^alpha on [0,1]
Recurrence jacobi01_recurrence(int n, double alpha, double beta);
// weight t^alpha e^{-t}
Recurrence laguerre_recurrence(int n, double alpha);

// Gaussian rule from a recurrence (eigenvalues, Newton polish, Christoffel
// weights, moment self-test over degrees < 2n).
QuadratureRule gauss_from_recurrence(const Recurrence& rec, int n);

QuadratureRule gauss_legendre(int n);
QuadratureRule gauss_jacobi(int n, double alpha, double beta);
QuadratureRule gauss_laguerre_gen(int n, double alpha);

QuadratureRule sphere_rule(int N, int order);

enum class RadialMapKind { GaussianFull, BallOfRadius };
struct RadialMap {
  RadialMapKind kind = RadialMapKind::GaussianFull;
  double R = 1.0;             // BallOfRadius
  double gaussian_scale = 1.0;  // GaussianFull: Laguerre variable t = s r^2
  static RadialMap gaussian(double s = 1.0) { return {RadialMapKind::GaussianFull, 1.0, s}; }
  static RadialMap ball(double R) { return {RadialMapKind::BallOfRadius, R, 1.0}; }
};

// Product rule with sum w_i f(x_i) ~ int f(x) |x|^{2b} dx (GaussianFull) or
// int_{B_R} f(x) |x|^{2b} dx (BallOfRadius).
QuadratureRule weighted_ball_rule(const DeformationParams& params, int radial_nodes,
                                  int sphere_order, RadialMap map = RadialMap::gaussian());

// Gauss-Kronrod (7,15) adaptive bisection.
struct AdaptiveOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_intervals = 4000;
};
double adaptive_1d_real(const std::function<double(double)>& f, double a, double b,
                        AdaptiveOptions opt);
cplx adaptive_1d_complex(const std::function<cplx(double)>& f, double a, double b,
                         AdaptiveOptions opt);

template <class F>
auto adaptive_1d(F&& f, double a, double b, AdaptiveOptions opt = {}) {
  if constexpr (std::is_same_v<std::decay_t<decltype(f(a))>, cplx>)
    return adaptive_1d_complex(std::forward<F>(f), a, b, opt);
  else
    return adaptive_1d_real(std::forward<F>(f), a, b, opt);
}

template <class F>
auto adaptive_1d(F&& f, double a, double b, double tol) {
  return adaptive_1d(std::forward<F>(f), a, b, AdaptiveOptions{tol, tol, 4000});
}

void write_csv(const QuadratureRule& rule, std::ostream& os);

}  // namespace bdeform::quadrature
