#pragma once

#include <gmpxx.h>

#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bdeform/common.hpp"

namespace bdeform::harmonics {

using Exponent = std::vector<int>;

// Exact multivariate polynomial over Q in N variables.
class MultiPoly {
 public:
  explicit MultiPoly(int N = 1) : N_(N) {}

  static MultiPoly constant(int N, const mpq_class& c);
  static MultiPoly monomial(const Exponent& e, const mpq_class& c = 1);
  static MultiPoly coord(int N, int n);  // x_n, n is 0-based
  static MultiPoly abs_x2(int N);

  int N() const { return N_; }
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, mpq_class>& terms() const { return terms_; }

  void add_term(const Exponent& e, const mpq_class& c);

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const mpq_class& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const mpq_class& c) { return a *= c; }
  friend MultiPoly operator*(const mpq_class& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  bool operator==(const MultiPoly& o) const { return N_ == o.N_ && terms_ == o.terms_; }

  MultiPoly derivative(int n) const;
  double eval(std::span<const double> x) const;

 private:
  int N_;
  std::map<Exponent, mpq_class> terms_;
};

MultiPoly laplacian(const MultiPoly& p);
MultiPoly euler_apply(const MultiPoly& p);

// (1/vol) int_{S^{N-1}} x^a; rational.
mpq_class monomial_sphere_ratio(const Exponent& a);
// int_{S^{N-1}} x^a
double monomial_sphere_integral(const Exponent& a);
// (1/vol) int_{S^{N-1}} p q
mpq_class sphere_inner_ratio(const MultiPoly& p, const MultiPoly& q);

// p_j = scale * poly with int_{S^{N-1}} p_j^2 = 1. poly is exact and the
// polys of one degree are mutually orthogonal.
struct HarmonicElement {
  MultiPoly poly;
  int m = 0;
  int j = 0;
  mpq_class norm_ratio;  // (1/vol) int poly^2
  double scale = 1.0;
  std::vector<std::pair<Exponent, double>> fterms;  // scale * coefficients

  double eval(std::span<const double> x) const;
};

// Orthonormal basis of H^m(R^N), N <= 4. seed = 0 uses graded-lex seed order;
// otherwise the monomial seeds are shuffled with that seed. Results are cached.
const std::vector<HarmonicElement>& harmonic_basis(int N, int m, unsigned seed = 0);

// (2m+N-2)(m+N-3)!/(m!(N-2)!) for N >= 2
int harmonic_dimension(int N, int m);

struct Split {
  MultiPoly plus;   // degree m+1 harmonic
  MultiPoly minus;  // degree m-1 harmonic
};
// x_n p = plus + |x|^2 minus; n is 0-based.
Split split_xn_p(const MultiPoly& p, int m, int n);

// Coefficients of split(p_j) in the orthonormal bases of degree m+1 and m-1:
// plus(p_j) = sum_k P(k,j) p_k, minus(p_j) = sum_k Q(k,j) p_k.
struct SplitMatrices {
  Eigen::MatrixXd plus;
  Eigen::MatrixXd minus;
};
const SplitMatrices& split_matrices(int N, int m, int n, unsigned seed = 0);

// |sum_j p_j(w) p_j(u) - C~_m^{(N-2)/2}(<w,u>)/vol|
double zonal_check(int N, int m, std::span<const double> omega, std::span<const double> mu,
                   unsigned seed = 0);

}  // namespace bdeform::harmonics
