#pragma once

#include <compare>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "bdeform/common.hpp"
#include "bdeform/quadrature.hpp"

namespace bdeform::spectral {

// Phi_{b,l,j} with p_j the j-th element of the degree-m harmonic basis.
struct BasisIndex {
  int l = 0;
  int m = 0;
  int j = 0;
  auto operator<=>(const BasisIndex&) const = default;
};

struct Truncation {
  int L = 0;  // l <= L
  int M = 0;  // m <= M
  bool operator==(const Truncation&) const = default;
};

// Flat indexing: blocks of harmonics in degree order, l fastest.
class Layout {
 public:
  Layout(int N, Truncation tr, unsigned seed = 0);

  int N() const { return N_; }
  Truncation truncation() const { return tr_; }
  unsigned seed() const { return seed_; }
  int size() const { return (L() + 1) * harmonics_; }
  int L() const { return tr_.L; }
  int M() const { return tr_.M; }
  int dim(int m) const { return m <= tr_.M ? dims_[m] : 0; }
  int flat(const BasisIndex& k) const { return (offset_[k.m] + k.j) * (L() + 1) + k.l; }
  BasisIndex index(int flat) const;
  bool contains(const BasisIndex& k) const;
  // l <= L - margin and m <= M - margin
  bool interior(int flat, int margin) const;
  bool operator==(const Layout& o) const { return N_ == o.N_ && tr_ == o.tr_ && seed_ == o.seed_; }

 private:
  int N_;
  Truncation tr_;
  unsigned seed_;
  int harmonics_ = 0;
  std::vector<int> dims_, offset_, block_m_;
};

double phi_norm_sq(const DeformationParams& params, const BasisIndex& idx);
double phi_eval(const DeformationParams& params, const BasisIndex& idx, std::span<const double> x,
                unsigned seed = 0);
// All basis functions of the layout at x.
void phi_all(const DeformationParams& params, const Layout& layout, std::span<const double> x,
             std::vector<double>& out);

struct SpectralVector {
  SpectralVector(const DeformationParams& p, const Layout& l)
      : params(p), layout(l), coeffs(Eigen::VectorXcd::Zero(l.size())) {}
  DeformationParams params;
  Layout layout;
  Eigen::VectorXcd coeffs;

  cplx& operator[](const BasisIndex& k) { return coeffs[layout.flat(k)]; }
  cplx operator[](const BasisIndex& k) const { return coeffs[layout.flat(k)]; }
  static SpectralVector unit(const DeformationParams& p, const Layout& l, const BasisIndex& k);
};

// squared L^2 norm
double l2_norm_sq(const SpectralVector& v);

SpectralVector apply_weight_h(const SpectralVector& v);
SpectralVector apply_raise(const SpectralVector& v);
SpectralVector apply_lower(const SpectralVector& v);

enum class Op { Xn, Dn, AbsX2, Hb, EulerShifted, Raise, Lower, WeightH };
std::string op_name(Op op);

struct OperatorMatrix {
  Layout layout;
  Eigen::SparseMatrix<cplx> mat;
  std::string tag;
  int interior_margin = 2;

  OperatorMatrix operator*(const OperatorMatrix& o) const;
  OperatorMatrix operator+(const OperatorMatrix& o) const;
  OperatorMatrix operator-(const OperatorMatrix& o) const;
  OperatorMatrix operator*(cplx s) const;
  SpectralVector apply(const SpectralVector& v) const;
};
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix identity(const Layout& layout);
// largest |entry| among interior rows and columns
double interior_max_abs(const OperatorMatrix& a, int margin);

// n is 0-based and ignored for operators without a coordinate.
OperatorMatrix build_matrix(const DeformationParams& params, Op op, Truncation tr, int n = 0,
                            unsigned seed = 0);

// diag(i^{-(2l+m)})
Eigen::VectorXcd fourier_factors(const Layout& layout);
SpectralVector fourier_spectral(const SpectralVector& v);
// diag(e^{-t(b+lambda+2l+1)}), Re t >= 0
SpectralVector semigroup_spectral(const SpectralVector& v, cplx t);
// d_i A_ij / d_j
OperatorMatrix conjugate_diagonal(const OperatorMatrix& a, const Eigen::VectorXcd& d);

// exp(t D_n) on the orthonormalized basis
struct Translation {
  Layout layout;
  Eigen::MatrixXd U;           // acts on orthonormal coordinates
  double skew_defect = 0.0;    // max |G + G^T| of the generator
  double unitarity_defect = 0.0;  // max |U^T U - I| on the interior
  int interior_margin = 4;
};
Translation translation_expm(const DeformationParams& params, int n, double t, Truncation tr,
                             unsigned seed = 0, double max_defect = 1e-10);
SpectralVector apply_translation(const Translation& tr, const SpectralVector& v);

// squared H^s norm: sum (1+2l+m)^s |a|^2 ||Phi||^2
double sobolev_norm(const SpectralVector& v, double s);

using PointFunction = std::function<cplx(std::span<const double>)>;

SpectralVector project_function(const DeformationParams& params, const PointFunction& f,
                                const Layout& layout, const quadrature::QuadratureRule& rule);
cplx evaluate(const SpectralVector& v, std::span<const double> x);

enum class GroupElement { M, A, NPlus };
// M: k, A: a, NPlus: beta >= 0
cplx group_elementary_pointwise(const DeformationParams& params, GroupElement g, double arg,
                                const PointFunction& f, std::span<const double> x);

// rows l,m,j,re,im
void write_csv(const SpectralVector& v, std::ostream& os);

}  // namespace bdeform::spectral
