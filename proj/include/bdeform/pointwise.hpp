#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bdeform/common.hpp"
#include "bdeform/harmonics.hpp"
#include "bdeform/quadrature.hpp"

namespace bdeform::pointwise {

using PointFunction = std::function<cplx(std::span<const double>)>;
using GradFunction = std::function<std::vector<cplx>(std::span<const double>)>;

// f with its gradient
struct SmoothFunction {
  PointFunction f;
  GradFunction grad;
};

// Gradient by 4th order central differences of step h.
SmoothFunction with_numeric_gradient(PointFunction f, int N, double h = 1e-3);

// k-th derivative in s of a radial profile f(s), s = |x|^2
using RadialProfile = std::function<cplx(double s, int k)>;

// q(s) e^{-a s}, q given by coefficients in increasing degree
RadialProfile poly_exp_profile(std::vector<double> q, double a);

struct StructuredTerm {
  RadialProfile f;
  harmonics::MultiPoly p;  // homogeneous harmonic
  int m = 0;
  double scale = 1.0;
  std::vector<harmonics::MultiPoly> dp;  // d_i p
};

// sum_k scale_k f_k(|x|^2) p_k(x)
class StructuredFunction {
 public:
  explicit StructuredFunction(int N) : N_(N) {}
  // DomainError unless p is harmonic and homogeneous of degree m
  void add(RadialProfile f, const harmonics::MultiPoly& p, int m, double scale = 1.0);
  // the harmonic element's normalization goes into scale
  void add(RadialProfile f, const harmonics::HarmonicElement& h);

  int N() const { return N_; }
  const std::vector<StructuredTerm>& terms() const { return terms_; }
  cplx value(std::span<const double> x) const;
  std::vector<cplx> gradient(std::span<const double> x) const;
  SmoothFunction smooth() const;

 private:
  int N_;
  std::vector<StructuredTerm> terms_;
};

struct DOptions {
  double eps_cut = 1e-6;  // relative to |x|
};

// Reflection form: d_n f + (b/vol) int xi_n (f(x) - f(sigma_xi x)) / <xi,x> dxi.
// n is 0-based; sphere is a rule on S^{N-1}. At x = 0 the continuous limit
// (1 + 2b/N) d_n f(0).
cplx D_apply(const DeformationParams& params, int n, const SmoothFunction& f, std::span<const double> x,
             const quadrature::QuadratureRule& sphere, DOptions opt = {});

// Surface form over |y| = |x| with y = |x| mu:
// d_n f + (2b/(vol |x|)) int (w_n - mu_n)/|w - mu|^N (f(x) - f(|x| mu)) dmu, w = x/|x|.
// Polar coordinates about w; polar_nodes Gauss-Legendre nodes in the angle.
cplx D_apply_surface(const DeformationParams& params, int n, const SmoothFunction& f,
                     std::span<const double> x, int polar_nodes = 48, int sphere_order = 24);

// H_b = Delta + (2b/|x|^2) R on f(s)p: (4s f'' + (2N + 4m + 4b) f') p
cplx H_apply(const DeformationParams& params, const StructuredFunction& f, std::span<const double> x);

struct Commutator {
  cplx lhs;  // D_m(x_n f) - x_n D_m f
  cplx rhs;  // delta f + (2b/vol) int xi_m xi_n f(sigma_xi x) dxi
  double diff() const { return std::abs(lhs - rhs); }
};
Commutator commutator_Dx(const DeformationParams& params, int m, int n, const SmoothFunction& f,
                         std::span<const double> x, const quadrature::QuadratureRule& sphere);

// Rule on S^{N-1} in polar coordinates about w: xi = w cos(th) + eta sin(th),
// Gauss-Legendre in th on each of the given angle intervals, eta on the
// equatorial S^{N-2}. N >= 2.
quadrature::QuadratureRule polar_sphere_rule(std::span<const double> w,
                                             const std::vector<std::pair<double, double>>& intervals,
                                             int polar_nodes, int sphere_order);

struct LemmaResidual {
  std::string lemma;
  std::string detail;
  cplx lhs, rhs;
  double residual() const { return std::abs(lhs - rhs); }
};

// int f dmu against int f(sigma_xi w) |2<xi,w>|^{N-2} dxi
LemmaResidual lemma_inte(int N, const PointFunction& f, std::span<const double> w, int order = 32);
// the reflection-form spherical integral of a degree-m harmonic against
// (1/lambda_{N,m}) d_n p(w); n 0-based
LemmaResidual lemma_sph_reflection(int N, const harmonics::HarmonicElement& p, int n, std::span<const double> w,
                                   int order = 32);
// the kernel (surface) form of the same integral
LemmaResidual lemma_sph_surface(int N, const harmonics::HarmonicElement& p, int n, std::span<const double> w,
                                int polar_nodes = 48, int order = 24);
// int_{|<xi,x>| > eps} xi_n / <xi,x> dxi against x_n/|x|^2 vol(band)
LemmaResidual lemma_sphereint(int N, std::span<const double> x, int n, double eps, int order = 32);
// closed form of vol{xi in S^{N-1} : |<xi,x>| > eps}
double band_volume(int N, double abs_x, double eps);

struct SphereReport {
  int N = 0;
  std::vector<LemmaResidual> cases;
  double max_inte = 0, max_sph = 0, max_sphereint = 0;
  double max_residual() const;
};
// random directions, monomials of degree <= 4, harmonics of degree <= 3 for
// every n, eps in {0.1, 0.3}; N in {2,3,4}
SphereReport sphere_identity_suite(int N, int cases, unsigned seed = 42);

struct GreenResult {
  cplx lhs;       // int_{B_R} (D_n F) G |x|^{2b}
  cplx rhs_bulk;  // -int_{B_R} F (D_n G) |x|^{2b}
  cplx rhs_boundary;
  double residual() const { return std::abs(lhs - rhs_bulk - rhs_boundary); }
};
struct GreenRules {
  int radial_nodes = 24;
  int sphere_order = 24;  // ball and boundary sphere
  int d_sphere_order = 24;  // inner D_apply
};
GreenResult green_check(const DeformationParams& params, int n, const SmoothFunction& F, const SmoothFunction& G,
                        double R, GreenRules rules = {});

// N = 1 wave equation u_tt = D^2 u, D = d/dx + b(1 - reflection)/x.
// Grid x_j = (j + 1/2) dx, j = -J..J-1, covering [-X, X]; no node at 0.
// Evolves g = |x|^b u with the skew operator d/dx - b(reflection)/x by
// leapfrog; frames report u.
std::vector<double> wave_grid(double X, double dx);

struct WaveOptions {
  double X = 4.0;
  double dx = 0.005;
  double dt = 0.0025;
  double T = 1.0;
  int frame_every = 0;  // 0: only first and last
  // annuli (lo, hi) shrinking at unit speed: t0 + t < |x| < t1 - t
  std::vector<std::pair<double, double>> annuli;
};

struct WaveFrame {
  double t;
  std::vector<double> u;
};
struct EnergyRecord {
  double t;
  double lo, hi;  // current annulus
  double E;
};
struct WaveResult {
  std::vector<double> x;
  std::vector<WaveFrame> frames;
  std::vector<EnergyRecord> energy;  // per step per annulus
  std::vector<double> total_energy;  // per step, exactly conserved by the scheme
  std::vector<double> times;
  double max_annulus_increase = 0.0;  // largest per-step rise, relative to total energy
};

// u0, v0 sampled on wave_grid(X, dx). DomainError on dt > 0.9 dx, b <= -1/2,
// or dt beyond the scheme's stability bound 2 dx / (1 + 2|b|).
WaveResult wave_evolve_1d(double b, const std::vector<double>& u0, const std::vector<double>& v0,
                          const WaveOptions& opt);

// t,x,u
void write_wave_csv(const WaveResult& r, std::ostream& os);
// t,annulus_lo,annulus_hi,E
void write_energy_csv(const WaveResult& r, std::ostream& os);

}  // namespace bdeform::pointwise
