#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "bdeform/common.hpp"
#include "bdeform/quadrature.hpp"
#include "bdeform/spectral.hpp"

namespace bdeform::kernels {

// r = |x|, rho = |y|, cos_theta = <x,y>/(r rho), or 0 when r rho = 0.
struct KernelPoint {
  double r = 0.0;
  double rho = 0.0;
  double cos_theta = 0.0;
  double dot = 0.0;

  static KernelPoint make(std::span<const double> x, std::span<const double> y);
};

// log sinh t continuous on Re t >= 0 away from pi i Z; agrees with the
// principal value for real t > 0.
cplx log_sinh(cplx t);

// Re t >= 0, sinh t != 0
cplx lambda_kernel(const DeformationParams& params, const KernelPoint& kp, cplx t);
// Re t >= 0, t != 0
cplx heat_kernel(const DeformationParams& params, const KernelPoint& kp, cplx t);
cplx B_kernel(const DeformationParams& params, const KernelPoint& kp);

// Beta-integral form, b > 0. rule: Gauss-Jacobi for u^{b-1} (1-u)^{N/2-1}.
cplx B_kernel_beta_form(const DeformationParams& params, const KernelPoint& kp,
                        const quadrature::QuadratureRule& rule);
cplx B_kernel_beta_form(const DeformationParams& params, const KernelPoint& kp);

// N = 1 closed forms in terms of the entire Bessel functions I~, J~.
cplx lambda_kernel_n1(double b, double x, double y, cplx t);
cplx heat_kernel_n1(double b, double x, double y, cplx t);
cplx B_kernel_n1(double b, double x, double y);

// c_{b,N} times the truncated sum of e^{-t(b+lambda+2l+1)} Phi(x) Phi(y) / ||Phi||^2
cplx hille_hardy_sum(const DeformationParams& params, std::span<const double> x, std::span<const double> y,
                     cplx t, spectral::Truncation tr);

enum class Transform {
  Fourier,         // B
  FourierInverse,  // conj(B)
  Hermite,         // Lambda(t): e^{(t/2)(H_b - |x|^2)}
  Heat             // h(t): e^{(t/2) H_b}
};

using PointFunction = std::function<cplx(std::span<const double>)>;

// Radial-times-sphere rule for |x|^{2b} dx on R^N suited to e^{-|x|^2/2} decay.
quadrature::QuadratureRule transform_rule(const DeformationParams& params, int radial_nodes = 48,
                                          int sphere_order = 40);

// c_{b,N} sum_i w_i K(x, y_i) f(y_i) at every target. f is given by its
// values at the rule nodes.
std::vector<cplx> transform_values(const DeformationParams& params, Transform kind, cplx t,
                                   const std::vector<cplx>& f_at_nodes, const quadrature::QuadratureRule& rule,
                                   const std::vector<std::vector<double>>& targets);
std::vector<cplx> sample(const PointFunction& f, const quadrature::QuadratureRule& rule);

// The transform at the rule's own nodes, for composing transforms. Nodes with
// |y| > r_max get 0: the rule does not resolve the kernel's oscillation there,
// while a Gaussian-class result is negligible.
std::vector<cplx> transform_on_nodes(const DeformationParams& params, Transform kind, cplx t,
                                     const std::vector<cplx>& f_at_nodes, const quadrature::QuadratureRule& rule,
                                     double r_max);

cplx fourier_quadrature(const DeformationParams& params, const PointFunction& f, std::span<const double> x,
                        const quadrature::QuadratureRule& rule);
cplx fourier_inverse_quadrature(const DeformationParams& params, const PointFunction& f,
                                std::span<const double> x, const quadrature::QuadratureRule& rule);
// Re t > 0
cplx semigroup_quadrature(const DeformationParams& params, const PointFunction& f, std::span<const double> x,
                          cplx t, const quadrature::QuadratureRule& rule);
cplx heat_apply(const DeformationParams& params, const PointFunction& f, std::span<const double> x, cplx t,
                const quadrature::QuadratureRule& rule);

// rows x1..xN, y1..yN, t_re, t_im, val_re, val_im
struct KernelRow {
  std::vector<double> x, y;
  cplx t;
  cplx value;
};
void write_kernel_csv(const std::vector<KernelRow>& rows, int N, std::ostream& os);

}  // namespace bdeform::kernels
