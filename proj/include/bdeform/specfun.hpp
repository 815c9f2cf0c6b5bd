#pragma once

#include <complex>
#include <vector>

#include "bdeform/common.hpp"

namespace bdeform::specfun {

using cld = std::complex<long double>;

enum class BesselKind { ModifiedScript, ModifiedTilde, OscillatoryScript, OscillatoryTilde };

double ln_gamma(double x);

// L_l^{(alpha)}(t) by upward recurrence
double laguerre(int l, double alpha, double t);

// Normalized Gegenbauer polynomial ((m+nu)/nu) C_m^{(nu)}(t); 2 T_m(t) at nu = 0.
double gegenbauer_tilde(int m, double nu, double t);

// Fills out[0..m] with C~_k^{(nu)}(t), k <= m.
void gegenbauer_tilde_all(int m, double nu, double t, std::vector<double>& out);

cplx bessel_script(BesselKind kind, double nu, cplx w);

// I_nu(z) = sum (z/2)^{2k} / ((nu+1)_k k!), nu > -1. Returns values for orders
// nu, nu+1, ..., nu+count-1.
std::vector<cld> script_bessel_orders(long double nu, int count, cld z);
cld script_bessel_ld(long double nu, cld z);

// Entire-in-order normalization I~_nu = I_nu / Gamma(nu+1), any real nu.
cld tilde_bessel_ld(long double nu, cld z);
// I~ at orders nu, nu+1, ..., nu+count-1.
std::vector<cld> tilde_bessel_orders(long double nu, int count, cld z);

// Normalized integral representation of I_b(z), b > -1/2.
cplx bessel_integral_check(double b, cplx z);

// Constants (C, M) with |I~_b(z)| <= C (1+|z|)^M e^{|Re z|}.
struct BesselBound {
  double C;
  double M;
};
BesselBound tilde_bessel_bound(double b);

}  // namespace bdeform::specfun
