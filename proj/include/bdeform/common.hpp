#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bdeform {

using cplx = std::complex<double>;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Thrown when a route cannot handle the requested parameters.
class RouteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Series or iteration failed to converge within its cap.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, cplx partial, double bound)
      : std::runtime_error(what), partial_(partial), bound_(bound) {}
  cplx partial() const { return partial_; }
  double bound() const { return bound_; }

 private:
  cplx partial_;
  double bound_;
};

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double sphere_volume(int N);

// (b, N) with b > -N/2.
class DeformationParams {
 public:
  DeformationParams(double b, int N);

  double b() const { return b_; }
  int N() const { return N_; }
  // (N-2)/2 + m
  double lambda(int m) const { return 0.5 * (N_ - 2) + m; }
  double c_bN() const { return c_; }
  double vol() const { return vol_; }
  // b + N/2
  double kappa() const { return b_ + 0.5 * N_; }

 private:
  double b_;
  int N_;
  double c_;
  double vol_;
};

// i^a with i = e^{i pi/2}
inline cplx ipow(double a) { return std::polar(1.0, 0.5 * std::numbers::pi * a); }

inline cplx ipow_int(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace bdeform
