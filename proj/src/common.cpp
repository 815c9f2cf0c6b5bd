#include "bdeform/common.hpp"

#include "bdeform/specfun.hpp"

namespace bdeform {

double sphere_volume(int N) {
  if (N < 1) throw DomainError("sphere_volume: N must be positive");
  if (N == 1) return 2.0;
  return 2.0 * std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N);
}

DeformationParams::DeformationParams(double b, int N) : b_(b), N_(N) {
  if (N < 1) throw DomainError("dimension must be positive");
  if (!(b > -0.5 * N)) throw DomainError("deformation parameter must satisfy b > -N/2");
  vol_ = sphere_volume(N);
  const double k = b + 0.5 * N;
  c_ = std::exp(-k * std::log(2.0 * std::numbers::pi) + specfun::ln_gamma(0.5 * N) +
                b * std::log(std::numbers::pi) - specfun::ln_gamma(k));
}

}  // namespace bdeform
