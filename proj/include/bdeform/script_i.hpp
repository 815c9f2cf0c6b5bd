#pragma once

#include <string>
#include <vector>

#include "bdeform/common.hpp"
#include "bdeform/quadrature.hpp"
#include "bdeform/specfun.hpp"

namespace bdeform::scripti {

enum class Route { Series, BetaIntegral, Continuation, DoubleSeries, Auto };

std::string route_name(Route r);
Route parse_route(const std::string& s);

struct ScriptIParams {
  double b = 0.0;
  double nu = 0.0;
  Route route = Route::Auto;
  int order = 0;  // Continuation Taylor order; 0 selects the default
  void validate() const;
};

struct ScriptIValue {
  cplx value;
  Route route;
};

int default_order(double b);

// Coefficients a_m = Gamma(b+nu+1)/Gamma(b+nu+m+1) (w/2)^m I_{b+nu+m}(w) of the
// Gegenbauer expansion for fixed (b, nu, w); cheap to evaluate at many t.
class Expansion {
 public:
  Expansion(double b, double nu, cplx w);
  cplx operator()(double t) const;
  int terms() const { return static_cast<int>(a_.size()); }

 private:
  double nu_;
  std::vector<specfun::cld> a_;
};

cplx eval_series(const ScriptIParams& p, cplx w, double t);
cplx eval_beta_integral(const ScriptIParams& p, cplx w, double t,
                        const quadrature::QuadratureRule& rule);
cplx eval_beta_integral(const ScriptIParams& p, cplx w, double t);
cplx eval_continuation(const ScriptIParams& p, cplx w, double t);
cplx eval_double_series(const ScriptIParams& p, cplx w, double t);
ScriptIValue eval_auto(double b, double nu, cplx w, double t);
// Dispatch on p.route.
ScriptIValue eval(const ScriptIParams& p, cplx w, double t);

// |I_{b,nu}(w,t)| <= C (1+|w|)^M e^{|Re w|}; for b >= 0, C = 1 and M = 0.
struct PolyExpBound {
  double C;
  double M;
  double operator()(cplx w) const {
    return C * std::pow(1.0 + std::abs(w), M) * std::exp(std::abs(w.real()));
  }
};
PolyExpBound poly_exp_bound(double b, double nu, int order = 0);

}  // namespace bdeform::scripti
