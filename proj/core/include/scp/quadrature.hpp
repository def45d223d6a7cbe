#pragma once

#include <complex>
#include <functional>

namespace scp::special {

using cplx = std::complex<double>;

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;
  int max_subdivisions = 4000;
  double truncation_radius = 200.0;

  void validate() const;
};

struct QuadResult {
  cplx value;
  double error_estimate = 0.0;
  int intervals = 0;
};

using Integrand = std::function<cplx(double)>;

// Globally adaptive Gauss-Kronrod (7/15) on [a, b], starting from
// `initial_pieces` equal subintervals.  Throws a convergence error when the
// interval budget runs out before the tolerance is met.
QuadResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg,
                     int initial_pieces = 1);

// Integral over [floor, top] of an integrand that becomes negligible towards
// the left (typically a Mellin integrand after x = log y).  The grid is walked
// downward from `top` in steps of `step`; the walk stops once |f| has stayed
// below exp(-drop) times the running peak for several consecutive points.
QuadResult integrate_left_decaying(const Integrand& f, double top, double floor, double step,
                                   const QuadratureConfig& cfg, double drop = 42.0);

}  // namespace scp::special
