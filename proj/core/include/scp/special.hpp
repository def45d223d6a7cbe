#pragma once

#include <complex>
#include <vector>

#include "scp/quadrature.hpp"

namespace scp::special {

// Lanczos approximation (g = 7, nine terms) with reflection for Re z < 1/2.
cplx gamma(cplx z);
// A logarithm of Gamma(z) (not necessarily the principal branch); exp() of
// it equals gamma(z).
cplx log_gamma(cplx z);
bool is_gamma_pole(cplx z);

// pi^(-s/2) Gamma(s/2).
cplx gamma_r(cplx s);
cplx log_gamma_r(cplx s);

struct WhittakerParams {
  double kappa = 0.0;
  cplx nu{0.0, 0.0};
};

// Accepts any real kappa.  nu must satisfy |Re nu| <= 1/2, unless
// kappa - 1/2 = +-nu where the closed form y^kappa e^(-y/2) applies.
cplx whittaker_w(const WhittakerParams& params, double y, const QuadratureConfig& cfg = {});

cplx whittaker_mellin_rhs(const WhittakerParams& params, cplx s);
// Integral over (0, truncation_radius] of e^(-y/2) W(y) y^(s-1) dy.
cplx whittaker_mellin_lhs(const WhittakerParams& params, cplx s, const QuadratureConfig& cfg = {});

double whittaker_bound_check(const WhittakerParams& params, double epsilon, const std::vector<double>& y_grid);

bool whittaker_star_admissible(int k, cplx nu);
// Normalized W*_{k/2, nu}(y) for nonzero real y.
cplx whittaker_star(int k, cplx nu, double y, const QuadratureConfig& cfg = {});
// Truncated inner product over ymin <= |y| <= ymax with measure dy/|y|.
cplx whittaker_star_inner(int k1, int k2, cplx nu, double ymin = 1e-6, double ymax = 50.0,
                          const QuadratureConfig& cfg = {});

}  // namespace scp::special
