#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "scp/arith.hpp"

namespace scp::lfunc {

using cplx = std::complex<double>;
using arith::CoeffTable;
using arith::DirichletChar;
using arith::RepDescriptor;

struct AFEConfig {
  double kernel_width = 1.0;  // G(s) = exp(s^2 / kernel_width)
  double contour_sigma = 1.5;
  double contour_T = 30.0;
  double contour_step = 0.01;
  double cutoff_multiplier = 1.0;

  void validate() const;
};

struct Conductor {
  std::int64_t arithmetic = 1;  // conductor(rep) * q^n
  double archimedean = 1.0;     // pi^-n prod |1/4 + parity mu_i / 2|^2
  double value() const noexcept { return static_cast<double>(arithmetic) * archimedean; }
};

struct TwistedL {
  RepDescriptor rep;
  DirichletChar chi;
  double conductor_product = 0.0;
  std::optional<cplx> epsilon;
};

// prod_i Gamma_R(s + parity * mu_i).
cplx gamma_factor(const RepDescriptor& rep, int parity, cplx s);

Conductor analytic_conductor_parts(const RepDescriptor& rep, std::int64_t q, int parity);
double analytic_conductor(const RepDescriptor& rep, std::int64_t q, int parity);
double convexity_bound(const RepDescriptor& rep, const DirichletChar& chi, double epsilon_exp);

// The cutoff V(y) of the approximate functional equation, sampled once on the
// vertical line Re s = contour_sigma so that repeated evaluation only costs
// one exponential per node.  V is normalized by the archimedean conductor,
// so V(m / sqrt(C)) with the full analytic conductor C is the usual cutoff
// at m / sqrt(arithmetic conductor).  For descriptors with a pole at s = 1
// the kernel carries (1 - 4 s^2)^pole_order.
class CutoffKernel {
 public:
  CutoffKernel(const RepDescriptor& rep, int parity, const AFEConfig& cfg);
  cplx operator()(double y) const;
  // Smallest y on a geometric grid from y = 1 beyond which
  // |V(y)| (scale y)^power stays below `floor`.
  double decay_point(double floor = 1e-17, double power = 0.0, double scale = 1.0) const;

 private:
  std::vector<cplx> nodes_;
  std::vector<cplx> weights_;
};

// Piecewise Chebyshev interpolant of a cutoff kernel in log y on [y_lo, y_hi].
// Used for the long coefficient sums, where direct contour evaluation per
// term would dominate the cost.
class TabulatedCutoff {
 public:
  TabulatedCutoff(const CutoffKernel& kernel, double y_lo, double y_hi);
  cplx operator()(double y) const;

 private:
  double u_lo_ = 0.0;
  double piece_ = 0.5;
  std::vector<std::vector<cplx>> coeffs_;
};

cplx afe_cutoff(const RepDescriptor& rep, int parity, const AFEConfig& cfg, double y);

struct CentralValue {
  cplx value{0.0, 0.0};
  double consistency_residual = 0.0;  // |value at kernel width w - value at width 2w|
  cplx epsilon{1.0, 0.0};
  double gauss_deviation = 0.0;  // |epsilon - g(chi*)^2 / q*|
  double conductor = 0.0;
  std::int64_t terms = 0;
  TwistedL twisted;
};

// L(1/2, rep x chi).  Imprimitive characters are reduced to their primitive
// inducing character and the missing Euler factors are multiplied back in.
// The descriptor's Satake source must cover every prime up to the table
// length, which is reported in `terms`.
CentralValue central_value(const RepDescriptor& rep, const DirichletChar& chi, const AFEConfig& cfg);

struct SeriesValue {
  cplx value{0.0, 0.0};
  double tail_bound = 0.0;
  double growth_exponent = 0.0;
};

// Truncated sum_{m <= M} c(m) chi(m) m^-s for Re s > 1.
SeriesValue dirichlet_series(const CoeffTable& table, const DirichletChar& chi, cplx s, std::int64_t M);

}  // namespace scp::lfunc
