#pragma once

#include <complex>
#include <cstdint>

#include "scp/arith.hpp"
#include "scp/quadforms.hpp"
#include "scp/quadrature.hpp"

namespace scp::mellin {

using cplx = std::complex<double>;
using arith::CoeffTable;
using quadforms::QuadraticForm;
using quadforms::SphericalPoly;

// Two closed forms for the constant-coefficient Mellin transform.
//   derived: sum r(m) c(m) m^-E (4 pi m)^-w Gamma(1/2+w+nu) Gamma(1/2+w-nu) / Gamma(1+w-kappa)
//   stated:  sum r(m) c(m) m^-E Gamma(1/2+w+nu) Gamma(1/2+w-nu) / ((4 pi)^w Gamma(1+w+kappa))
// with w = s + k/4 - (n-2)/2 and E = s + k/2 - (n-2)/2.  The y-integral
// evaluated numerically reproduces the derived form.
enum class MellinNormalization { derived, stated };

struct MellinSpec {
  int n = 2;  // degree of the representation
  QuadraticForm f;
  SphericalPoly p;
  double kappa = 0.5;
  cplx nu{0.0, 0.0};
  cplx s{3.0, 0.0};

  cplx w() const noexcept;
  cplx E() const noexcept;
  void validate() const;
};

struct MellinValue {
  cplx value{0.0, 0.0};
  double tail_bound = 0.0;
  std::int64_t terms = 0;  // lattice values m <= M with r(m) c(m) != 0
};

// The Gamma-product prefactor of the chosen normalization (without the m-dependence).
cplx mellin_gamma_product(const MellinSpec& spec, MellinNormalization norm);

MellinValue constant_coeff_mellin_closed(const CoeffTable& table, const MellinSpec& spec, std::int64_t M,
                                         MellinNormalization norm = MellinNormalization::derived);
// Per lattice value m: m^-E times the integral over y > 0 of
// exp(-2 pi m y) W_{kappa,nu}(4 pi m y) y^w dy/y, by adaptive quadrature.
MellinValue constant_coeff_mellin_numeric(const CoeffTable& table, const MellinSpec& spec, std::int64_t M,
                                          const special::QuadratureConfig& cfg = {});

struct SymSquareRatios {
  cplx ratio_nminus2{0.0, 0.0};  // 2 L(2 x2, Sym^2) / zeta(4 x2), x2 = s + 1/2 - (n-2)/2
  cplx ratio_nminus1{0.0, 0.0};  // same with x1 = s + 1/2 - (n-1)/2
  cplx series_nminus2{0.0, 0.0};  // 2 sum_a c(a^2) a^(-2 x2), the direct route
  cplx series_nminus1{0.0, 0.0};
  cplx zeta_nminus2{0.0, 0.0};  // truncated zeta(4 x2)
  cplx zeta_nminus1{0.0, 0.0};
  double tail_bound = 0.0;
};

// `seed` must be degree 2 with Satake data covering primes up to M.  The
// degree entering the shifts is taken from `n`.
SymSquareRatios sym_square_partial(const arith::RepDescriptor& seed, int n, cplx s, std::int64_t M);

struct SeriesValue {
  cplx value{0.0, 0.0};
  double tail_bound = 0.0;
};

// sum_{1 <= f(a) <= M} p(a) c(f(a)) f(a)^-s through theta coefficients.
SeriesValue dirichlet_series_D(const CoeffTable& table, const QuadraticForm& f, const SphericalPoly& p, cplx s,
                               std::int64_t M);
// The same sum walked point by point over the lattice.
SeriesValue dirichlet_series_D_lattice(const CoeffTable& table, const QuadraticForm& f, const SphericalPoly& p,
                                       cplx s, std::int64_t M);

}  // namespace scp::mellin
