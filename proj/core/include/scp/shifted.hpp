#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "scp/arith.hpp"
#include "scp/quadforms.hpp"

namespace scp::shifted {

using cplx = std::complex<double>;
using arith::CoeffTable;
using quadforms::QuadraticForm;
using quadforms::SphericalPoly;
using quadforms::ThetaCoeffs;

enum class WeightFamily { gaussian_bump, compact_bump };

WeightFamily parse_weight_family(const std::string& name);
const char* weight_family_name(WeightFamily family) noexcept;

// Smooth weights on (0, inf), equal to 1 at `center`.
//   gaussian_bump: exp(-log(y/c)^2 / (2 w^2))
//   compact_bump:  exp(-t^2 / (w (1 - t^2))) with t = log2(y/c), zero for |t| >= 1,
//                  so the support is [c/2, 2c].
struct WeightFn {
  WeightFamily family = WeightFamily::compact_bump;
  double center = 1.0;
  double width = 1.0;

  double operator()(double y) const noexcept;
  // Interval outside which the weight is below `eps` (exact support for the
  // compact family).
  std::pair<double, double> support(double eps = 1e-16) const;
  void validate() const;
};

struct ShiftSumResult {
  cplx value{0.0, 0.0};
  std::size_t term_count = 0;
  std::int64_t n_min = 0;  // range of shifted arguments f(a) + alpha that can carry weight
  std::int64_t n_max = -1;
};

// sum over a in Z^k of p(a) c(f(a)+alpha) |f(a)+alpha|^(-1/2) W((f(a)+alpha)/Y),
// walking the lattice directly.  Zero shifted arguments are skipped.
ShiftSumResult quad_shift_sum(const CoeffTable& table, const QuadraticForm& f, const SphericalPoly& p,
                              std::int64_t alpha, double Y, const WeightFn& W, unsigned threads = 1);
// Same sum regrouped through theta coefficients r(m).
ShiftSumResult quad_shift_sum_theta(const CoeffTable& table, const ThetaCoeffs& theta, std::int64_t alpha,
                                    double Y, const WeightFn& W);
ShiftSumResult quad_shift_sum_theta(const CoeffTable& table, const QuadraticForm& f, const SphericalPoly& p,
                                    std::int64_t alpha, double Y, const WeightFn& W);

struct LinearShiftResult {
  cplx value{0.0, 0.0};
  std::size_t term_count = 0;
  // Set when gcd(l1, alpha) or gcd(l2, alpha) differs from 1.
  bool coprimality_flag = false;
};

// sum over l1 g1 - l2 g2 = alpha of cA(g1) conj(cB(g2)) (g1 g2)^(-1/2) W1(g1 l1 / Y) W2(g2 l2 / Y),
// scanning g1 over the support of W1 and solving for g2.
LinearShiftResult linear_shift_sum(const CoeffTable& tableA, const CoeffTable& tableB, std::int64_t l1,
                                   std::int64_t l2, std::int64_t alpha, double Y, const WeightFn& W1,
                                   const WeightFn& W2);
// The index pairs (g1, g2) that carry nonzero weight in linear_shift_sum.
std::vector<std::pair<std::int64_t, std::int64_t>> linear_shift_pairs(std::int64_t l1, std::int64_t l2,
                                                                      std::int64_t alpha, double Y,
                                                                      const WeightFn& W1, const WeightFn& W2);

// Trigonometric polynomial x -> Y^global_y_power * sum_g coeffs[g] e(g x).
struct FourierSeries {
  std::map<std::int64_t, cplx> coeffs;
  std::int64_t truncation = 0;
  double global_y_power = 0.0;
  std::string note;
};

// Coefficient at g >= 1: c(g) g^(-1/2) exp(2 pi g / Y) W(g / Y) exp(-2 pi alpha / Y).
// `n` is recorded in the note only; the half-power normalization is used for every degree.
FourierSeries assemble_projected_series(const CoeffTable& table, int n, const WeightFn& W, double Y,
                                        std::int64_t M, std::int64_t alpha);
// Coefficient at m: r(m) exp(-2 pi m / Y); global power -k/4.
FourierSeries theta_series(const ThetaCoeffs& theta, int k, double Y);

struct UnfoldCheck {
  cplx lhs{0.0, 0.0};  // equidistant sampling of the unit-interval integral
  cplx rhs{0.0, 0.0};  // coefficient convolution
};

UnfoldCheck fourier_unfold_check(const FourierSeries& F, const FourierSeries& G, std::int64_t alpha,
                                 std::int64_t N);

struct GrowthFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root-mean-square deviation in log space
};

GrowthFit growth_fit(const std::vector<std::pair<double, double>>& values);

struct GrowthPoint {
  double Y = 0.0;
  cplx value{0.0, 0.0};
  std::size_t term_count = 0;
};

std::vector<GrowthPoint> growth_experiment(const CoeffTable& table, const QuadraticForm& f,
                                           const SphericalPoly& p, std::int64_t alpha,
                                           const std::vector<double>& Ys, const WeightFn& W, unsigned threads = 1);

// Upper exponent for |S(Y)|: the larger of the main-term exponent (k-1)/4
// (only when k is odd and alpha > 0) and the error exponent (k-2)/4 + theta0/2.
double predicted_exponent(int k, std::int64_t alpha, double theta0);

}  // namespace scp::shifted
