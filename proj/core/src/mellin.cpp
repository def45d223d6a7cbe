#include "scp/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "scp/errors.hpp"
#include "scp/special.hpp"
#include "scp/summation.hpp"

namespace scp::mellin {

namespace {

constexpr double kPi = std::numbers::pi;

cplx power(double base, cplx e) { return std::exp(e * std::log(base)); }

// Heuristic bound for sum_{m > M} |r(m) c(m)| m^-sigma, assuming
// |r(m)| <= A m^rho (A measured on [1, M]) and |c(m)| <= m^theta.
double lattice_tail(const quadforms::ThetaCoeffs& theta, int k, int degree, double growth, double sigma,
                    std::int64_t M) {
  const double rho = std::max(0.0, 0.5 * k - 1.0) + 0.5 * degree;
  double A = 0.0;
  for (std::int64_t m = 1; m <= M; ++m) {
    A = std::max(A, std::fabs(theta.r[static_cast<std::size_t>(m)]) / std::pow(static_cast<double>(m), rho));
  }
  const double gap = sigma - 1.0 - growth - rho;
  if (gap <= 0.0) return std::numeric_limits<double>::infinity();
  return A * std::pow(static_cast<double>(M), -gap) / gap;
}

double series_tail(double growth, double sigma, double M) {
  const double gap = sigma - 1.0 - growth;
  if (gap <= 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(M, -gap) / gap;
}

void require_table(const CoeffTable& table, std::int64_t M, const char* who) {
  if (M < 1) fail(ErrorKind::domain, std::string(who) + ": M must be >= 1");
  if (M > table.bound()) fail(ErrorKind::coverage, std::string(who) + ": M exceeds table bound");
}

}  // namespace

cplx MellinSpec::w() const noexcept { return s + 0.25 * f.k() - 0.5 * (n - 2); }
cplx MellinSpec::E() const noexcept { return s + 0.5 * f.k() - 0.5 * (n - 2); }

void MellinSpec::validate() const {
  if (n < 2) fail(ErrorKind::domain, "mellin: degree n must be >= 2");
  if (f.k() < 1) fail(ErrorKind::domain, "mellin: quadratic form is empty");
  if (p.k() != f.k()) fail(ErrorKind::precondition, "mellin: polynomial and form dimensions differ");
  if (!(w().real() > -1.0)) fail(ErrorKind::domain, "mellin: need Re(s) + k/4 - (n-2)/2 > -1");
  if (!(w().real() + 0.5 > std::fabs(nu.real()))) {
    fail(ErrorKind::domain, "mellin: y-integral diverges at 0 (need Re w + 1/2 > |Re nu|)");
  }
}

cplx mellin_gamma_product(const MellinSpec& spec, MellinNormalization norm) {
  spec.validate();
  const cplx w = spec.w();
  const cplx top = special::gamma(0.5 + w + spec.nu) * special::gamma(0.5 + w - spec.nu);
  const cplx bottom_arg = norm == MellinNormalization::derived ? 1.0 + w - spec.kappa : 1.0 + w + spec.kappa;
  if (special::is_gamma_pole(bottom_arg)) return {0.0, 0.0};
  return top / (power(4.0 * kPi, w) * special::gamma(bottom_arg));
}

MellinValue constant_coeff_mellin_closed(const CoeffTable& table, const MellinSpec& spec, std::int64_t M,
                                         MellinNormalization norm) {
  spec.validate();
  require_table(table, M, "constant_coeff_mellin_closed");
  const auto theta = quadforms::theta_coeffs(spec.f, spec.p, M);
  // The derived form carries an extra m^-w from rescaling the integral.
  const cplx expo = norm == MellinNormalization::derived ? spec.E() + spec.w() : spec.E();
  MellinValue out;
  ComplexCompensatedSum acc;
  for (std::int64_t m = 1; m <= M; ++m) {
    const cplx rc = theta.r[static_cast<std::size_t>(m)] * table[m];
    if (rc == cplx(0.0, 0.0)) continue;
    ++out.terms;
    acc.add(rc * power(static_cast<double>(m), -expo));
  }
  const cplx pref = mellin_gamma_product(spec, norm);
  out.value = pref * acc.value();
  out.tail_bound = std::abs(pref) * lattice_tail(theta, spec.f.k(), spec.p.degree(),
                                                 arith::empirical_growth_exponent(table, M), expo.real(), M);
  return out;
}

MellinValue constant_coeff_mellin_numeric(const CoeffTable& table, const MellinSpec& spec, std::int64_t M,
                                          const special::QuadratureConfig& cfg) {
  spec.validate();
  cfg.validate();
  require_table(table, M, "constant_coeff_mellin_numeric");
  const auto theta = quadforms::theta_coeffs(spec.f, spec.p, M);
  const special::WhittakerParams wp{spec.kappa, spec.nu};
  const cplx w = spec.w();
  MellinValue out;
  ComplexCompensatedSum acc;
  for (std::int64_t m = 1; m <= M; ++m) {
    const cplx rc = theta.r[static_cast<std::size_t>(m)] * table[m];
    if (rc == cplx(0.0, 0.0)) continue;
    ++out.terms;
    const double md = static_cast<double>(m);
    auto integrand = [&](double x) {
      const double y = std::exp(x);
      return std::exp(-2.0 * kPi * md * y + w * x) * special::whittaker_w(wp, 4.0 * kPi * md * y, cfg);
    };
    const double top = std::log(cfg.truncation_radius / (4.0 * kPi * md));
    const auto integral = special::integrate_left_decaying(integrand, top, -700.0, 0.5, cfg).value;
    acc.add(rc * power(md, -spec.E()) * integral);
  }
  out.value = acc.value();
  // Dropped tail beyond 4 pi m y = truncation_radius is below exp(-radius/2) per term.
  out.tail_bound = std::exp(-0.5 * cfg.truncation_radius) * static_cast<double>(out.terms);
  return out;
}

SymSquareRatios sym_square_partial(const arith::RepDescriptor& seed, int n, cplx s, std::int64_t M) {
  if (seed.degree != 2) fail(ErrorKind::precondition, "sym_square_partial: seed must have degree 2");
  if (M < 4) fail(ErrorKind::domain, "sym_square_partial: M must be >= 4");
  const cplx x2 = s + 0.5 - 0.5 * (n - 2);
  const cplx x1 = s + 0.5 - 0.5 * (n - 1);
  if (!(2.0 * x1.real() > 1.0)) fail(ErrorKind::domain, "sym_square_partial: Re(2 x) <= 1, series diverge");
  const CoeffTable seed_table = arith::coeff_from_satake(seed, M);
  const CoeffTable sym2_table = arith::coeff_from_satake(arith::sym_power_rep(seed, 2), M);
  const double theta_seed = arith::empirical_growth_exponent(seed_table, M);
  const double theta_sym2 = arith::empirical_growth_exponent(sym2_table, M);

  auto evaluate = [&](cplx x, cplx& ratio, cplx& series, cplx& zeta) {
    ComplexCompensatedSum L, Z, S;
    for (std::int64_t m = 1; m <= M; ++m) {
      const double lm = std::log(static_cast<double>(m));
      L.add(sym2_table[m] * std::exp(-2.0 * x * lm));
      Z.add(std::exp(-4.0 * x * lm));
      if (m * m <= M) S.add(seed_table[m * m] * std::exp(-2.0 * x * lm));
    }
    ratio = 2.0 * L.value() / Z.value();
    series = 2.0 * S.value();
    zeta = Z.value();
    const double sigma = x.real();
    const double tailL = series_tail(theta_sym2, 2.0 * sigma, static_cast<double>(M));
    const double tailZ = series_tail(0.0, 4.0 * sigma, static_cast<double>(M));
    const double tailS = series_tail(2.0 * theta_seed, 2.0 * sigma, std::sqrt(static_cast<double>(M)));
    const double az = std::abs(Z.value());
    return 2.0 * (tailL / az + std::abs(L.value()) * tailZ / (az * az) + tailS);
  };
  SymSquareRatios out;
  const double t2 = evaluate(x2, out.ratio_nminus2, out.series_nminus2, out.zeta_nminus2);
  const double t1 = evaluate(x1, out.ratio_nminus1, out.series_nminus1, out.zeta_nminus1);
  out.tail_bound = std::max(t1, t2);
  return out;
}

SeriesValue dirichlet_series_D(const CoeffTable& table, const QuadraticForm& f, const SphericalPoly& p, cplx s,
                               std::int64_t M) {
  if (p.k() != f.k()) fail(ErrorKind::precondition, "dirichlet_series_D: dimensions differ");
  require_table(table, M, "dirichlet_series_D");
  const auto theta = quadforms::theta_coeffs(f, p, M);
  ComplexCompensatedSum acc;
  for (std::int64_t m = 1; m <= M; ++m) {
    const double r = theta.r[static_cast<std::size_t>(m)];
    if (r == 0.0) continue;
    acc.add(r * table[m] * power(static_cast<double>(m), -s));
  }
  SeriesValue out;
  out.value = acc.value();
  out.tail_bound = lattice_tail(theta, f.k(), p.degree(), arith::empirical_growth_exponent(table, M), s.real(), M);
  return out;
}

SeriesValue dirichlet_series_D_lattice(const CoeffTable& table, const QuadraticForm& f, const SphericalPoly& p,
                                       cplx s, std::int64_t M) {
  if (p.k() != f.k()) fail(ErrorKind::precondition, "dirichlet_series_D_lattice: dimensions differ");
  require_table(table, M, "dirichlet_series_D_lattice");
  const auto pts = quadforms::enumerate_points(f, M);
  SeriesValue out;
  out.value = deterministic_sum(pts.size(), [&](std::size_t i) {
    const std::int64_t m = pts.norms[i];
    if (m == 0) return cplx(0.0, 0.0);
    return p.evaluate(pts.vec(i)) * table[m] * power(static_cast<double>(m), -s);
  });
  const auto theta = quadforms::theta_coeffs(f, p, M);
  out.tail_bound = lattice_tail(theta, f.k(), p.degree(), arith::empirical_growth_exponent(table, M), s.real(), M);
  return out;
}

}  // namespace scp::mellin
