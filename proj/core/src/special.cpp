#include "scp/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "scp/errors.hpp"

namespace scp::special {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

cplx lanczos_sum(cplx zm1) {
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[static_cast<std::size_t>(i)] / (zm1 + static_cast<double>(i));
  return x;
}

void require_no_pole(cplx z, const char* what) {
  if (is_gamma_pole(z)) fail(ErrorKind::pole, std::string(what) + ": Gamma pole at a nonpositive integer");
}

}  // namespace

bool is_gamma_pole(cplx z) {
  if (std::fabs(z.imag()) > 1e-13) return false;
  const double r = std::round(z.real());
  return r <= 0.0 && std::fabs(z.real() - r) <= 1e-13;
}

cplx gamma(cplx z) {
  require_no_pole(z, "gamma");
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * gamma(1.0 - z));
  const cplx zm1 = z - 1.0;
  const cplx t = zm1 + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, zm1 + 0.5) * std::exp(-t) * lanczos_sum(zm1);
}

cplx log_gamma(cplx z) {
  require_no_pole(z, "log_gamma");
  if (z.real() < 0.5) return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
  const cplx zm1 = z - 1.0;
  const cplx t = zm1 + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (zm1 + 0.5) * std::log(t) - t + std::log(lanczos_sum(zm1));
}

cplx gamma_r(cplx s) {
  require_no_pole(0.5 * s, "gamma_r");
  return std::exp(-0.5 * s * std::log(kPi)) * gamma(0.5 * s);
}

cplx log_gamma_r(cplx s) {
  require_no_pole(0.5 * s, "log_gamma_r");
  return -0.5 * s * std::log(kPi) + log_gamma(0.5 * s);
}

namespace {

// e^{-y/2} y^kappa / Gamma(a) * int_0^inf e^{-t} t^{a-1} (1+t/y)^b dt with
// a = mu - kappa + 1/2, b = mu + kappa - 1/2, Re a > 0; t = e^x.
cplx whittaker_integral(double kappa, cplx mu, double y, const QuadratureConfig& cfg) {
  const cplx a = mu - kappa + 0.5;
  const cplx b = mu + kappa - 0.5;
  auto exponent = [&](double x) {
    const double t = std::exp(x);
    return cplx(-t, 0.0) + a * x + b * std::log1p(t / y);
  };
  double peak_x = 0.0;
  double peak = -1e300;
  for (double x = -40.0; x <= 8.0; x += 0.25) {
    const double v = exponent(x).real();
    if (v > peak) {
      peak = v;
      peak_x = x;
    }
  }
  constexpr double kDrop = 46.0;
  double hi = peak_x;
  while (exponent(hi).real() > peak - kDrop) hi += 0.25;
  double lo = peak_x;
  while (exponent(lo).real() > peak - kDrop) {
    lo -= 0.25;
    if (lo < -5000.0) fail(ErrorKind::convergence, "whittaker_w: integrand decays too slowly near t = 0");
  }
  // Scale by exp(-peak) inside the integral to keep magnitudes tame.
  auto integrand = [&](double x) { return std::exp(exponent(x) - peak); };
  QuadratureConfig inner = cfg;
  inner.abs_tol = std::max(1e-300, std::min(cfg.abs_tol, 1e-280));
  const int pieces = std::max(2, static_cast<int>(std::ceil(hi - lo)));
  const QuadResult r = integrate(integrand, lo, hi, inner, pieces);
  const cplx log_prefactor = -0.5 * y + kappa * std::log(y) - log_gamma(a) + peak;
  return std::exp(log_prefactor) * r.value;
}

// Small-y route through the connection formula
//   W = Gamma(-2mu)/Gamma(1/2-mu-kappa) M_{kappa,mu} + Gamma(2mu)/Gamma(1/2+mu-kappa) M_{kappa,-mu},
// M_{kappa,mu}(y) = e^{-y/2} y^{mu+1/2} 1F1(1/2+mu-kappa; 1+2mu; y).  Needs 2mu away from the integers.
cplx kummer_m(double kappa, cplx mu, double y) {
  const cplx a = 0.5 + mu - kappa;
  const cplx c = 1.0 + 2.0 * mu;
  cplx term = 1.0;
  cplx sum = 1.0;
  for (int j = 0; j < 200 && std::abs(term) > 1e-18 * std::abs(sum); ++j) {
    term *= (a + double(j)) / ((c + double(j)) * double(j + 1)) * y;
    sum += term;
  }
  return std::exp(-0.5 * y + (mu + 0.5) * std::log(y)) * sum;
}

cplx whittaker_small_y(double kappa, cplx mu, double y) {
  auto coefficient = [&](cplx m) {
    const cplx denom = 0.5 - m - kappa;
    if (is_gamma_pole(denom)) return cplx(0.0, 0.0);
    return gamma(-2.0 * m) / gamma(denom);
  };
  return coefficient(mu) * kummer_m(kappa, mu, y) + coefficient(-mu) * kummer_m(kappa, -mu, y);
}

constexpr double kSmallY = 1e-3;

}  // namespace

cplx whittaker_w(const WhittakerParams& params, double y, const QuadratureConfig& cfg) {
  if (!(y > 0.0)) fail(ErrorKind::domain, "whittaker_w: y must be positive");
  const double kappa = params.kappa;
  const cplx mu = params.nu.real() >= 0.0 ? params.nu : -params.nu;
  if (std::abs(cplx(kappa - 0.5, 0.0) - mu) <= 1e-14 || std::abs(cplx(kappa - 0.5, 0.0) + mu) <= 1e-14) {
    return std::exp(-0.5 * y + kappa * std::log(y));
  }
  if (mu.real() > 0.5 + 1e-14) {
    fail(ErrorKind::unsupported, "whittaker_w: |Re nu| > 1/2 is outside the supported domain");
  }
  if (y < kSmallY && std::abs(2.0 * mu) > 1e-3 && std::abs(2.0 * mu - 1.0) > 1e-3) {
    return whittaker_small_y(kappa, mu, y);
  }
  const int steps = std::max(0, static_cast<int>(std::ceil(kappa - mu.real() - 1e-12)));
  if (steps == 0) return whittaker_integral(kappa, mu, y, cfg);
  // Upward recurrence in kappa from a base pair where the integral converges well:
  // W_{k+1} = (y - 2k) W_k + (mu^2 - (k - 1/2)^2) W_{k-1}.
  double k = kappa - steps;
  cplx prev = whittaker_integral(k - 1.0, mu, y, cfg);
  cplx cur = whittaker_integral(k, mu, y, cfg);
  for (int i = 0; i < steps; ++i) {
    const cplx next = (y - 2.0 * k) * cur + (mu * mu - (k - 0.5) * (k - 0.5)) * prev;
    prev = cur;
    cur = next;
    k += 1.0;
  }
  return cur;
}

cplx whittaker_mellin_rhs(const WhittakerParams& params, cplx s) {
  if (!(s.real() > 0.5 + std::fabs(params.nu.real()))) {
    fail(ErrorKind::domain, "whittaker_mellin_rhs: need Re(s) > 1/2 + |Re nu|");
  }
  const cplx denom_arg = 1.0 + s - params.kappa;
  if (is_gamma_pole(denom_arg)) fail(ErrorKind::domain, "whittaker_mellin_rhs: denominator Gamma at a pole");
  return gamma(0.5 + s + params.nu) * gamma(0.5 + s - params.nu) / gamma(denom_arg);
}

cplx whittaker_mellin_lhs(const WhittakerParams& params, cplx s, const QuadratureConfig& cfg) {
  if (!(s.real() > 0.5 + std::fabs(params.nu.real()))) {
    fail(ErrorKind::domain, "whittaker_mellin_lhs: need Re(s) > 1/2 + |Re nu|");
  }
  cfg.validate();
  auto integrand = [&](double x) {
    const double y = std::exp(x);
    return std::exp(-0.5 * y + s * x) * whittaker_w(params, y, cfg);
  };
  const double top = std::log(cfg.truncation_radius);
  return integrate_left_decaying(integrand, top, -700.0, 0.5, cfg).value;
}

double whittaker_bound_check(const WhittakerParams& params, double epsilon, const std::vector<double>& y_grid) {
  if (!(epsilon > 0.0)) fail(ErrorKind::domain, "whittaker_bound_check: epsilon must be positive");
  const cplx norm = gamma(0.5 + params.nu + params.kappa);
  const double expo = 0.5 - std::fabs(params.nu.real()) - epsilon;
  double sup = 0.0;
  for (double y : y_grid) {
    if (!(y > 0.0 && y <= 1.0)) fail(ErrorKind::domain, "whittaker_bound_check: grid points must lie in (0, 1]");
    const double ratio = std::abs(whittaker_w(params, y) / norm) / std::pow(y, expo);
    sup = std::max(sup, ratio);
  }
  return sup;
}

bool whittaker_star_admissible(int k, cplx nu) {
  constexpr double tol = 1e-12;
  if (std::fabs(nu.real()) <= tol) return true;  // purely imaginary
  if (std::fabs(nu.imag()) > tol) return false;
  const double v = nu.real();
  if (k % 2 == 0) {
    if (std::fabs(v) < 0.5) return true;
    return std::fabs((v - 0.5) - std::round(v - 0.5)) <= tol;
  }
  return std::fabs(v - std::round(v)) <= tol;
}

cplx whittaker_star(int k, cplx nu, double y, const QuadratureConfig& cfg) {
  if (y == 0.0) fail(ErrorKind::domain, "whittaker_star: y must be nonzero");
  if (!whittaker_star_admissible(k, nu)) {
    fail(ErrorKind::domain, "whittaker_star: (k, nu) outside the admissible set");
  }
  const double sign = y > 0.0 ? 1.0 : -1.0;
  const double kappa = sign * 0.5 * k;
  const cplx g1 = 0.5 - nu + kappa;
  const cplx g2 = 0.5 + nu + kappa;
  if (is_gamma_pole(g1) || is_gamma_pole(g2)) return {0.0, 0.0};
  const cplx phase = std::exp(cplx(0.0, 0.5 * kPi * kappa));
  const cplx norm = std::sqrt(gamma(g1) * gamma(g2));
  return phase * whittaker_w({kappa, nu}, 4.0 * kPi * std::fabs(y), cfg) / norm;
}

cplx whittaker_star_inner(int k1, int k2, cplx nu, double ymin, double ymax, const QuadratureConfig& cfg) {
  if (!(ymin > 0.0 && ymax > ymin)) fail(ErrorKind::domain, "whittaker_star_inner: need 0 < ymin < ymax");
  auto integrand = [&](double x) {
    const double y = std::exp(x);
    return whittaker_star(k1, nu, y, cfg) * std::conj(whittaker_star(k2, nu, y, cfg)) +
           whittaker_star(k1, nu, -y, cfg) * std::conj(whittaker_star(k2, nu, -y, cfg));
  };
  const double a = std::log(ymin);
  const double b = std::log(ymax);
  QuadratureConfig outer = cfg;
  outer.rel_tol = std::max(cfg.rel_tol, 1e-9);
  outer.abs_tol = std::max(cfg.abs_tol, 1e-12);
  return integrate(integrand, a, b, outer, static_cast<int>(std::ceil(b - a))).value;
}

}  // namespace scp::special
