#include "scp/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "scp/errors.hpp"
#include "scp/special.hpp"
#include "scp/summation.hpp"

namespace scp::lfunc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSecondScale = 1.25;
constexpr double kTailTolerance = 1e-9;

struct SumPair {
  cplx A{0.0, 0.0};
  cplx B{0.0, 0.0};
};

// The two smoothed sums at cutoff scale X: A over m / (X sqrt C), B over m X / sqrt C.
SumPair afe_sums(const CoeffTable& table, const DirichletChar& chi, const TabulatedCutoff& V, double sqrtC, double X,
                 double y_max) {
  const auto lenA = std::min(table.bound(), static_cast<std::int64_t>(std::ceil(y_max * X * sqrtC)));
  const auto lenB = std::min(table.bound(), static_cast<std::int64_t>(std::ceil(y_max * sqrtC / X)));
  ComplexCompensatedSum a;
  ComplexCompensatedSum b;
  for (std::int64_t m = 1; m <= std::max(lenA, lenB); ++m) {
    const cplx cm = table[m] * chi(m);
    if (cm == cplx(0.0, 0.0)) continue;
    const double md = static_cast<double>(m);
    const double scale = 1.0 / std::sqrt(md);
    if (m <= lenA) a.add(cm * scale * V(md / (X * sqrtC)));
    if (m <= lenB) b.add(std::conj(cm) * scale * V(md * X / sqrtC));
  }
  return {a.value(), b.value()};
}

}  // namespace

void AFEConfig::validate() const {
  if (!(kernel_width > 0.0)) fail(ErrorKind::domain, "AFE: kernel_width must be positive");
  if (!(contour_sigma > 0.0)) fail(ErrorKind::domain, "AFE: contour_sigma must be positive");
  if (!(contour_step > 0.0) || !(contour_step < contour_T)) {
    fail(ErrorKind::domain, "AFE: need 0 < contour_step < contour_T");
  }
  if (!(cutoff_multiplier >= 1.0)) fail(ErrorKind::domain, "AFE: cutoff_multiplier must be >= 1");
}

cplx gamma_factor(const RepDescriptor& rep, int parity, cplx s) {
  if (parity != 1 && parity != -1) fail(ErrorKind::domain, "gamma_factor: parity must be +1 or -1");
  cplx out(1.0, 0.0);
  for (const cplx& mu : rep.arch_params) out *= special::gamma_r(s + static_cast<double>(parity) * mu);
  return out;
}

Conductor analytic_conductor_parts(const RepDescriptor& rep, std::int64_t q, int parity) {
  if (q < 1) fail(ErrorKind::domain, "analytic_conductor: q must be positive");
  if (parity != 1 && parity != -1) fail(ErrorKind::domain, "analytic_conductor: parity must be +1 or -1");
  Conductor c;
  c.arithmetic = rep.conductor;
  for (int i = 0; i < rep.degree; ++i) {
    if (c.arithmetic > std::numeric_limits<std::int64_t>::max() / q) {
      fail(ErrorKind::resource, "analytic_conductor: arithmetic conductor overflows 64 bits");
    }
    c.arithmetic *= q;
  }
  double arch = std::pow(kPi, -rep.degree);
  for (const cplx& mu : rep.arch_params) arch *= std::norm(0.25 + 0.5 * static_cast<double>(parity) * mu);
  c.archimedean = arch;
  return c;
}

double analytic_conductor(const RepDescriptor& rep, std::int64_t q, int parity) {
  return analytic_conductor_parts(rep, q, parity).value();
}

double convexity_bound(const RepDescriptor& rep, const DirichletChar& chi, double epsilon_exp) {
  if (epsilon_exp < 0.0) fail(ErrorKind::domain, "convexity_bound: epsilon must be nonnegative");
  const auto star = arith::inducing_primitive(chi);
  return std::pow(analytic_conductor(rep, star.modulus, star.parity), 0.25 + epsilon_exp);
}

CutoffKernel::CutoffKernel(const RepDescriptor& rep, int parity, const AFEConfig& cfg) {
  cfg.validate();
  if (parity != 1 && parity != -1) fail(ErrorKind::domain, "cutoff kernel: parity must be +1 or -1");
  const double log_arch = std::log(analytic_conductor_parts(rep, 1, parity).archimedean);
  cplx log_base(0.0, 0.0);
  for (const cplx& mu : rep.arch_params) log_base += special::log_gamma_r(0.5 + static_cast<double>(parity) * mu);
  const auto count = static_cast<std::int64_t>(std::floor(2.0 * cfg.contour_T / cfg.contour_step));
  const double h = 2.0 * cfg.contour_T / static_cast<double>(count);
  std::vector<cplx> nodes;
  std::vector<cplx> weights;
  double peak = 0.0;
  for (std::int64_t j = 0; j <= count; ++j) {
    const cplx s(cfg.contour_sigma, -cfg.contour_T + h * static_cast<double>(j));
    cplx log_ratio = -log_base;
    for (const cplx& mu : rep.arch_params) log_ratio += special::log_gamma_r(0.5 + s + static_cast<double>(parity) * mu);
    cplx g = std::exp(s * s / cfg.kernel_width + log_ratio - 0.5 * s * log_arch);
    if (rep.pole_order > 0) g *= std::pow(1.0 - 4.0 * s * s, rep.pole_order);
    const double endpoint = (j == 0 || j == count) ? 0.5 : 1.0;
    const cplx w = endpoint * h / (2.0 * kPi) * g / s;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      fail(ErrorKind::convergence, "cutoff kernel: contour integrand overflowed");
    }
    peak = std::max(peak, std::abs(w));
    nodes.push_back(s);
    weights.push_back(w);
  }
  if (std::abs(weights.front()) > 1e-14 * peak || std::abs(weights.back()) > 1e-14 * peak) {
    fail(ErrorKind::convergence, "cutoff kernel: integrand has not decayed at the contour ends; raise contour_T");
  }
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (std::abs(weights[j]) < 1e-22 * peak) continue;
    nodes_.push_back(nodes[j]);
    weights_.push_back(weights[j]);
  }
}

cplx CutoffKernel::operator()(double y) const {
  if (!(y > 0.0)) fail(ErrorKind::domain, "cutoff kernel: y must be positive");
  const double ly = std::log(y);
  ComplexCompensatedSum acc;
  for (std::size_t j = 0; j < nodes_.size(); ++j) acc.add(weights_[j] * std::exp(-nodes_[j] * ly));
  return acc.value();
}

double CutoffKernel::decay_point(double floor, double power, double scale) const {
  double y = 1.0;
  double first_quiet = 0.0;
  int quiet = 0;
  while (y < 1e8) {
    if (std::abs((*this)(y)) * std::pow(scale * y, power) < floor) {
      if (quiet == 0) first_quiet = y;
      if (++quiet >= 8) return first_quiet;
    } else {
      quiet = 0;
    }
    y *= 1.05;
  }
  fail(ErrorKind::convergence, "cutoff kernel: V(y) does not fall below the requested floor");
}

namespace {
constexpr int kChebNodes = 32;
}

TabulatedCutoff::TabulatedCutoff(const CutoffKernel& kernel, double y_lo, double y_hi) {
  if (!(y_lo > 0.0 && y_hi > y_lo)) fail(ErrorKind::domain, "tabulated cutoff: need 0 < y_lo < y_hi");
  u_lo_ = std::log(y_lo);
  const auto pieces = static_cast<std::size_t>(std::ceil((std::log(y_hi) - u_lo_) / piece_));
  coeffs_.resize(pieces);
  std::vector<cplx> values(kChebNodes);
  for (std::size_t p = 0; p < pieces; ++p) {
    const double mid = u_lo_ + (static_cast<double>(p) + 0.5) * piece_;
    for (int k = 0; k < kChebNodes; ++k) {
      const double x = std::cos(kPi * (k + 0.5) / kChebNodes);
      values[static_cast<std::size_t>(k)] = kernel(std::exp(mid + 0.5 * piece_ * x));
    }
    auto& c = coeffs_[p];
    c.assign(kChebNodes, cplx(0.0, 0.0));
    for (int j = 0; j < kChebNodes; ++j) {
      cplx acc(0.0, 0.0);
      for (int k = 0; k < kChebNodes; ++k) acc += values[static_cast<std::size_t>(k)] * std::cos(kPi * j * (k + 0.5) / kChebNodes);
      c[static_cast<std::size_t>(j)] = acc * (2.0 / kChebNodes);
    }
    c[0] *= 0.5;
  }
}

cplx TabulatedCutoff::operator()(double y) const {
  const double u = std::log(y);
  const double pos = (u - u_lo_) / piece_;
  if (!(pos >= -1e-9) || pos > static_cast<double>(coeffs_.size()) + 1e-9) {
    fail(ErrorKind::domain, "tabulated cutoff: argument outside the tabulated range");
  }
  const auto p = std::min(coeffs_.size() - 1, static_cast<std::size_t>(std::max(0.0, std::floor(pos))));
  const double x = 2.0 * (pos - static_cast<double>(p)) - 1.0;
  const auto& c = coeffs_[p];
  cplx b1(0.0, 0.0), b2(0.0, 0.0);
  for (int j = kChebNodes - 1; j >= 1; --j) {
    const cplx b0 = 2.0 * x * b1 - b2 + c[static_cast<std::size_t>(j)];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

cplx afe_cutoff(const RepDescriptor& rep, int parity, const AFEConfig& cfg, double y) {
  return CutoffKernel(rep, parity, cfg)(y);
}

CentralValue central_value(const RepDescriptor& rep, const DirichletChar& chi, const AFEConfig& cfg) {
  cfg.validate();
  const DirichletChar star = arith::inducing_primitive(chi);
  const int parity = star.parity;
  const double C = analytic_conductor(rep, star.modulus, parity);
  const double sqrtC = std::sqrt(C);

  AFEConfig wide = cfg;
  wide.kernel_width = 2.0 * cfg.kernel_width;
  const CutoffKernel narrow_kernel(rep, parity, cfg);
  const CutoffKernel wide_kernel(rep, parity, wide);
  const double X = cfg.cutoff_multiplier;
  // Second cutoff scale used to pin down the root number.
  const double X2 = kSecondScale * X;
  // Truncate once the estimated tail sqrt(scale y) |V(y)| of the longest sum is negligible.
  const double scale = X2 * sqrtC;
  const double y_max = std::max(narrow_kernel.decay_point(kTailTolerance, 0.5, scale),
                                wide_kernel.decay_point(kTailTolerance, 0.5, scale));
  const auto M = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(y_max * scale)));
  const CoeffTable table = arith::coeff_from_satake(rep, M);
  const double y_lo = 0.5 * std::min(1.0 / scale, X / sqrtC);
  const double y_hi = 1.1 * y_max;
  const TabulatedCutoff narrow(narrow_kernel, y_lo, y_hi);
  const TabulatedCutoff wide_tab(wide_kernel, y_lo, y_hi);

  // Four configurations: (w, X), (2w, X), (w, X2), (2w, X2).
  const SumPair sums[4] = {
      afe_sums(table, star, narrow, sqrtC, X, y_max),
      afe_sums(table, star, wide_tab, sqrtC, X, y_max),
      afe_sums(table, star, narrow, sqrtC, X2, y_max),
      afe_sums(table, star, wide_tab, sqrtC, X2, y_max),
  };
  // Every configuration must give the same A + eps B; fit eps to the differences.
  cplx num(0.0, 0.0);
  double den = 0.0;
  for (int i = 1; i < 4; ++i) {
    const cplx dA = sums[i].A - sums[0].A;
    const cplx dB = sums[i].B - sums[0].B;
    num += std::conj(dB) * dA;
    den += std::norm(dB);
  }
  if (!(den > 0.0) || std::abs(num) == 0.0) {
    fail(ErrorKind::degenerate, "central_value: kernel variations do not determine the root number");
  }
  const cplx eps_raw = -num / den;
  const cplx eps = eps_raw / std::abs(eps_raw);

  CentralValue out;
  out.epsilon = eps;
  out.conductor = C;
  out.terms = table.bound();
  cplx values[4];
  for (int i = 0; i < 4; ++i) values[i] = sums[i].A + eps * sums[i].B;
  out.value = values[0];
  for (int i = 1; i < 4; ++i) out.consistency_residual = std::max(out.consistency_residual, std::abs(values[i] - values[0]));

  // Restore the Euler factors at primes dividing q but not the primitive modulus.
  for (std::int64_t p : arith::primes_up_to(chi.modulus)) {
    if (chi.modulus % p != 0 || star.modulus % p == 0) continue;
    const auto local = rep.satake_source(p);
    cplx factor(1.0, 0.0);
    for (const cplx& a : local.params) factor *= 1.0 - a * star(p) / std::sqrt(static_cast<double>(p));
    out.value *= factor;
  }

  const cplx g = arith::gauss_sum(star);
  out.gauss_deviation = std::abs(eps - g * g / static_cast<double>(star.modulus));
  out.twisted = TwistedL{rep, chi, C, eps};
  return out;
}

SeriesValue dirichlet_series(const CoeffTable& table, const DirichletChar& chi, cplx s, std::int64_t M) {
  if (!(s.real() > 1.0)) fail(ErrorKind::domain, "dirichlet_series: the series diverges for Re s <= 1");
  if (M < 1) fail(ErrorKind::domain, "dirichlet_series: M must be >= 1");
  if (M > table.bound()) fail(ErrorKind::coverage, "dirichlet_series: M exceeds table bound");
  SeriesValue out;
  out.value = deterministic_sum(static_cast<std::size_t>(M), [&](std::size_t i) {
    const auto m = static_cast<std::int64_t>(i) + 1;
    return table[m] * chi(m) * std::exp(-s * std::log(static_cast<double>(m)));
  });
  out.growth_exponent = arith::empirical_growth_exponent(table, M);
  const double gap = s.real() - 1.0 - out.growth_exponent;
  out.tail_bound = gap > 0.0 ? std::pow(static_cast<double>(M), -gap) / gap : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace scp::lfunc
