#include "scp/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "scp/amplifier.hpp"
#include "scp/arith.hpp"
#include "scp/errors.hpp"
#include "scp/lfunc.hpp"
#include "scp/mellin.hpp"
#include "scp/quadforms.hpp"
#include "scp/shifted.hpp"
#include "scp/special.hpp"
#include "scp/summation.hpp"

namespace scp::acceptance {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Oracles.  Each one takes a route that shares no code with the library
// function it is compared against.

// log Gamma by upward shift and the Stirling series; valid for Re z > 0.
cplx oracle_log_gamma(cplx z) {
  cplx shift{0.0, 0.0};
  while (std::abs(z) < 20.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const cplx iz = 1.0 / z;
  const cplx iz2 = iz * iz;
  const cplx series = iz * (1.0 / 12.0 + iz2 * (-1.0 / 360.0 + iz2 * (1.0 / 1260.0 + iz2 * (-1.0 / 1680.0 +
                                                                                     iz2 * (1.0 / 1188.0)))));
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift;
}

cplx oracle_gamma(cplx z) { return std::exp(oracle_log_gamma(z)); }

// zeta(1/2) from the alternating eta series, accelerated by repeated
// averaging of consecutive partial sums.
double oracle_zeta_half() {
  constexpr int kTerms = 60;
  std::vector<double> partial(kTerms);
  double acc = 0.0;
  for (int n = 1; n <= kTerms; ++n) {
    acc += (n % 2 == 1 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(n));
    partial[static_cast<std::size_t>(n - 1)] = acc;
  }
  for (int level = 0; level < 40; ++level) {
    for (std::size_t i = 0; i + 1 < partial.size(); ++i) partial[i] = 0.5 * (partial[i] + partial[i + 1]);
    partial.pop_back();
  }
  const double eta = partial.back();
  return eta / (1.0 - std::sqrt(2.0));
}

// tau(1..N) by expanding prod (1 - x^n)^24 one factor at a time in plain
// 64-bit arithmetic.  Intermediate values stay far below 2^63 for N <= 300.
std::vector<std::int64_t> oracle_tau(int N) {
  std::vector<std::int64_t> poly(static_cast<std::size_t>(N), 0);
  poly[0] = 1;
  for (int n = 1; n < N; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (int i = N - 1; i >= n; --i) poly[static_cast<std::size_t>(i)] -= poly[static_cast<std::size_t>(i - n)];
    }
  }
  std::vector<std::int64_t> tau(static_cast<std::size_t>(N) + 1, 0);
  for (int m = 1; m <= N; ++m) tau[static_cast<std::size_t>(m)] = poly[static_cast<std::size_t>(m - 1)];
  return tau;
}

// Moduli handled by the character code: 1, 2, 4 and odd prime powers.
bool oracle_supported_modulus(std::int64_t q) {
  if (q <= 4) return true;
  std::int64_t m = q;
  if (m % 2 == 0) return false;
  std::int64_t p = 3;
  while (m % p != 0) p += 2;
  while (m % p == 0) m /= p;
  return m == 1;
}

// Pair enumeration for the linear shifted sum: every (g1, g2) in the two
// weight supports, filtered by the linear constraint afterwards.
cplx oracle_linear_pairs(const arith::CoeffTable& A, const arith::CoeffTable& B, std::int64_t l1, std::int64_t l2,
                         std::int64_t alpha, double Y, const shifted::WeightFn& W) {
  const auto lo = [&](std::int64_t l) { return std::max<std::int64_t>(1, static_cast<std::int64_t>(Y / (2.0 * l))); };
  const auto hi = [&](std::int64_t l) { return static_cast<std::int64_t>(2.0 * Y / l) + 1; };
  ComplexCompensatedSum acc;
  for (std::int64_t g1 = lo(l1); g1 <= hi(l1); ++g1) {
    const double w1 = W(static_cast<double>(g1 * l1) / Y);
    if (w1 == 0.0) continue;
    for (std::int64_t g2 = lo(l2); g2 <= hi(l2); ++g2) {
      if (l1 * g1 - l2 * g2 != alpha) continue;
      const double w2 = W(static_cast<double>(g2 * l2) / Y);
      if (w2 == 0.0) continue;
      acc.add(A[g1] * std::conj(B[g2]) * (w1 * w2 / std::sqrt(static_cast<double>(g1 * g2))));
    }
  }
  return acc.value();
}

// ---------------------------------------------------------------------------

double rel_err(cplx a, cplx b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string fixed(double x, int digits = 10) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      failures.push_back(what);
    }
  }
};

shifted::WeightFn unit_bump() { return {shifted::WeightFamily::compact_bump, 1.0, 1.0}; }

// 1. Whittaker Mellin identity and the closed-form case.
void whittaker_mellin(Outcome& out) {
  using special::WhittakerParams;
  const std::vector<WhittakerParams> params{{0.5, {0.0, 0.0}}, {0.0, {0.3, 0.0}}, {0.0, {0.0, 0.5}}};
  double worst = 0.0;
  double worst_oracle = 0.0;
  for (const auto& wp : params) {
    for (double s : {1.0, 1.5, 2.0}) {
      const cplx lhs = special::whittaker_mellin_lhs(wp, s);
      const cplx rhs = special::whittaker_mellin_rhs(wp, s);
      const cplx oracle = oracle_gamma(0.5 + s + wp.nu) * oracle_gamma(0.5 + s - wp.nu) / oracle_gamma(1.0 + s - wp.kappa);
      worst = std::max(worst, rel_err(lhs, rhs));
      worst_oracle = std::max(worst_oracle, rel_err(rhs, oracle));
    }
  }
  out.require(worst <= 1e-6, "quadrature vs Gamma product");
  out.require(worst_oracle <= 1e-10, "Gamma product vs Stirling oracle");

  // kappa = nu + 1/2: W is y^kappa e^-y/2, and the Mellin integral is
  // Gamma(s + kappa) exactly.
  double closed = 0.0;
  for (double nu : {0.0, 0.25, 0.3}) {
    const WhittakerParams wp{nu + 0.5, {nu, 0.0}};
    for (double y = 0.1; y <= 20.0; y *= 1.3) {
      closed = std::max(closed, rel_err(special::whittaker_w(wp, y), std::pow(y, wp.kappa) * std::exp(-0.5 * y)));
    }
    for (double s : {1.0, 1.5, 2.0}) {
      closed = std::max(closed, rel_err(special::whittaker_mellin_lhs(wp, s), oracle_gamma(s + wp.kappa)));
    }
  }
  out.require(closed <= 1e-10, "closed-form case");
  out.detail << "max rel err " << sci(worst) << " (tol 1e-6), Gamma oracle " << sci(worst_oracle)
             << ", closed form " << sci(closed) << " (tol 1e-10)";
}

// 2. Numeric y-integral vs closed Gamma product.
void mellin_routes(Outcome& out) {
  const std::int64_t M = 2000;
  const auto table = arith::delta_coefficients(M);
  mellin::MellinSpec spec;
  spec.n = 2;
  spec.f = quadforms::x_squared();
  spec.p = quadforms::SphericalPoly::constant(1);
  spec.kappa = 0.5;
  spec.nu = 0.0;
  spec.s = 3.0;
  const auto numeric = mellin::constant_coeff_mellin_numeric(table, spec, M);
  const auto closed = mellin::constant_coeff_mellin_closed(table, spec, M, mellin::MellinNormalization::derived);
  const auto stated = mellin::constant_coeff_mellin_closed(table, spec, M, mellin::MellinNormalization::stated);

  // Direct oracle: f = x^2 has r(a^2) = 2 for a >= 1.
  const cplx w = spec.w();
  const cplx E = spec.E();
  const cplx pref = oracle_gamma(0.5 + w) * oracle_gamma(0.5 + w) / oracle_gamma(1.0 + w - 0.5);
  ComplexCompensatedSum direct;
  for (std::int64_t a = 1; a * a <= M; ++a) {
    const double m = static_cast<double>(a * a);
    direct.add(2.0 * table[a * a] * std::exp(-(E + w) * std::log(m)) * std::exp(-w * std::log(4.0 * kPi)));
  }
  const cplx oracle = pref * direct.value();

  const double e = rel_err(numeric.value, closed.value);
  const double eo = rel_err(closed.value, oracle);
  out.require(e <= 1e-6, "numeric vs closed");
  out.require(eo <= 1e-10, "closed vs direct oracle");
  out.detail << "numeric " << numeric.value.real() << ", closed " << closed.value.real() << ", rel err " << sci(e)
             << " (tol 1e-6), oracle " << sci(eo) << "; alternative normalization gives " << stated.value.real();
}

// 3. Unfolding identity, three ways.
void unfolding(Outcome& out) {
  const std::int64_t trunc = 2000;
  const std::int64_t N = 8192;
  const double Y = 100.0;
  const auto W = unit_bump();
  const auto delta = arith::delta_coefficients(trunc);
  const auto sym2 = arith::coeff_from_satake(arith::sym_power_rep(arith::delta_rep(trunc), 2), trunc);
  struct Case {
    const arith::CoeffTable* table;
    int n;
    const char* name;
  };
  const std::vector<Case> cases{{&delta, 2, "Delta"}, {&sym2, 3, "Sym2"}};
  const std::vector<quadforms::QuadraticForm> forms{quadforms::x_squared(), quadforms::sum_of_two_squares()};
  double worst_conv = 0.0;
  double worst_direct = 0.0;
  int runs = 0;
  for (const auto& c : cases) {
    for (const auto& f : forms) {
      const auto p = quadforms::SphericalPoly::constant(f.k());
      const auto theta = quadforms::theta_coeffs(f, p, trunc);
      const auto G = shifted::theta_series(theta, f.k(), Y);
      for (std::int64_t alpha : {1, 2}) {
        const auto F = shifted::assemble_projected_series(*c.table, c.n, W, Y, trunc, alpha);
        const auto u = shifted::fourier_unfold_check(F, G, alpha, N);
        const auto d = shifted::quad_shift_sum(*c.table, f, p, alpha, Y, W);
        worst_conv = std::max(worst_conv, std::abs(u.lhs - u.rhs) / std::max(1.0, std::abs(u.rhs)));
        worst_direct = std::max(worst_direct, std::abs(u.rhs - d.value) / std::max(1.0, std::abs(d.value)));
        ++runs;
      }
    }
  }
  out.require(worst_conv <= 1e-9, "sampled integral vs convolution");
  out.require(worst_direct <= 1e-9, "convolution vs direct sum");
  out.detail << runs << " configurations, N = " << N << ": integral/convolution " << sci(worst_conv)
             << ", convolution/direct " << sci(worst_direct) << " (tol 1e-9)";
}

// 4. Lattice vs theta route, and congruence scan vs pair enumeration.
void dual_paths(Outcome& out) {
  using quadforms::QuadraticForm;
  using quadforms::SphericalPoly;
  const auto W = unit_bump();
  const auto delta = arith::delta_coefficients(20010);
  struct FormCase {
    QuadraticForm f;
    std::vector<SphericalPoly> polys;
    std::vector<double> Ys;
  };
  const std::vector<FormCase> forms{
      {quadforms::x_squared(), {SphericalPoly::constant(1)}, {100.0, 1000.0, 10000.0}},
      {quadforms::sum_of_two_squares(),
       {SphericalPoly::constant(2), SphericalPoly::parse(2, "1:4,0;-6:2,2;1:0,4")},
       {100.0, 1000.0, 10000.0}},
      {QuadraticForm::parse("2;2 1 2"), {SphericalPoly::constant(2)}, {100.0, 1000.0, 10000.0}},
      {QuadraticForm::parse("3;2 0 0 2 0 2"), {SphericalPoly::constant(3)}, {100.0, 1000.0}},
  };
  double worst_quad = 0.0;
  int quad_runs = 0;
  for (const auto& fc : forms) {
    for (const auto& p : fc.polys) {
      for (double Y : fc.Ys) {
        for (std::int64_t alpha : {1, -1, 2, 5}) {
          const auto lat = shifted::quad_shift_sum(delta, fc.f, p, alpha, Y, W);
          const auto th = shifted::quad_shift_sum_theta(delta, fc.f, p, alpha, Y, W);
          worst_quad = std::max(worst_quad, rel_err(lat.value, th.value));
          ++quad_runs;
        }
      }
    }
  }
  out.require(worst_quad <= 1e-12, "lattice vs theta route");

  const double Y = 200.0;
  const auto sym2 = arith::coeff_from_satake(arith::sym_power_rep(arith::delta_rep(500), 2), 500);
  double worst_lin = 0.0;
  int lin_runs = 0;
  for (std::int64_t l1 = 1; l1 <= 10; ++l1) {
    for (std::int64_t l2 = 1; l2 <= 10; ++l2) {
      for (std::int64_t alpha : {1, -1, 5}) {
        const auto scan = shifted::linear_shift_sum(delta, sym2, l1, l2, alpha, Y, W, W);
        const cplx oracle = oracle_linear_pairs(delta, sym2, l1, l2, alpha, Y, W);
        worst_lin = std::max(worst_lin, rel_err(scan.value, oracle));
        ++lin_runs;
      }
    }
  }
  out.require(worst_lin <= 1e-12, "congruence scan vs pair enumeration");
  out.detail << quad_runs << " quadratic configs, max rel diff " << sci(worst_quad) << "; " << lin_runs
             << " linear configs, max rel diff " << sci(worst_lin) << " (tol 1e-12)";
}

// 5. Central value under four kernel settings, plus the divisor-function check.
void afe_robustness(Outcome& out) {
  const auto rep = arith::delta_rep(520000);
  const auto chi = arith::dirichlet_char(5, 2);
  std::vector<cplx> values;
  double worst_imag = 0.0;
  for (double width : {1.0, 2.0}) {
    for (double mult : {1.0, 2.0}) {
      lfunc::AFEConfig cfg;
      cfg.kernel_width = width;
      cfg.cutoff_multiplier = mult;
      const auto cv = lfunc::central_value(rep, chi, cfg);
      values.push_back(cv.value);
      worst_imag = std::max(worst_imag, std::fabs(cv.value.imag()));
    }
  }
  double spread = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) spread = std::max(spread, std::abs(values[i] - values[j]));
  }
  out.require(spread <= 1e-6, "pairwise agreement");
  out.require(worst_imag <= 1e-8, "self-dual value real");

  const double zeta_half = oracle_zeta_half();
  const auto ones = lfunc::central_value(arith::formal_ones_rep(), arith::dirichlet_char(1, 0), {});
  const double eis = std::abs(ones.value - zeta_half * zeta_half);
  out.require(std::fabs(zeta_half + 1.4603545) <= 1e-7, "eta-series oracle");
  out.require(eis <= 1e-4, "divisor-function value vs zeta(1/2)^2");
  out.detail << "L(1/2) = " << fixed(values[0].real()) << ", spread " << sci(spread) << " (tol 1e-6), |Im| "
             << sci(worst_imag) << "; formal value " << fixed(ones.value.real(), 8) << " vs zeta(1/2)^2 "
             << fixed(zeta_half * zeta_half, 8) << ", diff " << sci(eis) << " (tol 1e-4)";
}

// 6. Analytic conductor scaling and the plug-in value.
void conductor(Outcome& out) {
  const auto delta = arith::delta_rep(100);
  const std::vector<arith::RepDescriptor> reps{delta, arith::sym_power_rep(delta, 2), arith::sym_power_rep(delta, 3)};
  double worst = 0.0;
  for (const auto& rep : reps) {
    const auto base = lfunc::analytic_conductor_parts(rep, 1, 1);
    for (std::int64_t q : {2, 3, 5, 7, 13}) {
      for (int parity : {1, -1}) {
        const auto parts = lfunc::analytic_conductor_parts(rep, q, parity);
        std::int64_t qn = 1;
        for (int i = 0; i < rep.degree; ++i) qn *= q;
        out.require(parts.arithmetic == base.arithmetic * qn, rep.name + " arithmetic part at q=" + std::to_string(q));
        const auto base_parity = lfunc::analytic_conductor_parts(rep, 1, parity);
        worst = std::max(worst, rel_err(parts.value(), base_parity.value() * static_cast<double>(qn)));
      }
    }
  }
  out.require(worst <= 1e-15, "q^n scaling of the full conductor");
  const double value = lfunc::analytic_conductor(delta, 5, 1);
  const double expected = 25.0 * 9.0 * 12.25 / (kPi * kPi);
  const double e = rel_err(value, expected);
  out.require(e <= 1e-12, "Delta q=5 value");
  out.detail << "scaling rel err " << sci(worst) << "; C = " << fixed(value, 12) << " vs " << fixed(expected, 12)
             << ", rel err " << sci(e);
}

// 7. Exponent arithmetic.
void exponents(Outcome& out) {
  const double t = 7.0 / 64.0;
  const auto a = amplifier::exponent_calculator({2, t, 0.25 - t / 2.0});
  const double ea = std::fabs(a.e_diag - (3.0 / 8.0 + t / 4.0));
  const double ub = (1.0 - 6.0 * t) / (14.0 - 4.0 * t);
  const auto b = amplifier::exponent_calculator({3, t, ub});
  const double eb = std::fabs(b.e_diag - (13.0 + 2.0 * t) / (2.0 * (14.0 - 4.0 * t)));
  const auto c = amplifier::exponent_calculator({4, t, 0.0});
  const double ec = std::fabs(c.e_final - 39.0 / 64.0);
  out.require(ea <= 1e-15, "(a) diagonal exponent");
  out.require(eb <= 1e-15, "(b) n=3 exponent");
  out.require(ec <= 1e-15, "(c) n=4 exponent");
  const auto bal = amplifier::balance_report(3, t);
  out.detail << "(a) " << sci(ea) << ", (b) " << sci(eb) << ", (c) " << sci(ec) << "; n=3 off-diagonal at quoted u "
             << fixed(b.e_offdiag, 6) << " vs diagonal " << fixed(b.e_diag, 6) << ", balance point u* "
             << fixed(bal.u_star, 6) << " vs quoted " << fixed(bal.quoted_u, 6);
}

// 8. Plancherel property test and moment lower bound.
void amplifier_bookkeeping(Outcome& out) {
  std::vector<std::int64_t> moduli;
  for (std::int64_t q = 2; q <= 101; ++q) {
    if (oracle_supported_modulus(q)) moduli.push_back(q);
  }
  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t q = moduli[std::uniform_int_distribution<std::size_t>(0, moduli.size() - 1)(rng)];
    const std::int64_t idx = std::uniform_int_distribution<std::int64_t>(0, arith::euler_phi(q) - 1)(rng);
    std::map<std::int64_t, cplx> inner;
    const int count = std::uniform_int_distribution<int>(1, 12)(rng);
    while (static_cast<int>(inner.size()) < count) {
      const std::int64_t l = std::uniform_int_distribution<std::int64_t>(1, 1000)(rng);
      if (std::gcd(l, q) == 1) inner[l] = {gauss(rng), gauss(rng)};
    }
    const auto pc = amplifier::plancherel_check(q, idx, inner);
    worst = std::max(worst, std::fabs(pc.lhs - pc.rhs) / std::max(1.0, pc.rhs));
  }
  out.require(worst <= 1e-10, "Plancherel identity");

  const auto delta = arith::delta_coefficients(400);
  double min_gap = INFINITY;
  for (std::int64_t q : {5, 7, 13}) {
    for (double L : {10.0, 20.0}) {
      for (std::int64_t idx = 0; idx < arith::euler_phi(q); ++idx) {
        amplifier::AmplifierSpec spec;
        spec.q = q;
        spec.chi_index = idx;
        spec.L = L;
        spec.Y = 200.0;
        spec.w = {0.0, 1.0};
        spec.weight = unit_bump();
        const auto m = amplifier::moment_S(delta, spec);
        const double gap = m.S - m.lower_bound;
        out.require(gap >= -1e-12 * m.S, "moment lower bound at q=" + std::to_string(q));
        min_gap = std::min(min_gap, gap / std::max(m.S, 1e-300));
      }
    }
  }
  out.detail << "100 random Plancherel trials, max rel diff " << sci(worst) << " (tol 1e-10); smallest relative "
             << "margin S - bound " << sci(min_gap);
}

// 9. Arithmetic engine invariants.
void arithmetic(Outcome& out) {
  const std::int64_t B = 100000;
  const auto table = arith::delta_coefficients(B);
  const auto tau = oracle_tau(300);
  bool tau_ok = true;
  for (int m = 1; m <= 300; ++m) {
    const double t = static_cast<double>(tau[static_cast<std::size_t>(m)]);
    tau_ok = tau_ok && std::abs(table[m] * std::pow(static_cast<double>(m), 5.5) - t) <= 1e-13 * std::fabs(t);
  }
  out.require(tau_ok, "tau vs product-expansion oracle");

  auto close = [](cplx a, cplx b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); };
  // The table holds tau(m) m^-11/2.
  const auto& c = table.raw();
  std::int64_t pairs = 0;
  bool mult_ok = true;
  for (std::int64_t m = 2; m * m <= B; ++m) {
    for (std::int64_t n = m + 1; m * n <= B; ++n) {
      if (std::gcd(m, n) != 1) continue;
      ++pairs;
      if (!close(c[static_cast<std::size_t>(m * n)], c[static_cast<std::size_t>(m)] * c[static_cast<std::size_t>(n)])) {
        mult_ok = false;
      }
    }
  }
  out.require(mult_ok, "multiplicativity");
  std::int64_t hecke = 0;
  bool hecke_ok = true;
  for (std::int64_t p : arith::primes_up_to(B)) {
    for (std::int64_t pk = p, pk_prev = 1; pk <= B / p; pk_prev = pk, pk *= p) {
      const cplx expect = c[static_cast<std::size_t>(p)] * c[static_cast<std::size_t>(pk)] - c[static_cast<std::size_t>(pk_prev)];
      hecke_ok = hecke_ok && close(c[static_cast<std::size_t>(pk * p)], expect);
      ++hecke;
    }
  }
  out.require(hecke_ok, "Hecke recursion");
  double deligne = 0.0;
  for (std::int64_t p : arith::primes_up_to(10000)) deligne = std::max(deligne, std::abs(c[static_cast<std::size_t>(p)]));
  out.require(deligne <= 2.0 + 1e-9, "Deligne range");

  double orth = 0.0;
  double gauss_dev = 0.0;
  int moduli = 0;
  for (std::int64_t q = 1; q <= 101; ++q) {
    if (!oracle_supported_modulus(q)) continue;
    ++moduli;
    const auto chars = arith::all_characters(q);
    const double phi = static_cast<double>(arith::euler_phi(q));
    for (std::int64_t a = 0; a < q; ++a) {
      for (std::int64_t b = 0; b < q; ++b) {
        const bool units = std::gcd(a, q) == 1 && std::gcd(b, q) == 1;
        cplx s{0.0, 0.0};
        for (const auto& xi : chars) s += xi(a) * std::conj(xi(b));
        orth = std::max(orth, std::abs(s - ((units && a == b) ? phi : 0.0)));
      }
    }
    for (std::size_t i = 0; i < chars.size(); ++i) {
      for (std::size_t j = 0; j < chars.size(); ++j) {
        cplx s{0.0, 0.0};
        for (std::int64_t a = 0; a < q; ++a) s += chars[i](a) * std::conj(chars[j](a));
        orth = std::max(orth, std::abs(s - (i == j ? phi : 0.0)));
      }
      if (chars[i].primitive) {
        gauss_dev = std::max(gauss_dev, std::fabs(std::abs(arith::gauss_sum(chars[i])) - std::sqrt(static_cast<double>(q))));
      }
    }
  }
  out.require(orth <= 1e-12, "character orthogonality");
  out.require(gauss_dev <= 1e-10, "Gauss sum modulus");
  out.detail << pairs << " coprime pairs, " << hecke << " Hecke steps, max |c(p)| " << fixed(deligne, 9)
             << "; " << moduli << " moduli, orthogonality " << sci(orth) << ", Gauss " << sci(gauss_dev);
}

// 10. Growth of the shifted sum against the predicted exponent.
void growth(Outcome& out) {
  const auto table = arith::delta_coefficients(200010);
  const std::vector<double> Ys{1e3, 2e3, 5e3, 1e4, 2e4, 5e4, 1e5};
  const auto points = shifted::growth_experiment(table, quadforms::x_squared(), quadforms::SphericalPoly::constant(1),
                                                 1, Ys, unit_bump());
  std::vector<std::pair<double, double>> vals;
  for (const auto& p : points) vals.emplace_back(p.Y, std::abs(p.value));
  const auto fit = shifted::growth_fit(vals);
  const double predicted = shifted::predicted_exponent(1, 1, 7.0 / 64.0);
  out.require(fit.slope <= predicted + 0.15, "slope within prediction + 0.15");
  out.detail << "slope " << fixed(fit.slope, 4) << " vs prediction " << fixed(predicted, 4) << " + 0.15, fit rms "
             << fixed(fit.residual, 3);
}

// 11. Orthonormality of the normalized Whittaker functions.
void whittaker_orthonormal(Outcome& out) {
  double worst = 0.0;
  for (int k1 : {0, 2, 4}) {
    for (int k2 : {0, 2, 4}) {
      const cplx ip = special::whittaker_star_inner(k1, k2, {0.0, 0.4});
      worst = std::max(worst, std::abs(ip - (k1 == k2 ? 1.0 : 0.0)));
    }
  }
  out.require(worst <= 1e-4, "inner products");
  out.detail << "max |<k1,k2> - delta| " << sci(worst) << " (tol 1e-4)";
}

struct Criterion {
  const char* title;
  double budget;
  void (*run)(Outcome&);
};

const std::vector<Criterion>& registry() {
  static const std::vector<Criterion> all{
      {"Whittaker-Mellin identity", 5.0, whittaker_mellin},
      {"Mellin numeric vs closed route", 30.0, mellin_routes},
      {"unfolding identity three-way", 30.0, unfolding},
      {"dual-path oracle equivalence", 30.0, dual_paths},
      {"AFE kernel robustness", 120.0, afe_robustness},
      {"analytic conductor", 1.0, conductor},
      {"exponent algebra", 1.0, exponents},
      {"amplifier bookkeeping", 60.0, amplifier_bookkeeping},
      {"arithmetic engine", 60.0, arithmetic},
      {"growth experiment", 120.0, growth},
      {"normalized Whittaker orthonormality", 60.0, whittaker_orthonormal},
  };
  return all;
}

}  // namespace

int criterion_count() noexcept { return static_cast<int>(registry().size()); }

CriterionResult run_criterion(int id) {
  if (id < 1 || id > criterion_count()) fail(ErrorKind::domain, "acceptance: no criterion " + std::to_string(id));
  const auto& c = registry()[static_cast<std::size_t>(id - 1)];
  CriterionResult r;
  r.id = id;
  r.title = c.title;
  r.budget_seconds = c.budget;
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.run(out);
  } catch (const Error& e) {
    out.require(false, std::string("with ") + kind_name(e.kind()) + " error: " + e.what());
  } catch (const std::exception& e) {
    out.require(false, std::string("with exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.seconds > r.budget_seconds) out.require(false, "runtime budget " + sci(r.budget_seconds) + " s");
  r.passed = out.ok;
  r.detail = out.detail.str();
  for (std::size_t i = 0; i < out.failures.size(); ++i) {
    r.detail += (i == 0 ? (r.detail.empty() ? "failed: " : " | failed: ") : "; ") + out.failures[i];
  }
  return r;
}

std::vector<CriterionResult> run_all(const std::vector<int>& ids,
                                     const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<int> todo = ids;
  if (todo.empty()) {
    for (int i = 1; i <= criterion_count(); ++i) todo.push_back(i);
  }
  std::vector<CriterionResult> results;
  for (int id : todo) {
    results.push_back(run_criterion(id));
    if (on_result) on_result(results.back());
  }
  return results;
}

std::string format_line(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "[%s] %2d %-38s %7.2fs  ", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(),
                r.seconds);
  return head + r.detail;
}

}  // namespace scp::acceptance
