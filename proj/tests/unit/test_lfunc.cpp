#include <gtest/gtest.h>

#include "oracles.hpp"
#include "scp/errors.hpp"
#include "scp/lfunc.hpp"
#include "scp/special.hpp"

using namespace scp;
using lfunc::cplx;

namespace {

arith::RepDescriptor flat_rep(int n) {
  arith::RepDescriptor rep = arith::formal_ones_rep();
  rep.name = "flat";
  rep.degree = n;
  rep.arch_params.assign(static_cast<std::size_t>(n), cplx(0.0, 0.0));
  return rep;
}

// Dirichlet-eta route to zeta(1/2): repeated averaging of alternating partial sums.
double zeta_half_oracle() {
  std::vector<double> partial;
  double acc = 0.0;
  for (int n = 1; n <= 60; ++n) {
    acc += (n % 2 == 1 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(n));
    partial.push_back(acc);
  }
  for (int level = 0; level < 40; ++level) {
    for (std::size_t i = 0; i + 1 < partial.size(); ++i) partial[i] = 0.5 * (partial[i] + partial[i + 1]);
    partial.pop_back();
  }
  return partial.back() / (1.0 - std::sqrt(2.0));
}

}  // namespace

TEST(GammaFactor, Examples) {
  const auto delta = arith::delta_rep(10);
  const cplx g = lfunc::gamma_factor(delta, 1, 0.5);
  EXPECT_LE(std::abs(g - special::gamma_r(6.0) * special::gamma_r(7.0)), 1e-15 * std::abs(g));
  // Gamma_R(6) = pi^-3 Gamma(3) = 2 / pi^3, Gamma_R(7) = pi^-3.5 Gamma(3.5).
  const double direct = 2.0 / std::pow(oracle::kPi, 3.0) * std::pow(oracle::kPi, -3.5) * std::tgamma(3.5);
  EXPECT_NEAR(g.real(), direct, 1e-13 * direct);
  EXPECT_NEAR(std::abs(lfunc::gamma_factor(flat_rep(2), 1, 1.0) - 1.0), 0.0, 1e-14);
  try {
    lfunc::gamma_factor(delta, -1, 5.5);
    ADD_FAILURE() << "expected a pole error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::pole);
  }
}

TEST(AnalyticConductor, Examples) {
  const auto delta = arith::delta_rep(10);
  const double pi2 = oracle::kPi * oracle::kPi;
  EXPECT_NEAR(lfunc::analytic_conductor(delta, 5, 1), 25.0 * 9.0 * 12.25 / pi2, 1e-12);
  for (int n : {1, 2, 3}) {
    EXPECT_NEAR(lfunc::analytic_conductor(flat_rep(n), 1, 1), std::pow(oracle::kPi, -n) * std::pow(1.0 / 16.0, n),
                1e-16);
  }
  for (std::int64_t q : {2, 3, 7, 11}) {
    EXPECT_DOUBLE_EQ(lfunc::analytic_conductor(delta, 2 * q, 1), 4.0 * lfunc::analytic_conductor(delta, q, 1));
    const auto parts = lfunc::analytic_conductor_parts(delta, q, -1);
    EXPECT_EQ(parts.arithmetic, q * q);
  }
}

TEST(ConvexityBound, ValuesAndMonotonicity) {
  const auto delta = arith::delta_rep(10);
  const auto chi = arith::dirichlet_char(5, 2);
  EXPECT_NEAR(lfunc::convexity_bound(delta, chi, 0.01), std::pow(25.0 * 9.0 * 12.25 / (oracle::kPi * oracle::kPi), 0.26),
              1e-12);
  double prev = 0.0;
  for (std::int64_t q : {3, 5, 7, 11, 13, 17}) {
    const double b = lfunc::convexity_bound(delta, arith::dirichlet_char(q, 1), 0.01);
    EXPECT_GT(b, prev);
    prev = b;
  }
  const double C = lfunc::analytic_conductor(delta, 5, 1);
  EXPECT_NEAR(lfunc::convexity_bound(delta, chi, 1e-12), std::pow(C, 0.25), 1e-9);
}

TEST(AfeCutoff, DecayClauses) {
  const auto delta = arith::delta_rep(10);
  lfunc::AFEConfig wide;
  wide.kernel_width = 2.0;
  for (double y = 1e-6; y <= 1e-4 * 1.0001; y *= 10.0) {
    EXPECT_LE(std::abs(lfunc::afe_cutoff(delta, 1, wide, y) - 1.0), 0.02) << y;
  }
  for (double y = 10.0; y <= 1000.0; y *= 1.5) {
    EXPECT_LE(std::abs(lfunc::afe_cutoff(delta, 1, wide, y)), std::pow(y, -3.0)) << y;
  }
  EXPECT_LE(std::abs(lfunc::afe_cutoff(delta, 1, wide, 100.0)), 1e-6);

  const auto sym2 = arith::sym_power_rep(delta, 2);
  const lfunc::AFEConfig unit;
  EXPECT_LE(std::abs(lfunc::afe_cutoff(sym2, 1, unit, 1e-4) - 1.0), 0.02);
  for (double y = 10.0; y <= 1000.0; y *= 1.5) {
    EXPECT_LE(std::abs(lfunc::afe_cutoff(sym2, 1, unit, y)), std::pow(y, -3.0)) << y;
  }
  EXPECT_THROW(lfunc::afe_cutoff(delta, 1, unit, 0.0), Error);
}

TEST(AfeCutoff, ContourShiftInvariance) {
  const auto delta = arith::delta_rep(10);
  for (int parity : {1}) {
    lfunc::AFEConfig a, b;
    a.contour_sigma = 1.5;
    b.contour_sigma = 2.5;
    for (double y : {1e-3, 0.1, 1.0, 3.0, 10.0}) {
      EXPECT_LE(std::abs(lfunc::afe_cutoff(delta, parity, a, y) - lfunc::afe_cutoff(delta, parity, b, y)), 1e-8) << y;
    }
  }
}

TEST(CentralValue, EisensteinOracle) {
  const double z = zeta_half_oracle();
  EXPECT_NEAR(z, -1.4603545, 1e-7);
  const auto cv = lfunc::central_value(arith::formal_ones_rep(), arith::dirichlet_char(1, 0), {});
  EXPECT_LE(std::abs(cv.value - z * z), 1e-4);
}

TEST(CentralValue, PrincipalCharacterRemovesEulerFactors) {
  const auto ones = arith::formal_ones_rep();
  const auto base = lfunc::central_value(ones, arith::dirichlet_char(1, 0), {});
  for (std::int64_t q : {5, 7, 9}) {
    const auto twisted = lfunc::central_value(ones, arith::dirichlet_char(q, 0), {});
    std::int64_t p = q;
    for (std::int64_t d = 2; d <= q; ++d) {
      if (q % d == 0) {
        p = d;
        break;
      }
    }
    const double local = 1.0 - 1.0 / std::sqrt(static_cast<double>(p));
    EXPECT_LE(std::abs(twisted.value - base.value * local * local), 1e-6) << q;
  }
}

TEST(CentralValue, DeltaTwistIsRealAndRobust) {
  const auto rep = arith::delta_rep(520000);
  const auto chi = arith::dirichlet_char(5, 2);
  lfunc::AFEConfig cfg;
  const auto cv = lfunc::central_value(rep, chi, cfg);
  EXPECT_LE(std::fabs(cv.value.imag()), 1e-8);
  EXPECT_NEAR(std::abs(cv.epsilon), 1.0, 1e-12);
  EXPECT_LE(cv.consistency_residual, 1e-6);
  EXPECT_NEAR(cv.conductor, lfunc::analytic_conductor(rep, 5, 1), 1e-9);
  ASSERT_TRUE(cv.twisted.epsilon.has_value());
  EXPECT_NEAR(std::abs(*cv.twisted.epsilon), 1.0, 1e-12);
}

TEST(CentralValue, CoverageErrorForShortSatakeSource) {
  try {
    lfunc::central_value(arith::delta_rep(100), arith::dirichlet_char(5, 2), {});
    ADD_FAILURE() << "expected a coverage error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::coverage);
  }
}

TEST(DirichletSeries, ZetaSquared) {
  const auto table = arith::coeff_from_satake(arith::formal_ones_rep(), 100000);
  for (std::int64_t m : {1, 12, 360, 99991}) EXPECT_EQ(table[m].real(), double(oracle::divisor_count(m)));
  const auto sv = lfunc::dirichlet_series(table, arith::dirichlet_char(1, 0), 2.0, 100000);
  const double target = std::pow(oracle::kPi, 4) / 36.0;
  EXPECT_NEAR(target, 2.7058081, 1e-7);
  EXPECT_LE(std::abs(sv.value - target), sv.tail_bound);
  EXPECT_LT(sv.tail_bound, 0.05);
}

TEST(DirichletSeries, DeltaMatchesEulerProduct) {
  const std::int64_t M = 100000;
  const auto table = arith::delta_coefficients(M);
  const cplx s = 2.5;
  const auto sv = lfunc::dirichlet_series(table, arith::dirichlet_char(1, 0), s, M);
  cplx euler = 1.0;
  for (std::int64_t p : arith::primes_up_to(M)) {
    const cplx x = std::pow(static_cast<double>(p), -s);
    euler /= 1.0 - table[p] * x + x * x;
  }
  EXPECT_LE(std::abs(sv.value - euler), sv.tail_bound);
  EXPECT_LT(sv.tail_bound, 1e-4);
}

TEST(DirichletSeries, CharacterKillsMultiplesOfModulus) {
  const std::int64_t M = 5000;
  const auto table = arith::delta_coefficients(M);
  const auto chi = arith::dirichlet_char(5, 1);
  const cplx s(1.8, 0.7);
  cplx direct = 0.0;
  for (std::int64_t m = 1; m <= M; ++m) {
    if (m % 5 == 0) continue;
    direct += table[m] * chi(m) * std::exp(-s * std::log(static_cast<double>(m)));
  }
  const auto sv = lfunc::dirichlet_series(table, chi, s, M);
  EXPECT_LE(std::abs(sv.value - direct), 1e-12 * std::abs(direct));
  EXPECT_THROW(lfunc::dirichlet_series(table, chi, 1.0, M), Error);
  EXPECT_THROW(lfunc::dirichlet_series(table, chi, cplx(0.7, 3.0), M), Error);
  EXPECT_THROW(lfunc::dirichlet_series(table, chi, 2.0, M + 1), Error);
}
