#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "scp/amplifier.hpp"
#include "scp/errors.hpp"

using namespace scp;
using amplifier::cplx;

namespace {

shifted::WeightFn bump(double width = 1.0) { return {shifted::WeightFamily::compact_bump, 1.0, width}; }

amplifier::AmplifierSpec make_spec(std::int64_t q, std::int64_t idx, double L, double Y, cplx w = {0.0, 0.0}) {
  amplifier::AmplifierSpec spec;
  spec.q = q;
  spec.chi_index = idx;
  spec.L = L;
  spec.Y = Y;
  spec.w = w;
  spec.weight = bump();
  return spec;
}

}  // namespace

TEST(AmplifierPrimes, Examples) {
  EXPECT_EQ(amplifier::amplifier_primes(10.0, 5), (std::vector<std::int64_t>{11, 13, 17, 19}));
  EXPECT_EQ(amplifier::amplifier_primes(2.0, 2), (std::vector<std::int64_t>{3}));
  EXPECT_EQ(amplifier::amplifier_primes(10.0, 11), (std::vector<std::int64_t>{13, 17, 19}));
  EXPECT_THROW(amplifier::amplifier_primes(1.5, 5), Error);
}

TEST(ScriptL, TermOracle) {
  const auto table = arith::delta_coefficients(1000);
  const auto xi = arith::dirichlet_char(5, 2);
  const auto spec = make_spec(5, 2, 10.0, 200.0, {0.0, 0.5});
  cplx expect = 0.0;
  for (std::int64_t g = 1; g <= 1000; ++g) {
    const double y = static_cast<double>(g) / spec.Y;
    const double w = spec.weight(y);
    if (w == 0.0) continue;
    expect += table[g] * double(oracle::legendre(g, 5)) / std::sqrt(static_cast<double>(g)) * w *
              std::exp(-spec.w * std::log(y));
  }
  const cplx got = amplifier::script_L(table, xi, spec);
  EXPECT_LE(std::abs(got - expect), 1e-13 * std::abs(expect));
}

TEST(ScriptL, NarrowBumpPhaseOnly) {
  const auto table = arith::delta_coefficients(1000);
  const auto xi = arith::dirichlet_char(5, 2);
  auto a = make_spec(5, 2, 10.0, 201.0);
  a.weight = bump(1e-6);
  auto b = a;
  b.w = {0.0, 0.5};
  const cplx la = amplifier::script_L(table, xi, a);
  const cplx lb = amplifier::script_L(table, xi, b);
  // Only g = 201 survives; chi_5(201) = 1.
  EXPECT_NEAR(std::abs(la - table[201] / std::sqrt(201.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(la), std::abs(lb), 1e-15);
}

TEST(ScriptL, SingleCoefficientTable) {
  std::vector<cplx> v(400, 0.0);
  v[199] = 3.0;  // c(200) = 3
  const arith::CoeffTable spike("spike", 2, v);
  const auto spec = make_spec(7, 0, 10.0, 200.0);
  EXPECT_NEAR(std::abs(amplifier::script_L(spike, arith::dirichlet_char(7, 0), spec) - 3.0 / std::sqrt(200.0)), 0.0,
              1e-15);
  EXPECT_THROW(amplifier::script_L(spike, arith::dirichlet_char(7, 0), make_spec(7, 0, 10.0, 300.0)), Error);
}

TEST(MomentS, LowerBoundAndSize) {
  const auto table = arith::delta_coefficients(400);
  const auto m = amplifier::moment_S(table, make_spec(5, 2, 10.0, 200.0, {0.0, 1.0}));
  EXPECT_EQ(m.amplifier_size, 4u);
  EXPECT_NEAR(m.lower_bound, 16.0 * std::norm(m.L_chi), 1e-14 * m.lower_bound);
  EXPECT_GE(m.S - m.lower_bound, -1e-12 * m.S);
  for (std::int64_t q : {3, 7, 9, 11, 13}) {
    for (std::int64_t idx = 0; idx < arith::euler_phi(q); ++idx) {
      for (double L : {5.0, 10.0, 20.0}) {
        const auto r = amplifier::moment_S(table, make_spec(q, idx, L, 200.0, {0.0, -0.3}));
        EXPECT_GE(r.S - r.lower_bound, -1e-12 * r.S) << q << " " << idx << " " << L;
      }
    }
  }
}

TEST(MomentS, HandEnumerationModThree) {
  std::vector<cplx> v(400, 0.0);
  v[199] = 1.0;  // single coefficient at g = 200 = Y
  const arith::CoeffTable spike("spike", 2, v);
  for (std::int64_t idx : {0, 1}) {
    const auto m = amplifier::moment_S(spike, make_spec(3, idx, 10.0, 200.0));
    // chi mod 3 is principal or the Legendre symbol; both take the value 1 or -1 at 200 = 2 mod 3.
    double expect = 0.0;
    for (int xi_is_legendre : {0, 1}) {
      double amp = 0.0;
      for (std::int64_t l : {11, 13, 17, 19}) {
        const int xi = xi_is_legendre ? oracle::legendre(l, 3) : 1;
        const int chi = idx == 1 ? oracle::legendre(l, 3) : 1;
        amp += xi * chi;
      }
      const double value_at_200 = xi_is_legendre ? oracle::legendre(200, 3) : 1.0;
      expect += amp * amp * value_at_200 * value_at_200 / 200.0;
    }
    EXPECT_NEAR(m.S, expect, 1e-15);
    EXPECT_NEAR(m.S, 16.0 / 200.0, 1e-15);
  }
}

TEST(Plancherel, Examples) {
  const auto single = amplifier::plancherel_check(7, 3, {{11, cplx(2.0, -1.0)}});
  EXPECT_NEAR(single.lhs, 6.0 * 5.0, 1e-12);
  EXPECT_NEAR(single.rhs, 6.0 * 5.0, 1e-12);
  const auto pair = amplifier::plancherel_check(7, 2, {{2, cplx(1.0, 0.0)}, {3, cplx(0.0, 1.0)}});
  EXPECT_NEAR(pair.lhs, pair.rhs, 1e-12);
  EXPECT_NEAR(pair.rhs, 6.0 * 2.0, 1e-12);
  EXPECT_THROW(amplifier::plancherel_check(7, 2, {{14, cplx(1.0, 0.0)}}), Error);
}

TEST(Plancherel, RandomInnerValues) {
  std::mt19937_64 rng(31337);
  std::normal_distribution<double> g(0.0, 1.0);
  for (std::int64_t q : {7, 9, 25, 49, 97, 101}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::map<std::int64_t, cplx> inner;
      for (std::int64_t l = 1; l < 300; ++l) {
        if (oracle::gcd(l, q) == 1 && std::uniform_int_distribution<int>(0, 9)(rng) == 0) inner[l] = {g(rng), g(rng)};
      }
      const std::int64_t idx = std::uniform_int_distribution<std::int64_t>(0, arith::euler_phi(q) - 1)(rng);
      const auto pc = amplifier::plancherel_check(q, idx, inner);
      EXPECT_LE(std::fabs(pc.lhs - pc.rhs), 1e-12 * std::max(1.0, pc.rhs)) << q;
    }
  }
}

TEST(Diagonal, EmptyAmplifierGivesZero) {
  const auto table = arith::delta_coefficients(2000);
  // [2.4, 4.8] holds the single prime 3, which divides q = 3.
  const auto d = amplifier::diagonal_estimate(table, 3, 0, 2.4, 500.0, bump());
  EXPECT_EQ(d.amplifier_size, 0u);
  EXPECT_EQ(d.diagonal, 0.0);
  EXPECT_EQ(d.ratio, 0.0);
}

TEST(Diagonal, StableAcrossYAndDecreasingInL) {
  const auto table = arith::delta_coefficients(5000);
  std::vector<double> ratios;
  for (double Y : {250.0, 500.0, 1000.0}) {
    const auto d = amplifier::diagonal_estimate(table, 5, 2, 10.0, Y, bump());
    EXPECT_TRUE(std::isfinite(d.ratio));
    EXPECT_GT(d.ratio, 0.0);
    EXPECT_LE(d.diagonal, d.majorant + 1e-12);
    ratios.push_back(d.ratio);
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  EXPECT_LE(*hi / *lo, 4.0);  // within a factor 2 either way of the middle value
  EXPECT_LE(ratios[0] / ratios[1], 2.0);
  EXPECT_LE(ratios[2] / ratios[1], 2.0);
  EXPECT_GE(ratios[0] / ratios[1], 0.5);
  EXPECT_GE(ratios[2] / ratios[1], 0.5);

  const auto at20 = amplifier::diagonal_estimate(table, 5, 2, 20.0, 500.0, bump());
  const auto at40 = amplifier::diagonal_estimate(table, 5, 2, 40.0, 500.0, bump());
  EXPECT_EQ(at20.amplifier_size, 4u);
  EXPECT_EQ(at40.amplifier_size, 10u);
  EXPECT_LT(at40.ratio, at20.ratio);
}

TEST(Exponents, Examples) {
  const double t = 7.0 / 64.0;
  EXPECT_DOUBLE_EQ(amplifier::exponent_calculator({4, t, 0.0}).e_final, 0.609375);
  const auto sc = amplifier::exponent_calculator({3, t, 0.25 - t / 2.0});
  EXPECT_NEAR(sc.e_diag, 3.0 / 8.0 + t / 4.0, 1e-15);
  const double quoted = (1.0 - 6.0 * t) / (14.0 - 4.0 * t);
  EXPECT_NEAR(quoted, 0.0253456, 1e-7);
  const auto cb = amplifier::exponent_calculator({3, t, quoted});
  EXPECT_NEAR(cb.e_diag, (13.0 + 2.0 * t) / (2.0 * (14.0 - 4.0 * t)), 1e-15);
  EXPECT_NEAR(cb.e_diag, 0.4873272, 1e-7);
  for (int n : {2, 3, 4, 7}) EXPECT_DOUBLE_EQ(amplifier::exponent_calculator({n, 0.0, 0.0}).e_offdiag, n / 8.0);
}

TEST(Exponents, PiecewiseLinearShape) {
  for (int n : {2, 3}) {
    const double t = 7.0 / 64.0;
    const auto br = amplifier::balance_report(n, t);
    EXPECT_NEAR(br.at_u_star.e_diag, br.at_u_star.e_offdiag, 1e-15);
    double prev = INFINITY;
    for (double u = 0.0; u <= 1.0; u += 1.0 / 256.0) {
      const double e = amplifier::exponent_calculator({n, t, u}).e_final;
      if (u <= br.u_star) {
        EXPECT_LE(e, prev + 1e-15);
      } else {
        EXPECT_GE(e, prev - 1e-15);
      }
      prev = e;
    }
  }
}

TEST(Balance, ReportContents) {
  const double t = 7.0 / 64.0;
  const auto three = amplifier::balance_report(3, t);
  ASSERT_TRUE(three.has_quoted_u);
  EXPECT_NEAR(three.quoted_u, (1.0 - 6.0 * t) / (14.0 - 4.0 * t), 1e-15);
  EXPECT_NEAR(three.u_star, 0.023810, 1e-6);
  EXPECT_EQ(three.quoted_u_matches, std::fabs(three.quoted_u - three.u_star) <= 1e-12);
  EXPECT_FALSE(three.clamped);
  EXPECT_DOUBLE_EQ(three.convexity_exponent, 0.75);

  for (int n : {4, 5, 8}) {
    const auto r = amplifier::balance_report(n, t);
    EXPECT_TRUE(r.clamped);
    EXPECT_EQ(r.u_star, 0.0);
    EXPECT_DOUBLE_EQ(r.at_u_star.e_final, (n / 4.0) * (0.5 + t));
    EXPECT_FALSE(r.has_quoted_u);
  }
}

TEST(Validation, RejectsOutOfRangeInputs) {
  EXPECT_THROW(amplifier::exponent_calculator({1, 0.1, 0.0}), Error);
  EXPECT_THROW(amplifier::exponent_calculator({3, 0.6, 0.0}), Error);
  EXPECT_THROW(amplifier::exponent_calculator({3, 0.1, 1.5}), Error);
  EXPECT_THROW(make_spec(5, 0, 10.0, 100.0, {0.2, 0.0}).validate(), Error);
  EXPECT_THROW(make_spec(101, 0, 3.0, 100.0).validate(), Error);
  EXPECT_NO_THROW(make_spec(101, 0, 5.0, 100.0).validate());
}
