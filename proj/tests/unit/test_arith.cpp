#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "scp/arith.hpp"
#include "scp/errors.hpp"

using namespace scp;
using arith::cplx;

namespace {

void expect_kind(const std::function<void()>& fn, ErrorKind kind) {
  try {
    fn();
    ADD_FAILURE() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(Tau, MatchesProductExpansionOracle) {
  const auto expect = oracle::tau(400);
  const auto got = arith::ramanujan_tau(400);
  for (int m = 1; m <= 400; ++m) {
    EXPECT_EQ(static_cast<std::int64_t>(got[static_cast<std::size_t>(m)]), expect[static_cast<std::size_t>(m)]) << m;
  }
}

TEST(DeltaCoefficients, Examples) {
  const auto t = arith::delta_coefficients(6);
  EXPECT_EQ(t[1], cplx(1.0, 0.0));
  EXPECT_NEAR(t[2].real(), -24.0 / std::pow(2.0, 5.5), 1e-15);
  EXPECT_NEAR(t[2].real(), -0.5303301, 1e-7);
  EXPECT_NEAR(t[3].real(), 252.0 / std::pow(3.0, 5.5), 1e-15);
  EXPECT_NEAR(t[6].real(), (t[2] * t[3]).real(), 1e-15);
  for (std::int64_t m = 1; m <= 6; ++m) EXPECT_EQ(t[m].imag(), 0.0);
}

TEST(DeltaCoefficients, CeilingIsAResourceError) {
  expect_kind([] { arith::delta_coefficients(200, 100); }, ErrorKind::resource);
}

TEST(CoeffTable, AccessContract) {
  const auto t = arith::delta_coefficients(10);
  EXPECT_EQ(t.at(-3), t.at(3));
  expect_kind([&] { t.at(0); }, ErrorKind::domain);
  expect_kind([&] { t.at(11); }, ErrorKind::coverage);
}

TEST(SatakeFromCoeff, Examples) {
  const auto dbl = arith::satake_from_coeff(2, 2.0);
  EXPECT_NEAR(std::abs(dbl.params[0] - 1.0), 0.0, 1e-7);
  EXPECT_NEAR(std::abs(dbl.params[1] - 1.0), 0.0, 1e-7);

  const auto zero = arith::satake_from_coeff(3, 0.0);
  EXPECT_NEAR(std::abs(zero.params[0] * zero.params[1] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(zero.params[0] + zero.params[1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(std::abs(zero.params[0].imag()) - 1.0), 0.0, 1e-15);

  const double c2 = -24.0 / std::pow(2.0, 5.5);
  const auto d = arith::satake_from_coeff(2, c2);
  EXPECT_NEAR(std::abs(d.params[0]), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(d.params[1]), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(d.params[0] + d.params[1] - c2), 0.0, 1e-14);
  EXPECT_GE(std::abs(d.params[0]) + 1e-12, std::abs(d.params[1]));
}

TEST(SymPower, Examples) {
  const auto delta = arith::delta_rep(50);
  const auto same = arith::sym_power_rep(delta, 1);
  EXPECT_EQ(same.degree, 2);
  for (std::int64_t p : {2, 3, 5, 7}) {
    const auto a = delta.satake_source(p).params;
    const auto b = same.satake_source(p).params;
    EXPECT_NEAR(std::abs((a[0] + a[1]) - (b[0] + b[1])), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(a[0] * a[1] - b[0] * b[1]), 0.0, 1e-14);
  }
  const auto sym2 = arith::coeff_from_satake(arith::sym_power_rep(delta, 2), 4);
  EXPECT_NEAR(sym2[2].real(), (576.0 - 2048.0) / 2048.0, 1e-14);
  EXPECT_NEAR(sym2[2].real(), -0.71875, 1e-14);

  const auto sym3 = arith::sym_power_rep(delta, 3);
  EXPECT_EQ(sym3.degree, 4);
  cplx prod = 1.0;
  for (const auto& a : sym3.satake_source(2).params) prod *= a;
  EXPECT_NEAR(std::abs(prod), 1.0, 1e-12);
}

TEST(CoeffFromSatake, AgreesWithTauRoute) {
  const std::int64_t M = 3000;
  const auto direct = arith::delta_coefficients(M);
  const auto via = arith::coeff_from_satake(arith::delta_rep(M), M);
  for (std::int64_t m = 1; m <= M; ++m) EXPECT_NEAR(std::abs(direct[m] - via[m]), 0.0, 1e-12) << m;
}

TEST(CoeffFromSatake, Sym2AtFourIsCompleteHomogeneous) {
  const auto delta = arith::delta_rep(10);
  const auto ab = delta.satake_source(2).params;
  const std::vector<cplx> three{ab[0] * ab[0], ab[0] * ab[1], ab[1] * ab[1]};
  cplx h2 = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) h2 += three[i] * three[j];
  }
  const auto table = arith::coeff_from_satake(arith::sym_power_rep(delta, 2), 4);
  EXPECT_NEAR(std::abs(table[4] - h2), 0.0, 1e-13);
}

TEST(CoeffFromSatake, MultiplicativeForSymmetricPowers) {
  const std::int64_t M = 3000;
  const auto delta = arith::delta_rep(M);
  for (int r : {2, 3}) {
    const auto t = arith::coeff_from_satake(arith::sym_power_rep(delta, r), M);
    EXPECT_EQ(t[1], cplx(1.0, 0.0));
    for (std::int64_t m = 2; m * m <= M; ++m) {
      for (std::int64_t n = m + 1; m * n <= M; ++n) {
        if (oracle::gcd(m, n) != 1) continue;
        ASSERT_NEAR(std::abs(t[m * n] - t[m] * t[n]), 0.0, 1e-12 * std::max(1.0, std::abs(t[m * n])));
      }
    }
  }
}

TEST(Satake, ProductHasModulusOne) {
  const auto delta = arith::delta_rep(1000);
  for (const auto& rep : {delta, arith::sym_power_rep(delta, 2), arith::sym_power_rep(delta, 3)}) {
    for (std::int64_t p : arith::primes_up_to(1000)) {
      cplx prod = 1.0;
      for (const auto& a : rep.satake_source(p).params) prod *= a;
      ASSERT_NEAR(std::abs(prod), 1.0, 1e-12) << rep.name << " p=" << p;
    }
  }
}

TEST(RepDescriptor, ValidationWarnsInsteadOfThrowing) {
  const auto delta = arith::delta_rep(10);
  const auto warnings = delta.validate();
  // The weight shift 11/2 sits far above the 1/(n^2+1) bound.
  EXPECT_FALSE(warnings.empty());
  EXPECT_TRUE(arith::formal_ones_rep().validate().empty());
}

TEST(DirichletChar, QuadraticCharactersMatchLegendre) {
  const auto principal = arith::dirichlet_char(5, 0);
  EXPECT_EQ(principal.parity, 1);
  for (std::int64_t a = 1; a < 5; ++a) EXPECT_EQ(principal(a), cplx(1.0, 0.0));

  const auto chi5 = arith::dirichlet_char(5, 2);
  EXPECT_EQ(chi5.parity, 1);
  for (std::int64_t a = 0; a < 5; ++a) EXPECT_NEAR(std::abs(chi5(a) - double(oracle::legendre(a, 5))), 0.0, 1e-15);

  const auto chi7 = arith::dirichlet_char(7, 3);
  EXPECT_EQ(chi7.parity, -1);
  for (std::int64_t a = 0; a < 7; ++a) EXPECT_NEAR(std::abs(chi7(a) - double(oracle::legendre(a, 7))), 0.0, 1e-15);
}

TEST(DirichletChar, UnsupportedAndBadIndex) {
  expect_kind([] { arith::dirichlet_char(15, 1); }, ErrorKind::unsupported);
  expect_kind([] { arith::dirichlet_char(8, 1); }, ErrorKind::unsupported);
  expect_kind([] { arith::dirichlet_char(7, 6); }, ErrorKind::domain);
}

TEST(DirichletChar, InvariantsOnRandomModuli) {
  std::mt19937 rng(7);
  for (std::int64_t q : {3, 9, 11, 25, 27, 49, 81, 97}) {
    for (const auto& chi : arith::all_characters(q)) {
      for (int trial = 0; trial < 50; ++trial) {
        const std::int64_t a = std::uniform_int_distribution<std::int64_t>(0, 3 * q)(rng);
        const std::int64_t b = std::uniform_int_distribution<std::int64_t>(0, 3 * q)(rng);
        if (oracle::gcd(a, q) == 1) {
          EXPECT_NEAR(std::abs(chi(a)), 1.0, 1e-14);
        } else {
          EXPECT_EQ(chi(a), cplx(0.0, 0.0));
        }
        EXPECT_NEAR(std::abs(chi(a * b) - chi(a) * chi(b)), 0.0, 1e-12);
      }
    }
  }
}

TEST(DirichletChar, InducingPrimitive) {
  const auto induced = arith::inducing_primitive(arith::dirichlet_char(5, 0));
  EXPECT_EQ(induced.modulus, 1);
  const auto chi = arith::dirichlet_char(25, 5);  // order 4, factors through mod 5
  EXPECT_FALSE(chi.primitive);
  const auto prim = arith::inducing_primitive(chi);
  EXPECT_EQ(prim.modulus, 5);
  for (std::int64_t a = 1; a < 25; ++a) {
    if (a % 5 != 0) {
      EXPECT_NEAR(std::abs(prim(a) - chi(a)), 0.0, 1e-12);
    }
  }
}

TEST(GaussSum, Examples) {
  const cplx g5 = arith::gauss_sum(arith::dirichlet_char(5, 2));
  // Direct five-term sum.
  cplx direct = 0.0;
  for (int a = 1; a < 5; ++a) direct += double(oracle::legendre(a, 5)) * std::polar(1.0, 2.0 * oracle::kPi * a / 5.0);
  EXPECT_NEAR(std::abs(g5 - direct), 0.0, 1e-13);
  EXPECT_NEAR(g5.real(), std::sqrt(5.0), 1e-13);
  EXPECT_NEAR(g5.imag(), 0.0, 1e-13);
  for (std::int64_t idx = 1; idx < 6; ++idx) {
    EXPECT_NEAR(std::abs(arith::gauss_sum(arith::dirichlet_char(7, idx))), std::sqrt(7.0), 1e-12);
  }
  expect_kind([] { arith::gauss_sum(arith::dirichlet_char(7, 0)); }, ErrorKind::precondition);
}

TEST(RankinSelberg, BandAndMonotonicity) {
  const auto t = arith::delta_coefficients(100000);
  EXPECT_NEAR(arith::rankin_selberg_partial(t, 1), 1.0, 0.0);
  double lo = INFINITY, hi = 0.0;
  for (std::int64_t Y : {1000, 10000, 100000}) {
    const double r = arith::rankin_selberg_partial(t, Y) / static_cast<double>(Y);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  EXPECT_LE(hi / lo, 3.0);
  for (std::int64_t Y = 1; 2 * Y <= 100000; Y *= 2) {
    EXPECT_LE(arith::rankin_selberg_partial(t, Y), arith::rankin_selberg_partial(t, 2 * Y));
  }
  EXPECT_THROW(arith::rankin_selberg_partial(t, 100001), Error);
}

TEST(TableText, RoundTripIsBitExact) {
  const auto t = arith::coeff_from_satake(arith::sym_power_rep(arith::delta_rep(500), 3), 500);
  std::stringstream ss;
  arith::write_table(ss, t);
  const std::string first = ss.str();
  const auto back = arith::read_table(ss);
  ASSERT_EQ(back.bound(), t.bound());
  EXPECT_EQ(back.degree(), 4);
  for (std::int64_t m = 1; m <= t.bound(); ++m) {
    EXPECT_EQ(back[m].real(), t[m].real());
    EXPECT_EQ(back[m].imag(), t[m].imag());
  }
  std::stringstream again;
  arith::write_table(again, back);
  EXPECT_EQ(again.str(), first);
}

TEST(TableText, MalformedHeaderIsAParseError) {
  std::stringstream ss("rep=delta degree=2 bound=1\n1 1 0\n");
  expect_kind([&] { arith::read_table(ss); }, ErrorKind::parse);
}

TEST(Basics, PhiAndPrimes) {
  EXPECT_EQ(arith::euler_phi(1), 1);
  EXPECT_EQ(arith::euler_phi(81), 54);
  EXPECT_EQ(arith::euler_phi(97), 96);
  std::int64_t count = 0;
  for (std::int64_t n = 2; n <= 10000; ++n) {
    bool prime = true;
    for (std::int64_t d = 2; d * d <= n; ++d) prime = prime && n % d != 0;
    count += prime;
  }
  EXPECT_EQ(static_cast<std::int64_t>(arith::primes_up_to(10000).size()), count);
  EXPECT_EQ(arith::unit_root(1, 4), cplx(0.0, 1.0));
}
