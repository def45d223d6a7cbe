#include <gtest/gtest.h>

#include "oracles.hpp"
#include "scp/errors.hpp"
#include "scp/quadforms.hpp"

using namespace scp;
using quadforms::QuadraticForm;
using quadforms::SphericalPoly;

namespace {

std::vector<std::vector<std::int64_t>> twice_gram(const QuadraticForm& f) {
  std::vector<std::vector<std::int64_t>> B(static_cast<std::size_t>(f.k()), std::vector<std::int64_t>(static_cast<std::size_t>(f.k())));
  for (int i = 0; i < f.k(); ++i) {
    for (int j = 0; j < f.k(); ++j) B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = f.twice_gram(i, j);
  }
  return B;
}

// Compares enumerate_reps with a box scan of half-width 1 + sqrt(M (A^-1)_ii),
// where A^-1 = 2 B^-1.
void expect_matches_box_scan(const QuadraticForm& f, std::int64_t M) {
  const auto B = twice_gram(f);
  double widest = 0.0;
  for (double d : oracle::inverse_diagonal(B)) widest = std::max(widest, 2.0 * d);
  const auto R = static_cast<std::int64_t>(1.0 + std::sqrt(static_cast<double>(M) * widest));
  const auto expect = oracle::box_scan(B, M, R);
  const auto got = quadforms::enumerate_reps(f, M);
  ASSERT_EQ(got.size(), expect.size()) << f.describe();
  for (const auto& [m, vecs] : expect) {
    const auto it = got.find(m);
    ASSERT_NE(it, got.end()) << "missing value " << m;
    const std::set<std::vector<std::int64_t>> as_set(it->second.begin(), it->second.end());
    ASSERT_EQ(as_set.size(), it->second.size()) << "duplicate vectors at " << m;
    ASSERT_EQ(as_set, vecs) << "value " << m;
    ASSERT_TRUE(std::is_sorted(it->second.begin(), it->second.end()));
  }
}

}  // namespace

TEST(EnumerateReps, Examples) {
  const auto reps = quadforms::enumerate_reps(quadforms::x_squared(), 9);
  ASSERT_EQ(reps.size(), 4u);
  using V = std::vector<quadforms::Vec>;
  EXPECT_EQ(reps.at(0), (V{{0}}));
  EXPECT_EQ(reps.at(1), (V{{-1}, {1}}));
  EXPECT_EQ(reps.at(4), (V{{-2}, {2}}));
  EXPECT_EQ(reps.at(9), (V{{-3}, {3}}));

  const auto two = quadforms::enumerate_reps(quadforms::sum_of_two_squares(), 2);
  EXPECT_EQ(two.at(0).size(), 1u);
  EXPECT_EQ(two.at(1).size(), 4u);
  EXPECT_EQ(two.at(2).size(), 4u);

  const auto hex = quadforms::enumerate_reps(QuadraticForm::parse("2;2 1 2"), 1);
  EXPECT_EQ(hex.at(1).size(), 6u);
}

TEST(EnumerateReps, AgreesWithBoxScan) {
  expect_matches_box_scan(quadforms::sum_of_two_squares(), 10000);
  expect_matches_box_scan(QuadraticForm::parse("2;2 1 2"), 10000);
  expect_matches_box_scan(QuadraticForm::parse("2;4 3 6"), 10000);
  expect_matches_box_scan(QuadraticForm::parse("3;2 1 0 2 1 4"), 1000);
  expect_matches_box_scan(QuadraticForm::parse("3;2 0 0 2 0 2"), 1000);
  expect_matches_box_scan(QuadraticForm::parse("4;2 1 0 0 2 1 0 2 1 2"), 200);
}

TEST(EnumerateReps, CeilingIsAResourceError) {
  try {
    quadforms::enumerate_points(quadforms::sum_of_two_squares(), 10000, 100);
    ADD_FAILURE() << "expected a resource error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::resource);
  }
}

TEST(ThetaCoeffs, Examples) {
  const auto line = quadforms::theta_coeffs(quadforms::x_squared(), SphericalPoly::constant(1), 100);
  for (std::int64_t m = 0; m <= 100; ++m) {
    const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(m))));
    const double expect = m == 0 ? 1.0 : (root * root == m ? 2.0 : 0.0);
    EXPECT_EQ(line.r[static_cast<std::size_t>(m)], expect) << m;
  }
  const auto plane = quadforms::sum_of_two_squares();
  const auto harmonic = quadforms::theta_coeffs(plane, SphericalPoly::parse(2, "1:2,0;-1:0,2"), 30);
  EXPECT_EQ(harmonic.r[1], 0.0);
  const auto counts = quadforms::theta_coeffs(plane, SphericalPoly::constant(2), 30);
  EXPECT_EQ(counts.r[25], 12.0);
  EXPECT_EQ(counts.exact[25], quadforms::Rational(12));
}

TEST(ThetaCoeffs, GroupedCountsMatchTotals) {
  for (const auto& text : {"2;2 0 2", "2;2 1 2", "3;2 1 0 2 1 4"}) {
    const auto f = QuadraticForm::parse(text);
    const std::int64_t M = 500;
    const auto theta = quadforms::theta_coeffs(f, SphericalPoly::constant(f.k()), M);
    double total = 0.0;
    for (double r : theta.r) {
      EXPECT_GE(r, 0.0);
      total += r;
    }
    EXPECT_EQ(theta.r[0], 1.0);
    EXPECT_EQ(total, static_cast<double>(quadforms::enumerate_points(f, M).size())) << text;
  }
}

TEST(ThetaCoeffs, OddHarmonicsVanish) {
  const std::vector<std::pair<const char*, const char*>> cases{
      {"1;2", "1:1"},
      {"2;2 0 2", "1:1,0"},
      {"2;2 0 2", "1:3,0;-3:1,2"},
      {"2;2 1 2", "2:1,0;-1:0,1"},
  };
  for (const auto& [form, poly] : cases) {
    const auto f = QuadraticForm::parse(form);
    const auto p = SphericalPoly::parse(f.k(), poly);
    ASSERT_TRUE(quadforms::harmonicity_check(f, p)) << poly;
    const auto theta = quadforms::theta_coeffs(f, p, 400);
    for (const auto& e : theta.exact) EXPECT_EQ(e, quadforms::Rational(0)) << form << " / " << poly;
  }
}

TEST(ThetaCoeffs, AverageGrowthWithinBand) {
  // #{f <= M} ~ vol(unit ball) M^{k/2} / sqrt(det A), with det A = det B / 2^k.
  const std::vector<std::pair<const char*, double>> cases{{"2;2 0 2", 4.0}, {"2;2 1 2", 3.0},
                                                          {"3;2 1 0 2 1 4", 10.0}};
  for (const auto& [text, detB] : cases) {
    const auto f = QuadraticForm::parse(text);
    const double k = f.k();
    const double detA = detB / std::pow(2.0, k);
    const double ball = std::pow(oracle::kPi, k / 2.0) / std::tgamma(k / 2.0 + 1.0);
    for (std::int64_t M : {100, 1000, 4000}) {
      const double predicted = ball * std::pow(static_cast<double>(M), k / 2.0) / std::sqrt(detA);
      const double ratio = static_cast<double>(quadforms::enumerate_points(f, M).size()) / predicted;
      EXPECT_GT(ratio, 1.0 / 3.0) << text << " M=" << M;
      EXPECT_LT(ratio, 3.0) << text << " M=" << M;
    }
  }
}

TEST(Harmonicity, Examples) {
  const auto plane = quadforms::sum_of_two_squares();
  EXPECT_TRUE(quadforms::harmonicity_check(plane, SphericalPoly::constant(2)));
  EXPECT_TRUE(quadforms::harmonicity_check(plane, SphericalPoly::parse(2, "1:2,0;-1:0,2")));
  EXPECT_FALSE(quadforms::harmonicity_check(plane, SphericalPoly::parse(2, "1:2,0;1:0,2")));
  const auto hex = QuadraticForm::parse("2;2 1 2");
  EXPECT_TRUE(quadforms::harmonicity_check(hex, SphericalPoly::parse(2, "1:2,0;-1:0,2")));
  EXPECT_FALSE(quadforms::harmonicity_check(hex, SphericalPoly::parse(2, "1:1,1")));
  // a^2 + ab + b^2 has A^-1 = (4/3)[[1,-1/2],[-1/2,1]]; a^2 + 2ab is harmonic for it.
  EXPECT_TRUE(quadforms::harmonicity_check(hex, SphericalPoly::parse(2, "1:2,0;2:1,1")));
}

TEST(AutomorphCount, Examples) {
  const auto square = quadforms::automorph_count(quadforms::sum_of_two_squares());
  EXPECT_EQ(square.rotations, 4);
  EXPECT_EQ(square.full, 8);
  const auto hex = quadforms::automorph_count(QuadraticForm::parse("2;2 1 2"));
  EXPECT_EQ(hex.rotations, 6);
  EXPECT_EQ(hex.full, 12);
  const auto rect = quadforms::automorph_count(QuadraticForm::parse("2;2 0 4"));
  EXPECT_EQ(rect.rotations, 2);
  EXPECT_EQ(rect.full, 4);
  EXPECT_THROW(quadforms::automorph_count(QuadraticForm::parse("3;2 0 0 2 0 2")), Error);
}

TEST(Parsing, RejectsMalformedInput) {
  for (const auto& bad : {"2;2 1", "1;1", "2;2 3 2", "x;2", "2;2 0 -2", ""}) {
    EXPECT_THROW(QuadraticForm::parse(bad), Error) << '"' << bad << '"';
  }
  EXPECT_THROW(SphericalPoly::parse(2, "1:2,0;1:1"), Error);
  EXPECT_THROW(SphericalPoly::parse(2, "1:2,0;1:1,0"), Error);
  EXPECT_THROW(SphericalPoly::parse(2, "q:1,1"), Error);
  const auto p = SphericalPoly::parse(2, "3/2:1,1;-1/2:2,0");
  EXPECT_EQ(p.degree(), 2);
  const std::int64_t a[2] = {2, 3};
  EXPECT_EQ(p.evaluate_exact(a), quadforms::Rational(7));
}

TEST(QuadraticForm, ValuesAndGram) {
  const auto f = QuadraticForm::parse("2;2 1 2");
  const quadforms::Vec v{2, -1};
  EXPECT_EQ(f.value(v), 3);
  EXPECT_EQ(f.gram(0, 1), quadforms::Rational(1, 2));
  const auto inv = f.inverse_gram();
  EXPECT_EQ(inv[0][0], quadforms::Rational(4, 3));
  EXPECT_EQ(inv[0][1], quadforms::Rational(-2, 3));
}
