#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace scp::quadforms {

using Rational = boost::rational<std::int64_t>;
using Vec = std::vector<std::int64_t>;

// f(a) = a^T A a with A = B/2, where B is an integer symmetric matrix with
// even diagonal.  Stored through B so that f(a) = a^T B a / 2 is exact.
class QuadraticForm {
 public:
  QuadraticForm() = default;
  // `upper` lists the upper triangle of B = 2A row by row (k(k+1)/2 entries).
  static QuadraticForm from_upper_triangle(int k, const std::vector<std::int64_t>& upper);
  // Parses "k;b11 b12 ... bkk" (upper triangle of 2A, whitespace separated).
  static QuadraticForm parse(const std::string& text);

  int k() const noexcept { return k_; }
  std::int64_t twice_gram(int i, int j) const { return b_[static_cast<std::size_t>(i * k_ + j)]; }
  Rational gram(int i, int j) const { return Rational(twice_gram(i, j), 2); }
  std::int64_t value(const std::int64_t* a) const noexcept;
  std::int64_t value(const Vec& a) const noexcept { return value(a.data()); }
  std::vector<std::vector<Rational>> inverse_gram() const;
  std::string describe() const;

 private:
  int k_ = 0;
  std::vector<std::int64_t> b_;
};

QuadraticForm x_squared();
QuadraticForm sum_of_two_squares();

struct Monomial {
  std::vector<int> exponents;
  Rational coeff;
};

class SphericalPoly {
 public:
  SphericalPoly() = default;
  SphericalPoly(int k, std::vector<Monomial> terms);
  static SphericalPoly constant(int k);
  // Parses "c:e1,...,ek;c:e1,...,ek" where c is an integer or p/q.
  static SphericalPoly parse(int k, const std::string& text);

  int k() const noexcept { return k_; }
  int degree() const noexcept { return degree_; }
  const std::vector<Monomial>& terms() const noexcept { return terms_; }
  bool is_constant_one() const;
  Rational evaluate_exact(const std::int64_t* a) const;
  double evaluate(const std::int64_t* a) const;

 private:
  int k_ = 0;
  int degree_ = 0;
  std::vector<Monomial> terms_;
};

// Flat list of lattice vectors with f(a) <= M, ordered by (f(a), lexicographic).
struct LatticePoints {
  int k = 0;
  std::vector<std::int64_t> norms;
  std::vector<std::int64_t> coords;  // size k * norms.size()

  std::size_t size() const noexcept { return norms.size(); }
  const std::int64_t* vec(std::size_t i) const noexcept { return coords.data() + i * static_cast<std::size_t>(k); }
};

inline constexpr std::size_t kDefaultRepCeiling = 50'000'000;

LatticePoints enumerate_points(const QuadraticForm& f, std::int64_t M,
                               std::size_t ceiling = kDefaultRepCeiling);
std::map<std::int64_t, std::vector<Vec>> enumerate_reps(const QuadraticForm& f, std::int64_t M,
                                                        std::size_t ceiling = kDefaultRepCeiling);

struct ThetaCoeffs {
  std::int64_t bound = 0;
  std::vector<Rational> exact;  // exact[m], 0 <= m <= bound
  std::vector<double> r;
};

ThetaCoeffs theta_coeffs(const QuadraticForm& f, const SphericalPoly& p, std::int64_t M);

bool harmonicity_check(const QuadraticForm& f, const SphericalPoly& p);

struct AutomorphCount {
  std::int64_t full = 0;
  std::int64_t rotations = 0;
};

AutomorphCount automorph_count(const QuadraticForm& f);

}  // namespace scp::quadforms
