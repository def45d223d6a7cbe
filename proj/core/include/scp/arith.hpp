#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace scp::arith {

using cplx = std::complex<double>;

inline constexpr std::int64_t kDefaultTableCeiling = 1'000'000;

struct SatakeLocal {
  std::int64_t prime = 0;
  std::vector<cplx> params;
};

// Degree-n stand-in for an automorphic representation: enough local and
// archimedean data to build Euler products and Gamma factors.
struct RepDescriptor {
  std::string name;
  int degree = 2;
  std::int64_t conductor = 1;
  std::vector<cplx> arch_params;
  bool selfdual = true;
  // Order of the pole of L(s) at s = 1 (nonzero only for formal Eisenstein-type data).
  int pole_order = 0;
  std::function<SatakeLocal(std::int64_t)> satake_source;

  // Soft checks (bound on Re(mu), conjugation closure, Satake product modulus).
  // Violations come back as human-readable warnings; nothing throws.
  std::vector<std::string> validate(std::int64_t probe_prime = 2) const;
};

class CoeffTable {
 public:
  CoeffTable() = default;
  CoeffTable(std::string rep_name, int degree, std::vector<cplx> values_from_one);

  std::int64_t bound() const noexcept { return static_cast<std::int64_t>(values_.size()) - 1; }
  int degree() const noexcept { return degree_; }
  const std::string& rep_name() const noexcept { return rep_name_; }

  // c(m) for 1 <= |m| <= bound; negative arguments read c(|m|).  Throws a
  // coverage error outside the table and a domain error at m = 0.
  cplx at(std::int64_t m) const;
  // Unchecked access for 1 <= m <= bound.
  const cplx& operator[](std::int64_t m) const noexcept { return values_[static_cast<std::size_t>(m)]; }

  const std::vector<cplx>& raw() const noexcept { return values_; }

 private:
  std::string rep_name_;
  int degree_ = 0;
  std::vector<cplx> values_;  // values_[0] is a placeholder
};

// tau(1..M) from the 24th power of prod (1 - x^n).  Arithmetic is carried out
// modulo 2^128; every true value fits in a signed 128-bit word, so the
// reinterpretation at the end is exact.
std::vector<__int128> ramanujan_tau(std::int64_t M, std::int64_t ceiling = kDefaultTableCeiling);

CoeffTable delta_coefficients(std::int64_t M, std::int64_t ceiling = kDefaultTableCeiling);

SatakeLocal satake_from_coeff(std::int64_t p, cplx cp);

// Delta as a degree-2 descriptor; the Satake source reads a private
// coefficient table covering primes up to `prime_bound`.
RepDescriptor delta_rep(std::int64_t prime_bound);
RepDescriptor sym_power_rep(const RepDescriptor& seed, int r);
// Degree-2 descriptor with all Satake parameters equal to 1 (coefficients d(m)).
RepDescriptor formal_ones_rep();
// Builds a named descriptor ("delta", "sym2", "sym3", "formal_ones").
RepDescriptor rep_by_name(const std::string& name, std::int64_t prime_bound);

// Complete homogeneous symmetric polynomials h_0..h_kmax in the parameters.
std::vector<cplx> complete_homogeneous(const std::vector<cplx>& params, int kmax);

CoeffTable coeff_from_satake(const RepDescriptor& rep, std::int64_t M,
                             std::int64_t ceiling = kDefaultTableCeiling);

std::vector<std::int64_t> primes_up_to(std::int64_t n);
std::vector<std::int64_t> smallest_prime_factor_sieve(std::int64_t n);
bool is_prime(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);

// exp(2 pi i r / N) with exact values at multiples of a quarter turn.
cplx unit_root(std::int64_t r, std::int64_t N);

struct DirichletChar {
  std::int64_t modulus = 1;
  std::vector<cplx> values;  // values[a mod q]
  int parity = 1;
  bool primitive = true;

  cplx operator()(std::int64_t a) const;
};

DirichletChar dirichlet_char(std::int64_t q, std::int64_t index);
std::vector<DirichletChar> all_characters(std::int64_t q);
// The primitive character inducing chi (chi itself when already primitive).
DirichletChar inducing_primitive(const DirichletChar& chi);
cplx gauss_sum(const DirichletChar& chi);

double rankin_selberg_partial(const CoeffTable& table, std::int64_t Y);

// Largest log|c(m)| / log m over m in [sqrt(M), M]; used for tail bounds.
double empirical_growth_exponent(const CoeffTable& table, std::int64_t M);

void write_table(std::ostream& out, const CoeffTable& table);
CoeffTable read_table(std::istream& in);

}  // namespace scp::arith
