#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "scp/arith.hpp"
#include "scp/shifted.hpp"

namespace scp::amplifier {

using cplx = std::complex<double>;
using arith::CoeffTable;
using arith::DirichletChar;

struct AmplifierSpec {
  std::int64_t q = 5;
  std::int64_t chi_index = 0;
  double L = 10.0;
  double Y = 100.0;
  cplx w{0.0, 0.0};  // purely imaginary phase parameter
  shifted::WeightFn weight;

  void validate() const;
};

// Primes l with L <= l <= 2L and l not dividing q, ascending.
std::vector<std::int64_t> amplifier_primes(double L, std::int64_t q);

// sum_g c(g) xi(g) g^-1/2 W(g/Y) (g/Y)^-w.
cplx script_L(const CoeffTable& table, const DirichletChar& xi, const AmplifierSpec& spec);

struct MomentResult {
  double S = 0.0;
  double lower_bound = 0.0;  // (#amplifier)^2 |L_chi|^2, the xi = chi term
  std::size_t amplifier_size = 0;
  cplx L_chi{0.0, 0.0};
};

// sum over all characters xi mod q of |sum_l xi(l) conj(chi(l))|^2 |L_xi|^2.
MomentResult moment_S(const CoeffTable& table, const AmplifierSpec& spec);

struct PlancherelCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};

// lhs = sum_xi |sum_l xi(l) conj(chi(l)) A_l|^2, rhs = phi(q) sum_x |sum_{l = x} conj(chi(l)) A_l|^2.
PlancherelCheck plancherel_check(std::int64_t q, std::int64_t chi_index, const std::map<std::int64_t, cplx>& inner);

struct DiagonalEstimate {
  double diagonal = 0.0;   // signed diagonal l1 g1 = l2 g2 of the expanded moment
  double majorant = 0.0;   // same with absolute values
  double per_value = 0.0;  // diagonal / (#amplifier)^2, its share of the bound on |L_chi|^2
  double scale = 0.0;      // q^(1 + 0.01) / L
  double ratio = 0.0;      // per_value / scale
  std::size_t amplifier_size = 0;
};

DiagonalEstimate diagonal_estimate(const CoeffTable& table, std::int64_t q, std::int64_t chi_index, double L,
                                   double Y, const shifted::WeightFn& weight);

struct ExponentInput {
  int n = 2;
  double theta0 = 7.0 / 64.0;
  double u = 0.0;
  double delta0 = 103.0 / 512.0;

  void validate() const;
};

struct Exponents {
  double e_diag = 0.0;
  double e_offdiag = 0.0;
  double e_final = 0.0;
};

// Exponents of q in |L(1/2)|: diagonal (1-u)/2, off-diagonal
// (n/4)(1/2+theta0) + u(5/2+theta0)/2, and their maximum.
Exponents exponent_calculator(const ExponentInput& inp);

struct BalanceReport {
  double u_star = 0.0;
  bool clamped = false;
  Exponents at_u_star;
  double convexity_exponent = 0.0;  // n/4
  bool beats_convexity = false;
  // Only for n = 3: the quoted parameter (1 - 6 theta0)/(14 - 4 theta0).
  bool has_quoted_u = false;
  double quoted_u = 0.0;
  bool quoted_u_matches = false;
  Exponents at_quoted_u;
};

BalanceReport balance_report(int n, double theta0);

}  // namespace scp::amplifier
