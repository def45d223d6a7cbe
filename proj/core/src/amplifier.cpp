#include "scp/amplifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scp/errors.hpp"
#include "scp/summation.hpp"

namespace scp::amplifier {

namespace {

struct Support {
  std::int64_t lo = 1;
  std::int64_t hi = 0;
};

Support weight_support(const shifted::WeightFn& weight, double Y, std::int64_t bound, const char* who) {
  const auto [a, b] = weight.support();
  Support s;
  s.lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(Y * a)));
  s.hi = static_cast<std::int64_t>(std::floor(Y * b));
  if (s.hi > bound) fail(ErrorKind::coverage, std::string(who) + ": weight support exceeds table bound");
  return s;
}

}  // namespace

void AmplifierSpec::validate() const {
  if (q < 2) fail(ErrorKind::domain, "amplifier: modulus must be >= 2");
  if (!(Y > 0.0)) fail(ErrorKind::domain, "amplifier: Y must be positive");
  if (std::fabs(w.real()) > 1e-15) fail(ErrorKind::domain, "amplifier: w must be purely imaginary");
  if (!(L >= std::log(static_cast<double>(q)))) fail(ErrorKind::precondition, "amplifier: need L >= log q");
  weight.validate();
}

std::vector<std::int64_t> amplifier_primes(double L, std::int64_t q) {
  if (!(L >= 2.0)) fail(ErrorKind::domain, "amplifier_primes: L must be >= 2");
  std::vector<std::int64_t> out;
  const auto hi = static_cast<std::int64_t>(std::floor(2.0 * L));
  for (std::int64_t p : arith::primes_up_to(hi)) {
    if (static_cast<double>(p) >= L && q % p != 0) out.push_back(p);
  }
  return out;
}

cplx script_L(const CoeffTable& table, const DirichletChar& xi, const AmplifierSpec& spec) {
  spec.validate();
  const Support s = weight_support(spec.weight, spec.Y, table.bound(), "script_L");
  ComplexCompensatedSum acc;
  for (std::int64_t g = s.lo; g <= s.hi; ++g) {
    const double y = static_cast<double>(g) / spec.Y;
    const double wt = spec.weight(y);
    if (wt == 0.0) continue;
    acc.add(table[g] * xi(g) * (wt / std::sqrt(static_cast<double>(g))) * std::exp(-spec.w * std::log(y)));
  }
  return acc.value();
}

MomentResult moment_S(const CoeffTable& table, const AmplifierSpec& spec) {
  spec.validate();
  const DirichletChar chi = arith::dirichlet_char(spec.q, spec.chi_index);
  const auto primes = amplifier_primes(spec.L, spec.q);
  const Support s = weight_support(spec.weight, spec.Y, table.bound(), "moment_S");
  // Group the weighted coefficients by residue so each L_xi is a q-term sum.
  std::vector<ComplexCompensatedSum> by_residue(static_cast<std::size_t>(spec.q));
  for (std::int64_t g = s.lo; g <= s.hi; ++g) {
    const double y = static_cast<double>(g) / spec.Y;
    const double wt = spec.weight(y);
    if (wt == 0.0) continue;
    by_residue[static_cast<std::size_t>(g % spec.q)].add(table[g] * (wt / std::sqrt(static_cast<double>(g))) *
                                                         std::exp(-spec.w * std::log(y)));
  }
  MomentResult out;
  out.amplifier_size = primes.size();
  CompensatedSum S;
  for (const auto& xi : arith::all_characters(spec.q)) {
    ComplexCompensatedSum Lxi, Axi;
    for (std::int64_t x = 0; x < spec.q; ++x) Lxi.add(xi(x) * by_residue[static_cast<std::size_t>(x)].value());
    for (std::int64_t l : primes) Axi.add(xi(l) * std::conj(chi(l)));
    S.add(std::norm(Axi.value()) * std::norm(Lxi.value()));
  }
  ComplexCompensatedSum Lchi;
  for (std::int64_t x = 0; x < spec.q; ++x) Lchi.add(chi(x) * by_residue[static_cast<std::size_t>(x)].value());
  out.L_chi = Lchi.value();
  out.S = S.value();
  const double amp = static_cast<double>(primes.size());
  out.lower_bound = amp * amp * std::norm(out.L_chi);
  return out;
}

PlancherelCheck plancherel_check(std::int64_t q, std::int64_t chi_index, const std::map<std::int64_t, cplx>& inner) {
  const DirichletChar chi = arith::dirichlet_char(q, chi_index);
  std::vector<ComplexCompensatedSum> grouped(static_cast<std::size_t>(q));
  for (const auto& [l, A] : inner) {
    if (std::gcd(l, q) != 1) fail(ErrorKind::precondition, "plancherel_check: index not coprime to q");
    grouped[static_cast<std::size_t>(((l % q) + q) % q)].add(std::conj(chi(l)) * A);
  }
  CompensatedSum lhs;
  for (const auto& xi : arith::all_characters(q)) {
    ComplexCompensatedSum inner_sum;
    for (const auto& [l, A] : inner) inner_sum.add(xi(l) * std::conj(chi(l)) * A);
    lhs.add(std::norm(inner_sum.value()));
  }
  CompensatedSum rhs;
  for (const auto& g : grouped) rhs.add(std::norm(g.value()));
  return {lhs.value(), static_cast<double>(arith::euler_phi(q)) * rhs.value()};
}

DiagonalEstimate diagonal_estimate(const CoeffTable& table, std::int64_t q, std::int64_t chi_index, double L,
                                   double Y, const shifted::WeightFn& weight) {
  if (!(Y > 0.0)) fail(ErrorKind::domain, "diagonal_estimate: Y must be positive");
  const DirichletChar chi = arith::dirichlet_char(q, chi_index);
  const auto primes = amplifier_primes(L, q);
  const Support s = weight_support(weight, Y, table.bound(), "diagonal_estimate");
  auto coeff = [&](std::int64_t g) -> cplx {
    if (g < s.lo || g > s.hi || std::gcd(g, q) != 1) return {0.0, 0.0};
    const double wt = weight(static_cast<double>(g) / Y);
    return table[g] * (wt / std::sqrt(static_cast<double>(g)));
  };
  DiagonalEstimate out;
  out.amplifier_size = primes.size();
  out.scale = std::pow(static_cast<double>(q), 1.01) / L;
  CompensatedSum diag, major;
  for (std::int64_t l1 : primes) {
    for (std::int64_t l2 : primes) {
      // l1 g1 = l2 g2 with distinct primes forces g1 = l2 t, g2 = l1 t.
      const std::int64_t step1 = l1 == l2 ? 1 : l2;
      const std::int64_t step2 = l1 == l2 ? 1 : l1;
      const cplx phase = std::conj(chi(l1)) * chi(l2);
      for (std::int64_t t = 1; t * step1 <= s.hi && t * step2 <= s.hi; ++t) {
        const cplx a = coeff(t * step1);
        const cplx b = coeff(t * step2);
        if (a == cplx(0.0, 0.0) || b == cplx(0.0, 0.0)) continue;
        diag.add((phase * a * std::conj(b)).real());
        major.add(std::abs(a) * std::abs(b));
      }
    }
  }
  const double phi = static_cast<double>(arith::euler_phi(q));
  out.diagonal = phi * diag.value();
  out.majorant = phi * major.value();
  if (!primes.empty()) {
    const double amp = static_cast<double>(primes.size());
    out.per_value = out.diagonal / (amp * amp);
    out.ratio = out.per_value / out.scale;
  }
  return out;
}

void ExponentInput::validate() const {
  if (n < 2) fail(ErrorKind::domain, "exponents: n must be >= 2");
  if (!(theta0 >= 0.0 && theta0 <= 0.5)) fail(ErrorKind::domain, "exponents: theta0 must lie in [0, 1/2]");
  if (!(u >= 0.0 && u <= 1.0)) fail(ErrorKind::domain, "exponents: u must lie in [0, 1]");
}

Exponents exponent_calculator(const ExponentInput& inp) {
  inp.validate();
  Exponents e;
  e.e_diag = (1.0 - inp.u) / 2.0;
  e.e_offdiag = (inp.n / 4.0) * (0.5 + inp.theta0) + inp.u * (2.5 + inp.theta0) / 2.0;
  e.e_final = std::max(e.e_diag, e.e_offdiag);
  return e;
}

BalanceReport balance_report(int n, double theta0) {
  ExponentInput probe{n, theta0, 0.0};
  probe.validate();
  BalanceReport r;
  const double raw = (2.0 - n * (0.5 + theta0)) / (7.0 + 2.0 * theta0);
  r.u_star = std::clamp(raw, 0.0, 1.0);
  r.clamped = r.u_star != raw;
  r.at_u_star = exponent_calculator({n, theta0, r.u_star});
  r.convexity_exponent = n / 4.0;
  r.beats_convexity = r.at_u_star.e_final < r.convexity_exponent;
  if (n == 3) {
    r.has_quoted_u = true;
    r.quoted_u = (1.0 - 6.0 * theta0) / (14.0 - 4.0 * theta0);
    r.quoted_u_matches = std::fabs(r.quoted_u - r.u_star) <= 1e-12;
    r.at_quoted_u = exponent_calculator({n, theta0, std::clamp(r.quoted_u, 0.0, 1.0)});
  }
  return r;
}

}  // namespace scp::amplifier
