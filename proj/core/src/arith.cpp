#include "scp/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "scp/errors.hpp"

namespace scp::arith {

namespace {

using u128 = unsigned __int128;

void check_bound(std::int64_t M, std::int64_t ceiling, const char* what) {
  if (M < 1) fail(ErrorKind::domain, std::string(what) + ": bound must be >= 1");
  if (M > ceiling) {
    fail(ErrorKind::resource, std::string(what) + ": bound " + std::to_string(M) +
                                  " exceeds ceiling " + std::to_string(ceiling));
  }
}

struct SparseTerm {
  std::int64_t exponent;
  std::int64_t coeff;
};

// prod_{n>=1} (1 - x^n) up to x^D by the pentagonal number theorem.
std::vector<SparseTerm> pentagonal_series(std::int64_t D) {
  std::vector<SparseTerm> out{{0, 1}};
  for (std::int64_t j = 1;; ++j) {
    const std::int64_t sign = (j % 2 == 0) ? 1 : -1;
    const std::int64_t e1 = j * (3 * j - 1) / 2;
    const std::int64_t e2 = j * (3 * j + 1) / 2;
    if (e1 > D) break;
    out.push_back({e1, sign});
    if (e2 <= D) out.push_back({e2, sign});
  }
  std::sort(out.begin(), out.end(), [](auto a, auto b) { return a.exponent < b.exponent; });
  return out;
}

std::vector<SparseTerm> sparsify(const std::vector<std::int64_t>& dense) {
  std::vector<SparseTerm> out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0) out.push_back({static_cast<std::int64_t>(i), dense[i]});
  }
  return out;
}

// In place: acc <- acc * sparse, truncated at acc.size()-1.  Requires the
// sparse factor to have constant term 1.
void multiply_in_place(std::vector<u128>& acc, const std::vector<SparseTerm>& sparse) {
  const std::int64_t D = static_cast<std::int64_t>(acc.size()) - 1;
  for (std::int64_t n = D; n >= 0; --n) {
    u128 total = acc[static_cast<std::size_t>(n)];
    for (std::size_t j = 1; j < sparse.size(); ++j) {
      const std::int64_t e = sparse[j].exponent;
      if (e > n) break;
      total += static_cast<u128>(static_cast<__int128>(sparse[j].coeff)) *
               acc[static_cast<std::size_t>(n - e)];
    }
    acc[static_cast<std::size_t>(n)] = total;
  }
}

}  // namespace

CoeffTable::CoeffTable(std::string rep_name, int degree, std::vector<cplx> values_from_one)
    : rep_name_(std::move(rep_name)), degree_(degree) {
  values_.reserve(values_from_one.size() + 1);
  values_.push_back(cplx(0.0, 0.0));
  values_.insert(values_.end(), values_from_one.begin(), values_from_one.end());
}

cplx CoeffTable::at(std::int64_t m) const {
  if (m == 0) fail(ErrorKind::domain, "coefficient index 0 is undefined");
  const std::int64_t a = m < 0 ? -m : m;
  if (a > bound()) {
    fail(ErrorKind::coverage, "coefficient " + std::to_string(a) + " beyond table bound " +
                                  std::to_string(bound()));
  }
  return values_[static_cast<std::size_t>(a)];
}

std::vector<__int128> ramanujan_tau(std::int64_t M, std::int64_t ceiling) {
  check_bound(M, ceiling, "ramanujan_tau");
  const std::int64_t D = M - 1;  // Delta = x * prod(1-x^n)^24
  const auto pent = pentagonal_series(D);

  // P^2 by sparse x sparse, then P^3 = P^2 * P.
  std::vector<std::int64_t> square(static_cast<std::size_t>(D + 1), 0);
  for (const auto& a : pent) {
    for (const auto& b : pent) {
      const std::int64_t e = a.exponent + b.exponent;
      if (e > D) break;
      square[static_cast<std::size_t>(e)] += a.coeff * b.coeff;
    }
  }
  std::vector<std::int64_t> cube(static_cast<std::size_t>(D + 1), 0);
  for (std::int64_t n = 0; n <= D; ++n) {
    std::int64_t total = 0;
    for (const auto& t : pent) {
      if (t.exponent > n) break;
      total += t.coeff * square[static_cast<std::size_t>(n - t.exponent)];
    }
    cube[static_cast<std::size_t>(n)] = total;
  }
  const auto cube_sparse = sparsify(cube);

  std::vector<u128> acc(static_cast<std::size_t>(D + 1));
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = static_cast<u128>(static_cast<__int128>(cube[i]));
  for (int step = 0; step < 7; ++step) multiply_in_place(acc, cube_sparse);

  std::vector<__int128> tau(static_cast<std::size_t>(M + 1), 0);
  for (std::int64_t m = 1; m <= M; ++m) tau[static_cast<std::size_t>(m)] = static_cast<__int128>(acc[static_cast<std::size_t>(m - 1)]);
  return tau;
}

CoeffTable delta_coefficients(std::int64_t M, std::int64_t ceiling) {
  const auto tau = ramanujan_tau(M, ceiling);
  std::vector<cplx> c(static_cast<std::size_t>(M));
  for (std::int64_t m = 1; m <= M; ++m) {
    const double md = static_cast<double>(m);
    const double scale = std::pow(md, 5) * std::sqrt(md);
    c[static_cast<std::size_t>(m - 1)] = cplx(static_cast<double>(tau[static_cast<std::size_t>(m)]) / scale, 0.0);
  }
  return CoeffTable("delta", 2, std::move(c));
}

SatakeLocal satake_from_coeff(std::int64_t p, cplx cp) {
  const cplx root = std::sqrt(cp * cp - 4.0);
  cplx alpha = 0.5 * (cp + root);
  cplx beta = 0.5 * (cp - root);
  const double ma = std::abs(alpha);
  const double mb = std::abs(beta);
  const bool tie = std::fabs(ma - mb) <= 1e-12 * std::max(1.0, std::max(ma, mb));
  if ((!tie && mb > ma) || (tie && alpha.imag() < beta.imag())) std::swap(alpha, beta);
  return SatakeLocal{p, {alpha, beta}};
}

std::vector<std::string> RepDescriptor::validate(std::int64_t probe_prime) const {
  std::vector<std::string> warnings;
  if (static_cast<int>(arch_params.size()) != degree) {
    warnings.push_back(name + ": arch_params has " + std::to_string(arch_params.size()) +
                       " entries for degree " + std::to_string(degree));
  }
  const double lrs = 1.0 / (static_cast<double>(degree) * degree + 1.0);
  double max_re = -1e300;
  for (const auto& mu : arch_params) max_re = std::max(max_re, mu.real());
  if (!arch_params.empty() && max_re > lrs) {
    std::ostringstream os;
    os << name << ": max Re(mu) = " << max_re << " exceeds 1/(n^2+1) = " << lrs;
    warnings.push_back(os.str());
  }
  if (selfdual) {
    for (const auto& mu : arch_params) {
      const bool closed = std::any_of(arch_params.begin(), arch_params.end(), [&](const cplx& other) {
        return std::abs(other - std::conj(mu)) <= 1e-9;
      });
      if (!closed) {
        warnings.push_back(name + ": self-dual flag set but arch_params not closed under conjugation");
        break;
      }
    }
  }
  if (satake_source) {
    const auto local = satake_source(probe_prime);
    if (static_cast<int>(local.params.size()) != degree) {
      warnings.push_back(name + ": Satake parameter count differs from degree");
    }
    cplx prod(1.0, 0.0);
    for (const auto& a : local.params) prod *= a;
    if (std::fabs(std::abs(prod) - 1.0) > 1e-12) {
      warnings.push_back(name + ": Satake product modulus differs from 1 at p=" + std::to_string(probe_prime));
    }
  }
  return warnings;
}

RepDescriptor delta_rep(std::int64_t prime_bound) {
  auto table = std::make_shared<const CoeffTable>(delta_coefficients(std::max<std::int64_t>(prime_bound, 2)));
  RepDescriptor rep;
  rep.name = "delta";
  rep.degree = 2;
  rep.conductor = 1;
  rep.arch_params = {cplx(5.5, 0.0), cplx(6.5, 0.0)};
  rep.selfdual = true;
  rep.satake_source = [table](std::int64_t p) { return satake_from_coeff(p, table->at(p)); };
  return rep;
}

RepDescriptor sym_power_rep(const RepDescriptor& seed, int r) {
  if (r < 1) fail(ErrorKind::domain, "sym_power_rep: r must be >= 1");
  if (seed.degree != 2) fail(ErrorKind::precondition, "sym_power_rep: seed must have degree 2");
  if (r == 1) return seed;
  RepDescriptor rep;
  rep.name = (r == 2 ? "sym2" : "sym" + std::to_string(r));
  if (seed.name != "delta") rep.name += "_" + seed.name;
  rep.degree = r + 1;
  rep.conductor = seed.conductor;
  rep.selfdual = seed.selfdual;
  const cplx mu1 = seed.arch_params.at(0);
  const cplx mu2 = seed.arch_params.at(1);
  for (int i = 0; i <= r; ++i) rep.arch_params.push_back(static_cast<double>(r - i) * mu1 + static_cast<double>(i) * mu2);
  auto source = seed.satake_source;
  rep.satake_source = [source, r](std::int64_t p) {
    const auto local = source(p);
    const cplx a = local.params.at(0);
    const cplx b = local.params.at(1);
    SatakeLocal out{p, {}};
    for (int i = 0; i <= r; ++i) out.params.push_back(std::pow(a, r - i) * std::pow(b, i));
    return out;
  };
  return rep;
}

RepDescriptor formal_ones_rep() {
  RepDescriptor rep;
  rep.name = "formal_ones";
  rep.degree = 2;
  rep.conductor = 1;
  rep.arch_params = {cplx(0.0, 0.0), cplx(0.0, 0.0)};
  rep.selfdual = true;
  rep.pole_order = 2;
  rep.satake_source = [](std::int64_t p) { return SatakeLocal{p, {cplx(1.0, 0.0), cplx(1.0, 0.0)}}; };
  return rep;
}

RepDescriptor rep_by_name(const std::string& name, std::int64_t prime_bound) {
  if (name == "delta") return delta_rep(prime_bound);
  if (name == "sym2") return sym_power_rep(delta_rep(prime_bound), 2);
  if (name == "sym3") return sym_power_rep(delta_rep(prime_bound), 3);
  if (name == "formal_ones") return formal_ones_rep();
  fail(ErrorKind::domain, "unknown representation name '" + name + "'");
}

std::vector<cplx> complete_homogeneous(const std::vector<cplx>& params, int kmax) {
  const std::size_t n = params.size();
  std::vector<cplx> e(n + 1, cplx(0.0, 0.0));
  e[0] = 1.0;
  for (const auto& a : params) {
    for (std::size_t j = n; j >= 1; --j) e[j] += a * e[j - 1];
  }
  std::vector<cplx> h(static_cast<std::size_t>(kmax) + 1, cplx(0.0, 0.0));
  h[0] = 1.0;
  for (int k = 1; k <= kmax; ++k) {
    cplx acc(0.0, 0.0);
    for (int j = 1; j <= k && j <= static_cast<int>(n); ++j) {
      const cplx term = e[static_cast<std::size_t>(j)] * h[static_cast<std::size_t>(k - j)];
      acc += (j % 2 == 1) ? term : -term;
    }
    h[static_cast<std::size_t>(k)] = acc;
  }
  return h;
}

std::vector<std::int64_t> smallest_prime_factor_sieve(std::int64_t n) {
  std::vector<std::int64_t> spf(static_cast<std::size_t>(std::max<std::int64_t>(n, 1) + 1), 0);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (spf[static_cast<std::size_t>(i)] != 0) continue;
    for (std::int64_t j = i; j <= n; j += i) {
      if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = i;
    }
  }
  return spf;
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n + 1), false);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) fail(ErrorKind::domain, "euler_phi: n must be positive");
  std::int64_t result = n;
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

CoeffTable coeff_from_satake(const RepDescriptor& rep, std::int64_t M, std::int64_t ceiling) {
  check_bound(M, ceiling, "coeff_from_satake");
  if (!rep.satake_source) fail(ErrorKind::precondition, "coeff_from_satake: descriptor has no Satake source");
  std::vector<cplx> c(static_cast<std::size_t>(M + 1), cplx(0.0, 0.0));
  c[1] = 1.0;
  for (std::int64_t p : primes_up_to(M)) {
    const auto local = rep.satake_source(p);
    if (static_cast<int>(local.params.size()) != rep.degree) {
      fail(ErrorKind::precondition, "coeff_from_satake: Satake parameter count mismatch at p=" + std::to_string(p));
    }
    int kmax = 0;
    for (std::int64_t pk = p; pk <= M; pk *= p) {
      ++kmax;
      if (pk > M / p) break;
    }
    const auto h = complete_homogeneous(local.params, kmax);
    std::int64_t pk = 1;
    for (int k = 1; k <= kmax; ++k) {
      pk *= p;
      c[static_cast<std::size_t>(pk)] = h[static_cast<std::size_t>(k)];
    }
  }
  const auto spf = smallest_prime_factor_sieve(M);
  // prime_power_part[m] = p^v_p(m) for p = spf(m).
  std::vector<std::int64_t> ppart(static_cast<std::size_t>(M + 1), 1);
  for (std::int64_t m = 2; m <= M; ++m) {
    const std::int64_t p = spf[static_cast<std::size_t>(m)];
    const std::int64_t rest = m / p;
    ppart[static_cast<std::size_t>(m)] =
        (rest > 1 && spf[static_cast<std::size_t>(rest)] == p) ? ppart[static_cast<std::size_t>(rest)] * p : p;
    const std::int64_t pa = ppart[static_cast<std::size_t>(m)];
    if (pa != m) c[static_cast<std::size_t>(m)] = c[static_cast<std::size_t>(pa)] * c[static_cast<std::size_t>(m / pa)];
  }
  c.erase(c.begin());
  return CoeffTable(rep.name, rep.degree, std::move(c));
}

cplx unit_root(std::int64_t r, std::int64_t N) {
  if (N <= 0) fail(ErrorKind::domain, "unit_root: N must be positive");
  r %= N;
  if (r < 0) r += N;
  if ((4 * r) % N == 0) {
    switch ((4 * r) / N) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(N);
  return {std::cos(angle), std::sin(angle)};
}

cplx DirichletChar::operator()(std::int64_t a) const {
  std::int64_t r = a % modulus;
  if (r < 0) r += modulus;
  return values[static_cast<std::size_t>(r)];
}

namespace {

bool cyclic_unit_group(std::int64_t q) {
  if (q == 1 || q == 2 || q == 4) return true;
  if (q % 2 == 0) return false;
  std::int64_t p = 3;
  while (q % p != 0) p += 2;
  std::int64_t m = q;
  while (m % p == 0) m /= p;
  return m == 1;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t q) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % q);
}

std::int64_t pow_mod(std::int64_t g, std::int64_t e, std::int64_t q) {
  std::int64_t result = 1 % q;
  g %= q;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, g, q);
    g = mul_mod(g, g, q);
    e >>= 1;
  }
  return result;
}

std::int64_t primitive_root(std::int64_t q, std::int64_t phi) {
  if (q <= 2) return 1;
  std::vector<std::int64_t> factors;
  std::int64_t m = phi;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    factors.push_back(p);
    while (m % p == 0) m /= p;
  }
  if (m > 1) factors.push_back(m);
  for (std::int64_t g = 2; g < q; ++g) {
    if (std::gcd(g, q) != 1) continue;
    bool ok = true;
    for (auto f : factors) {
      if (pow_mod(g, phi / f, q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  fail(ErrorKind::unsupported, "no primitive root modulo " + std::to_string(q));
}

// True when chi(a) = 1 for every unit a = 1 mod d, i.e. chi factors through (Z/d)^x.
bool factors_through(const DirichletChar& chi, std::int64_t d) {
  const std::int64_t q = chi.modulus;
  for (std::int64_t a = 1; a < q + 1; a += d) {
    if (std::gcd(a, q) != 1) continue;
    if (std::abs(chi(a) - cplx(1.0, 0.0)) > 1e-12) return false;
  }
  return true;
}

std::vector<std::int64_t> divisors(std::int64_t q) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= q; ++d) {
    if (q % d == 0) out.push_back(d);
  }
  return out;
}

bool primitive_check(const DirichletChar& chi) {
  if (chi.modulus == 1) return true;
  for (std::int64_t d : divisors(chi.modulus)) {
    if (d == chi.modulus) break;
    if (factors_through(chi, d)) return false;
  }
  return true;
}

}  // namespace

DirichletChar dirichlet_char(std::int64_t q, std::int64_t index) {
  if (q < 1) fail(ErrorKind::domain, "dirichlet_char: modulus must be positive");
  if (!cyclic_unit_group(q)) {
    fail(ErrorKind::unsupported, "dirichlet_char: unit group mod " + std::to_string(q) + " is not cyclic");
  }
  const std::int64_t phi = euler_phi(q);
  if (index < 0 || index >= phi) {
    fail(ErrorKind::domain, "dirichlet_char: index must lie in [0, phi(q))");
  }
  DirichletChar chi;
  chi.modulus = q;
  chi.values.assign(static_cast<std::size_t>(q), cplx(0.0, 0.0));
  if (q == 1) {
    chi.values[0] = 1.0;
  } else {
    const std::int64_t g = primitive_root(q, phi);
    std::int64_t x = 1;
    for (std::int64_t j = 0; j < phi; ++j) {
      chi.values[static_cast<std::size_t>(x)] = unit_root(mul_mod(index, j, phi), phi);
      x = mul_mod(x, g, q);
    }
  }
  chi.parity = chi(-1).real() > 0.0 ? 1 : -1;
  chi.primitive = primitive_check(chi);
  return chi;
}

std::vector<DirichletChar> all_characters(std::int64_t q) {
  std::vector<DirichletChar> out;
  const std::int64_t phi = euler_phi(q);
  out.reserve(static_cast<std::size_t>(phi));
  for (std::int64_t i = 0; i < phi; ++i) out.push_back(dirichlet_char(q, i));
  return out;
}

DirichletChar inducing_primitive(const DirichletChar& chi) {
  if (chi.primitive) return chi;
  const std::int64_t q = chi.modulus;
  for (std::int64_t d : divisors(q)) {
    if (!factors_through(chi, d)) continue;
    DirichletChar star;
    star.modulus = d;
    star.values.assign(static_cast<std::size_t>(d), cplx(0.0, 0.0));
    for (std::int64_t b = 0; b < d; ++b) {
      if (std::gcd(b, d) != 1) continue;
      std::int64_t a = b;
      while (std::gcd(a, q) != 1) a += d;
      star.values[static_cast<std::size_t>(b)] = chi(a);
    }
    star.parity = star(-1).real() > 0.0 ? 1 : -1;
    star.primitive = true;
    return star;
  }
  return chi;
}

cplx gauss_sum(const DirichletChar& chi) {
  if (!chi.primitive) fail(ErrorKind::precondition, "gauss_sum: character is not primitive");
  cplx total(0.0, 0.0);
  for (std::int64_t a = 0; a < chi.modulus; ++a) total += chi(a) * unit_root(a, chi.modulus);
  return total;
}

double rankin_selberg_partial(const CoeffTable& table, std::int64_t Y) {
  if (Y < 1) fail(ErrorKind::domain, "rankin_selberg_partial: Y must be >= 1");
  if (Y > table.bound()) fail(ErrorKind::coverage, "rankin_selberg_partial: Y beyond table bound");
  double total = 0.0;
  for (std::int64_t m = 1; m <= Y; ++m) total += std::norm(table[m]);
  return total;
}

double empirical_growth_exponent(const CoeffTable& table, std::int64_t M) {
  M = std::min(M, table.bound());
  const auto lo = std::max<std::int64_t>(2, static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(M)))));
  double best = 0.0;
  for (std::int64_t m = lo; m <= M; ++m) {
    const double a = std::abs(table[m]);
    if (a == 0.0) continue;
    best = std::max(best, std::log(a) / std::log(static_cast<double>(m)));
  }
  return best;
}

void write_table(std::ostream& out, const CoeffTable& table) {
  out << "# rep=" << table.rep_name() << " degree=" << table.degree() << " bound=" << table.bound() << "\n";
  char buf[96];
  for (std::int64_t m = 1; m <= table.bound(); ++m) {
    std::snprintf(buf, sizeof buf, "%lld %.17g %.17g\n", static_cast<long long>(m), table[m].real(), table[m].imag());
    out << buf;
  }
}

CoeffTable read_table(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) fail(ErrorKind::parse, "coefficient table: empty input");
  std::string name;
  int degree = 0;
  long long bound = -1;
  {
    std::istringstream hs(header);
    std::string hash, tok;
    hs >> hash;
    if (hash != "#") fail(ErrorKind::parse, "coefficient table: header must start with '#'");
    while (hs >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) fail(ErrorKind::parse, "coefficient table: malformed header token '" + tok + "'");
      const auto key = tok.substr(0, eq);
      const auto val = tok.substr(eq + 1);
      if (key == "rep") name = val;
      else if (key == "degree") degree = std::stoi(val);
      else if (key == "bound") bound = std::stoll(val);
      else fail(ErrorKind::parse, "coefficient table: unknown header key '" + key + "'");
    }
  }
  if (bound < 1 || degree < 1) fail(ErrorKind::parse, "coefficient table: header lacks degree or bound");
  std::vector<cplx> values;
  values.reserve(static_cast<std::size_t>(bound));
  std::string line;
  long long expected = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    long long m = 0;
    std::string re_s, im_s;
    if (!(ls >> m >> re_s >> im_s)) fail(ErrorKind::parse, "coefficient table: bad line " + std::to_string(expected + 1));
    if (m != expected) fail(ErrorKind::parse, "coefficient table: expected index " + std::to_string(expected));
    values.emplace_back(std::strtod(re_s.c_str(), nullptr), std::strtod(im_s.c_str(), nullptr));
    ++expected;
  }
  if (static_cast<long long>(values.size()) != bound) fail(ErrorKind::parse, "coefficient table: line count differs from bound");
  return CoeffTable(name, degree, std::move(values));
}

}  // namespace scp::arith
