#include "scp/quadforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "scp/errors.hpp"

namespace scp::quadforms {

namespace {

// Bareiss fraction-free determinant of the leading r x r block.
__int128 leading_minor(const std::vector<std::int64_t>& b, int k, int r) {
  std::vector<__int128> m(static_cast<std::size_t>(r * r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m[static_cast<std::size_t>(i * r + j)] = b[static_cast<std::size_t>(i * k + j)];
  __int128 prev = 1;
  int sign = 1;
  for (int p = 0; p < r - 1; ++p) {
    if (m[static_cast<std::size_t>(p * r + p)] == 0) {
      int swap_row = -1;
      for (int i = p + 1; i < r; ++i) {
        if (m[static_cast<std::size_t>(i * r + p)] != 0) {
          swap_row = i;
          break;
        }
      }
      if (swap_row < 0) return 0;
      for (int j = 0; j < r; ++j) std::swap(m[static_cast<std::size_t>(p * r + j)], m[static_cast<std::size_t>(swap_row * r + j)]);
      sign = -sign;
    }
    for (int i = p + 1; i < r; ++i) {
      for (int j = p + 1; j < r; ++j) {
        m[static_cast<std::size_t>(i * r + j)] =
            (m[static_cast<std::size_t>(i * r + j)] * m[static_cast<std::size_t>(p * r + p)] -
             m[static_cast<std::size_t>(i * r + p)] * m[static_cast<std::size_t>(p * r + j)]) /
            prev;
      }
    }
    prev = m[static_cast<std::size_t>(p * r + p)];
  }
  return sign * m[static_cast<std::size_t>((r - 1) * r + (r - 1))];
}

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    fail(ErrorKind::parse, "cannot parse rational '" + s + "'");
  }
}

}  // namespace

QuadraticForm QuadraticForm::from_upper_triangle(int k, const std::vector<std::int64_t>& upper) {
  if (k < 1) fail(ErrorKind::domain, "quadratic form: k must be >= 1");
  if (upper.size() != static_cast<std::size_t>(k * (k + 1) / 2)) {
    fail(ErrorKind::domain, "quadratic form: expected " + std::to_string(k * (k + 1) / 2) + " upper-triangle entries");
  }
  QuadraticForm f;
  f.k_ = k;
  f.b_.assign(static_cast<std::size_t>(k * k), 0);
  std::size_t idx = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      f.b_[static_cast<std::size_t>(i * k + j)] = upper[idx];
      f.b_[static_cast<std::size_t>(j * k + i)] = upper[idx];
      ++idx;
    }
  }
  for (int i = 0; i < k; ++i) {
    if (f.b_[static_cast<std::size_t>(i * k + i)] % 2 != 0) {
      fail(ErrorKind::domain, "quadratic form: 2A must have even diagonal for f to be integer-valued");
    }
  }
  for (int r = 1; r <= k; ++r) {
    if (leading_minor(f.b_, k, r) <= 0) fail(ErrorKind::domain, "quadratic form is not positive definite");
  }
  return f;
}

QuadraticForm QuadraticForm::parse(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) fail(ErrorKind::parse, "quadratic form: expected 'k;b11 b12 ...'");
  int k = 0;
  std::vector<std::int64_t> upper;
  try {
    k = std::stoi(text.substr(0, semi));
    std::istringstream in(text.substr(semi + 1));
    std::string tok;
    while (in >> tok) upper.push_back(std::stoll(tok));
  } catch (const std::exception&) {
    fail(ErrorKind::parse, "quadratic form: malformed '" + text + "'");
  }
  return from_upper_triangle(k, upper);
}

std::int64_t QuadraticForm::value(const std::int64_t* a) const noexcept {
  std::int64_t twice = 0;
  for (int i = 0; i < k_; ++i) {
    std::int64_t row = 0;
    for (int j = 0; j < k_; ++j) row += b_[static_cast<std::size_t>(i * k_ + j)] * a[j];
    twice += a[i] * row;
  }
  return twice / 2;
}

std::vector<std::vector<Rational>> QuadraticForm::inverse_gram() const {
  const int k = k_;
  std::vector<std::vector<Rational>> m(static_cast<std::size_t>(k), std::vector<Rational>(static_cast<std::size_t>(2 * k)));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) m[i][j] = gram(i, j);
    m[i][k + i] = 1;
  }
  for (int c = 0; c < k; ++c) {
    int pivot = c;
    while (m[pivot][c].numerator() == 0) ++pivot;
    std::swap(m[pivot], m[c]);
    const Rational inv = Rational(1) / m[c][c];
    for (auto& x : m[c]) x *= inv;
    for (int r = 0; r < k; ++r) {
      if (r == c || m[r][c].numerator() == 0) continue;
      const Rational factor = m[r][c];
      for (int j = 0; j < 2 * k; ++j) m[r][j] -= factor * m[c][j];
    }
  }
  std::vector<std::vector<Rational>> inv(static_cast<std::size_t>(k), std::vector<Rational>(static_cast<std::size_t>(k)));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) inv[i][j] = m[i][k + j];
  return inv;
}

std::string QuadraticForm::describe() const {
  std::ostringstream os;
  os << k_ << ";";
  for (int i = 0; i < k_; ++i)
    for (int j = i; j < k_; ++j) os << (i == 0 && j == 0 ? "" : " ") << twice_gram(i, j);
  return os.str();
}

QuadraticForm x_squared() { return QuadraticForm::from_upper_triangle(1, {2}); }
QuadraticForm sum_of_two_squares() { return QuadraticForm::from_upper_triangle(2, {2, 0, 2}); }

SphericalPoly::SphericalPoly(int k, std::vector<Monomial> terms) : k_(k) {
  std::map<std::vector<int>, Rational> merged;
  for (auto& t : terms) {
    if (static_cast<int>(t.exponents.size()) != k) fail(ErrorKind::domain, "polynomial: exponent tuple length differs from k");
    for (int e : t.exponents) {
      if (e < 0) fail(ErrorKind::domain, "polynomial: negative exponent");
    }
    merged[t.exponents] += t.coeff;
  }
  bool first = true;
  for (auto& [exps, c] : merged) {
    if (c.numerator() == 0) continue;
    const int deg = std::accumulate(exps.begin(), exps.end(), 0);
    if (first) {
      degree_ = deg;
      first = false;
    } else if (deg != degree_) {
      fail(ErrorKind::domain, "polynomial is not homogeneous");
    }
    terms_.push_back({exps, c});
  }
}

SphericalPoly SphericalPoly::constant(int k) {
  return SphericalPoly(k, {Monomial{std::vector<int>(static_cast<std::size_t>(k), 0), Rational(1)}});
}

SphericalPoly SphericalPoly::parse(int k, const std::string& text) {
  std::vector<Monomial> terms;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }), item.end());
    if (item.empty()) continue;
    const auto colon = item.find(':');
    Monomial m;
    m.coeff = parse_rational(item.substr(0, colon));
    m.exponents.assign(static_cast<std::size_t>(k), 0);
    if (colon != std::string::npos) {
      std::stringstream es(item.substr(colon + 1));
      std::string e;
      std::size_t i = 0;
      while (std::getline(es, e, ',')) {
        if (i >= m.exponents.size()) fail(ErrorKind::parse, "polynomial: too many exponents in '" + item + "'");
        try {
          m.exponents[i++] = std::stoi(e);
        } catch (const std::exception&) {
          fail(ErrorKind::parse, "polynomial: bad exponent in '" + item + "'");
        }
      }
      if (i != m.exponents.size()) fail(ErrorKind::parse, "polynomial: too few exponents in '" + item + "'");
    }
    terms.push_back(std::move(m));
  }
  return SphericalPoly(k, std::move(terms));
}

bool SphericalPoly::is_constant_one() const {
  return terms_.size() == 1 && degree_ == 0 && terms_[0].coeff == Rational(1);
}

Rational SphericalPoly::evaluate_exact(const std::int64_t* a) const {
  Rational total(0);
  for (const auto& t : terms_) {
    std::int64_t mono = 1;
    for (int i = 0; i < k_; ++i) mono *= ipow(a[i], t.exponents[static_cast<std::size_t>(i)]);
    total += t.coeff * mono;
  }
  return total;
}

double SphericalPoly::evaluate(const std::int64_t* a) const {
  double total = 0.0;
  for (const auto& t : terms_) {
    double mono = 1.0;
    for (int i = 0; i < k_; ++i) mono *= static_cast<double>(ipow(a[i], t.exponents[static_cast<std::size_t>(i)]));
    total += boost::rational_cast<double>(t.coeff) * mono;
  }
  return total;
}

LatticePoints enumerate_points(const QuadraticForm& f, std::int64_t M, std::size_t ceiling) {
  if (M < 0) fail(ErrorKind::domain, "enumerate: M must be >= 0");
  const int k = f.k();
  // f(a) = sum_i d_i (a_i + sum_{j>i} u_ij a_j)^2
  std::vector<double> d(static_cast<std::size_t>(k));
  std::vector<double> u(static_cast<std::size_t>(k * k), 0.0);
  for (int i = 0; i < k; ++i) {
    double dii = 0.5 * static_cast<double>(f.twice_gram(i, i));
    for (int l = 0; l < i; ++l) dii -= d[l] * u[static_cast<std::size_t>(l * k + i)] * u[static_cast<std::size_t>(l * k + i)];
    d[static_cast<std::size_t>(i)] = dii;
    for (int j = i + 1; j < k; ++j) {
      double v = 0.5 * static_cast<double>(f.twice_gram(i, j));
      for (int l = 0; l < i; ++l) v -= d[l] * u[static_cast<std::size_t>(l * k + i)] * u[static_cast<std::size_t>(l * k + j)];
      u[static_cast<std::size_t>(i * k + j)] = v / dii;
    }
  }

  LatticePoints out;
  out.k = k;
  std::vector<std::int64_t> a(static_cast<std::size_t>(k), 0);
  const double slack = 1e-9 * (static_cast<double>(M) + 1.0);
  const double budget0 = static_cast<double>(M);

  // Iterative depth-first walk from coordinate k-1 down to 0.
  std::vector<std::int64_t> hi(static_cast<std::size_t>(k));
  std::vector<double> budget(static_cast<std::size_t>(k + 1));
  budget[static_cast<std::size_t>(k)] = budget0;
  auto center = [&](int i) {
    double c = 0.0;
    for (int j = i + 1; j < k; ++j) c -= u[static_cast<std::size_t>(i * k + j)] * static_cast<double>(a[static_cast<std::size_t>(j)]);
    return c;
  };
  auto open_level = [&](int i) {
    const double c = center(i);
    const double rad = std::sqrt(std::max(0.0, budget[static_cast<std::size_t>(i + 1)] + slack) / d[static_cast<std::size_t>(i)]);
    a[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::ceil(c - rad - 1e-9));
    hi[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::floor(c + rad + 1e-9));
  };
  int level = k - 1;
  open_level(level);
  while (level < k) {
    const std::size_t li = static_cast<std::size_t>(level);
    if (a[li] > hi[li]) {
      ++level;
      if (level < k) ++a[static_cast<std::size_t>(level)];
      continue;
    }
    const double t = static_cast<double>(a[li]) - center(level);
    budget[li] = budget[li + 1] - d[li] * t * t;
    if (level == 0) {
      const std::int64_t m = f.value(a);
      if (m <= M) {
        out.norms.push_back(m);
        out.coords.insert(out.coords.end(), a.begin(), a.end());
        if (out.norms.size() > ceiling) fail(ErrorKind::resource, "enumerate: representation count exceeds ceiling");
      }
      ++a[0];
    } else {
      --level;
      open_level(level);
    }
  }

  std::vector<std::size_t> order(out.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (out.norms[x] != out.norms[y]) return out.norms[x] < out.norms[y];
    return std::lexicographical_compare(out.vec(x), out.vec(x) + k, out.vec(y), out.vec(y) + k);
  });
  LatticePoints sorted;
  sorted.k = k;
  sorted.norms.reserve(out.size());
  sorted.coords.reserve(out.coords.size());
  for (auto idx : order) {
    sorted.norms.push_back(out.norms[idx]);
    sorted.coords.insert(sorted.coords.end(), out.vec(idx), out.vec(idx) + k);
  }
  return sorted;
}

std::map<std::int64_t, std::vector<Vec>> enumerate_reps(const QuadraticForm& f, std::int64_t M, std::size_t ceiling) {
  const auto pts = enumerate_points(f, M, ceiling);
  std::map<std::int64_t, std::vector<Vec>> groups;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    groups[pts.norms[i]].emplace_back(pts.vec(i), pts.vec(i) + pts.k);
  }
  return groups;
}

ThetaCoeffs theta_coeffs(const QuadraticForm& f, const SphericalPoly& p, std::int64_t M) {
  if (p.k() != f.k()) fail(ErrorKind::precondition, "theta_coeffs: polynomial and form dimensions differ");
  const auto pts = enumerate_points(f, M);
  const auto& terms = p.terms();
  // Exact integer moment sums per monomial, combined with the rational coefficients at the end.
  std::vector<std::vector<__int128>> moments(terms.size(), std::vector<__int128>(static_cast<std::size_t>(M + 1), 0));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::int64_t* a = pts.vec(i);
    for (std::size_t t = 0; t < terms.size(); ++t) {
      __int128 mono = 1;
      for (int j = 0; j < f.k(); ++j) {
        for (int e = 0; e < terms[t].exponents[static_cast<std::size_t>(j)]; ++e) mono *= a[j];
      }
      moments[t][static_cast<std::size_t>(pts.norms[i])] += mono;
    }
  }
  ThetaCoeffs out;
  out.bound = M;
  out.exact.assign(static_cast<std::size_t>(M + 1), Rational(0));
  out.r.assign(static_cast<std::size_t>(M + 1), 0.0);
  constexpr __int128 lim = static_cast<__int128>(INT64_MAX);
  for (std::int64_t m = 0; m <= M; ++m) {
    Rational total(0);
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const __int128 s = moments[t][static_cast<std::size_t>(m)];
      if (s > lim || s < -lim) fail(ErrorKind::resource, "theta_coeffs: moment sum overflows 64 bits");
      total += terms[t].coeff * Rational(static_cast<std::int64_t>(s));
    }
    out.exact[static_cast<std::size_t>(m)] = total;
    out.r[static_cast<std::size_t>(m)] = boost::rational_cast<double>(total);
  }
  return out;
}

bool harmonicity_check(const QuadraticForm& f, const SphericalPoly& p) {
  if (p.k() != f.k()) fail(ErrorKind::precondition, "harmonicity_check: dimensions differ");
  const int k = f.k();
  const auto inv = f.inverse_gram();
  std::map<std::vector<int>, Rational> result;
  for (const auto& term : p.terms()) {
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        if (inv[i][j].numerator() == 0) continue;
        auto e = term.exponents;
        std::int64_t factor = 0;
        if (i == j) {
          factor = static_cast<std::int64_t>(e[i]) * (e[i] - 1);
          if (factor == 0) continue;
          e[i] -= 2;
        } else {
          factor = static_cast<std::int64_t>(e[i]) * e[j];
          if (factor == 0) continue;
          e[i] -= 1;
          e[j] -= 1;
        }
        result[e] += inv[i][j] * term.coeff * factor;
      }
    }
  }
  return std::all_of(result.begin(), result.end(), [](const auto& kv) { return kv.second.numerator() == 0; });
}

AutomorphCount automorph_count(const QuadraticForm& f) {
  if (f.k() != 2) fail(ErrorKind::domain, "automorph_count: only binary forms (k = 2) are supported");
  const std::int64_t n1 = f.twice_gram(0, 0) / 2;
  const std::int64_t n2 = f.twice_gram(1, 1) / 2;
  const auto reps = enumerate_reps(f, std::max(n1, n2));
  const auto& first = reps.at(n1);
  const auto& second = reps.at(n2);
  AutomorphCount out;
  for (const auto& c1 : first) {
    for (const auto& c2 : second) {
      // Bilinear form of 2A between the candidate columns.
      const std::int64_t cross = c1[0] * (f.twice_gram(0, 0) * c2[0] + f.twice_gram(0, 1) * c2[1]) +
                                 c1[1] * (f.twice_gram(1, 0) * c2[0] + f.twice_gram(1, 1) * c2[1]);
      if (cross != f.twice_gram(0, 1)) continue;
      const std::int64_t det = c1[0] * c2[1] - c1[1] * c2[0];
      if (det != 1 && det != -1) continue;
      ++out.full;
      if (det == 1) ++out.rotations;
    }
  }
  return out;
}

}  // namespace scp::quadforms
