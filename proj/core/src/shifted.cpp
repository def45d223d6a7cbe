#include "scp/shifted.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "scp/errors.hpp"
#include "scp/summation.hpp"

namespace scp::shifted {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct IndexRange {
  std::int64_t lo = 1;
  std::int64_t hi = 0;
};

// Positive integers n with n / scale inside the weight support.
IndexRange weighted_range(const WeightFn& W, double scale) {
  const auto [a, b] = W.support();
  IndexRange r;
  r.lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(scale * a)));
  r.hi = static_cast<std::int64_t>(std::floor(scale * b));
  return r;
}

void require_positive_scale(double Y, const char* who) {
  if (!(Y > 0.0) || !std::isfinite(Y)) fail(ErrorKind::domain, std::string(who) + ": Y must be positive");
}

template <class Visit>
void scan_linear(std::int64_t l1, std::int64_t l2, std::int64_t alpha, double Y, const WeightFn& W1,
                 const WeightFn& W2, Visit&& visit) {
  if (l1 < 1 || l2 < 1) fail(ErrorKind::domain, "linear shift: l1 and l2 must be positive");
  if (alpha == 0) fail(ErrorKind::domain, "linear shift: alpha must be nonzero");
  require_positive_scale(Y, "linear shift");
  W1.validate();
  W2.validate();
  const IndexRange g1 = weighted_range(W1, Y / static_cast<double>(l1));
  const IndexRange g2 = weighted_range(W2, Y / static_cast<double>(l2));
  for (std::int64_t a = g1.lo; a <= g1.hi; ++a) {
    const std::int64_t d = l1 * a - alpha;
    if (d <= 0 || d % l2 != 0) continue;
    const std::int64_t b = d / l2;
    if (b < g2.lo || b > g2.hi) continue;
    const double w1 = W1(static_cast<double>(a * l1) / Y);
    const double w2 = W2(static_cast<double>(b * l2) / Y);
    if (w1 == 0.0 || w2 == 0.0) continue;
    visit(a, b, w1, w2);
  }
}

}  // namespace

WeightFamily parse_weight_family(const std::string& name) {
  if (name == "gaussian_bump" || name == "gaussian") return WeightFamily::gaussian_bump;
  if (name == "compact_bump" || name == "compact") return WeightFamily::compact_bump;
  fail(ErrorKind::parse, "unknown weight family '" + name + "'");
}

const char* weight_family_name(WeightFamily family) noexcept {
  return family == WeightFamily::gaussian_bump ? "gaussian_bump" : "compact_bump";
}

void WeightFn::validate() const {
  if (!(center > 0.0) || !(width > 0.0)) fail(ErrorKind::domain, "weight: center and width must be positive");
}

double WeightFn::operator()(double y) const noexcept {
  if (!(y > 0.0)) return 0.0;
  if (family == WeightFamily::gaussian_bump) {
    const double l = std::log(y / center);
    return std::exp(-l * l / (2.0 * width * width));
  }
  const double t = std::log2(y / center);
  if (std::fabs(t) >= 1.0) return 0.0;
  return std::exp(-t * t / (width * (1.0 - t * t)));
}

std::pair<double, double> WeightFn::support(double eps) const {
  validate();
  if (family == WeightFamily::compact_bump) return {0.5 * center, 2.0 * center};
  if (!(eps > 0.0 && eps < 1.0)) fail(ErrorKind::domain, "weight support: eps must lie in (0, 1)");
  const double r = width * std::sqrt(2.0 * std::log(1.0 / eps));
  return {center * std::exp(-r), center * std::exp(r)};
}

ShiftSumResult quad_shift_sum(const CoeffTable& table, const QuadraticForm& f, const SphericalPoly& p,
                              std::int64_t alpha, double Y, const WeightFn& W, unsigned threads) {
  if (p.k() != f.k()) fail(ErrorKind::precondition, "quad_shift_sum: polynomial and form dimensions differ");
  require_positive_scale(Y, "quad_shift_sum");
  W.validate();
  const IndexRange range = weighted_range(W, Y);
  ShiftSumResult out;
  out.n_min = range.lo;
  out.n_max = range.hi;
  if (range.hi < range.lo || range.hi - alpha < 0) return out;
  if (range.hi > table.bound()) {
    fail(ErrorKind::coverage, "quad_shift_sum: weight support reaches " + std::to_string(range.hi) +
                                  " beyond table bound " + std::to_string(table.bound()));
  }
  const auto pts = quadforms::enumerate_points(f, range.hi - alpha);
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::int64_t n = pts.norms[i] + alpha;
    if (n < range.lo || n > range.hi) continue;
    if (W(static_cast<double>(n) / Y) == 0.0) continue;
    active.push_back(i);
  }
  out.term_count = active.size();
  out.value = deterministic_sum(
      active.size(),
      [&](std::size_t j) {
        const std::size_t i = active[j];
        const std::int64_t n = pts.norms[i] + alpha;
        const double nd = static_cast<double>(n);
        return p.evaluate(pts.vec(i)) * table[n] * (W(nd / Y) / std::sqrt(nd));
      },
      threads);
  return out;
}

ShiftSumResult quad_shift_sum_theta(const CoeffTable& table, const ThetaCoeffs& theta, std::int64_t alpha,
                                    double Y, const WeightFn& W) {
  require_positive_scale(Y, "quad_shift_sum_theta");
  W.validate();
  const IndexRange range = weighted_range(W, Y);
  ShiftSumResult out;
  out.n_min = range.lo;
  out.n_max = range.hi;
  if (range.hi < range.lo || range.hi - alpha < 0) return out;
  if (range.hi > table.bound()) fail(ErrorKind::coverage, "quad_shift_sum_theta: weight support exceeds table bound");
  if (range.hi - alpha > theta.bound) fail(ErrorKind::coverage, "quad_shift_sum_theta: theta coefficients too short");
  ComplexCompensatedSum acc;
  for (std::int64_t m = std::max<std::int64_t>(0, range.lo - alpha); m <= range.hi - alpha; ++m) {
    const double r = theta.r[static_cast<std::size_t>(m)];
    if (r == 0.0) continue;
    const std::int64_t n = m + alpha;
    const double nd = static_cast<double>(n);
    const double w = W(nd / Y);
    if (w == 0.0) continue;
    ++out.term_count;
    acc.add(r * table[n] * (w / std::sqrt(nd)));
  }
  out.value = acc.value();
  return out;
}

ShiftSumResult quad_shift_sum_theta(const CoeffTable& table, const QuadraticForm& f, const SphericalPoly& p,
                                    std::int64_t alpha, double Y, const WeightFn& W) {
  require_positive_scale(Y, "quad_shift_sum_theta");
  const IndexRange range = weighted_range(W, Y);
  const std::int64_t M = std::max<std::int64_t>(0, range.hi - alpha);
  return quad_shift_sum_theta(table, quadforms::theta_coeffs(f, p, M), alpha, Y, W);
}

LinearShiftResult linear_shift_sum(const CoeffTable& tableA, const CoeffTable& tableB, std::int64_t l1,
                                   std::int64_t l2, std::int64_t alpha, double Y, const WeightFn& W1,
                                   const WeightFn& W2) {
  LinearShiftResult out;
  out.coprimality_flag = std::gcd(l1, alpha) != 1 || std::gcd(l2, alpha) != 1;
  ComplexCompensatedSum acc;
  scan_linear(l1, l2, alpha, Y, W1, W2, [&](std::int64_t a, std::int64_t b, double w1, double w2) {
    if (a > tableA.bound() || b > tableB.bound()) {
      fail(ErrorKind::coverage, "linear_shift_sum: index pair (" + std::to_string(a) + ", " + std::to_string(b) +
                                    ") outside the coefficient tables");
    }
    ++out.term_count;
    acc.add(tableA[a] * std::conj(tableB[b]) * (w1 * w2 / std::sqrt(static_cast<double>(a) * static_cast<double>(b))));
  });
  out.value = acc.value();
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> linear_shift_pairs(std::int64_t l1, std::int64_t l2,
                                                                      std::int64_t alpha, double Y,
                                                                      const WeightFn& W1, const WeightFn& W2) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  scan_linear(l1, l2, alpha, Y, W1, W2, [&](std::int64_t a, std::int64_t b, double, double) { pairs.emplace_back(a, b); });
  return pairs;
}

FourierSeries assemble_projected_series(const CoeffTable& table, int n, const WeightFn& W, double Y,
                                        std::int64_t M, std::int64_t alpha) {
  require_positive_scale(Y, "assemble_projected_series");
  W.validate();
  if (M < 0) fail(ErrorKind::domain, "assemble_projected_series: M must be >= 0");
  if (M > table.bound()) fail(ErrorKind::coverage, "assemble_projected_series: M exceeds table bound");
  FourierSeries out;
  out.truncation = M;
  out.global_y_power = 0.0;
  out.note = "degree " + std::to_string(n) + "; coefficient c(g) g^-1/2 exp(2 pi g/Y) W(g/Y) exp(-2 pi alpha/Y)";
  const double shift = std::exp(-kTwoPi * static_cast<double>(alpha) / Y);
  for (std::int64_t g = 1; g <= M; ++g) {
    const double gd = static_cast<double>(g);
    const double w = W(gd / Y);
    if (w == 0.0 || table[g] == cplx(0.0, 0.0)) continue;
    out.coeffs[g] = table[g] * (std::exp(kTwoPi * gd / Y) * w * shift / std::sqrt(gd));
  }
  return out;
}

FourierSeries theta_series(const ThetaCoeffs& theta, int k, double Y) {
  require_positive_scale(Y, "theta_series");
  FourierSeries out;
  out.truncation = theta.bound;
  out.global_y_power = -0.25 * k;
  out.note = "theta coefficient r(m) exp(-2 pi m/Y)";
  for (std::int64_t m = 0; m <= theta.bound; ++m) {
    const double r = theta.r[static_cast<std::size_t>(m)];
    if (r == 0.0) continue;
    out.coeffs[m] = r * std::exp(-kTwoPi * static_cast<double>(m) / Y);
  }
  return out;
}

UnfoldCheck fourier_unfold_check(const FourierSeries& F, const FourierSeries& G, std::int64_t alpha,
                                 std::int64_t N) {
  for (const auto* S : {&F, &G}) {
    if (!S->coeffs.empty()) {
      const std::int64_t top = std::max(std::llabs(S->coeffs.begin()->first), std::llabs(S->coeffs.rbegin()->first));
      if (top > S->truncation) fail(ErrorKind::precondition, "fourier_unfold_check: frequency beyond truncation");
    }
  }
  const std::int64_t span = F.truncation + G.truncation;
  if (N <= 2 * span || N <= span + std::llabs(alpha)) {
    fail(ErrorKind::alias, "fourier_unfold_check: N = " + std::to_string(N) + " is below the alias-free bound");
  }
  std::vector<cplx> roots(static_cast<std::size_t>(N));
  for (std::int64_t r = 0; r < N; ++r) roots[static_cast<std::size_t>(r)] = arith::unit_root(r, N);
  auto root = [&](std::int64_t e) {
    e %= N;
    if (e < 0) e += N;
    return roots[static_cast<std::size_t>(e)];
  };
  auto sample = [&](const FourierSeries& S, std::int64_t j) {
    ComplexCompensatedSum acc;
    for (const auto& [g, c] : S.coeffs) acc.add(c * root((g % N) * j));
    return acc.value();
  };
  ComplexCompensatedSum lhs;
  for (std::int64_t j = 0; j < N; ++j) lhs.add(sample(F, j) * std::conj(sample(G, j)) * root(-(alpha % N) * j));
  ComplexCompensatedSum rhs;
  for (const auto& [m, gm] : G.coeffs) {
    const auto it = F.coeffs.find(m + alpha);
    if (it != F.coeffs.end()) rhs.add(it->second * std::conj(gm));
  }
  return {lhs.value() / static_cast<double>(N), rhs.value()};
}

GrowthFit growth_fit(const std::vector<std::pair<double, double>>& values) {
  if (values.size() < 4) fail(ErrorKind::degenerate, "growth_fit: need at least 4 points");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto [Y, S] = values[i];
    if (!(Y > 0.0) || (i > 0 && !(Y > values[i - 1].first))) {
      fail(ErrorKind::degenerate, "growth_fit: Y values must be positive and strictly increasing");
    }
    if (!(S > 0.0) || !std::isfinite(S)) fail(ErrorKind::degenerate, "growth_fit: |S(Y)| must be positive and finite");
    xs.push_back(std::log(Y));
    ys.push_back(std::log(S));
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  GrowthFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

std::vector<GrowthPoint> growth_experiment(const CoeffTable& table, const QuadraticForm& f,
                                           const SphericalPoly& p, std::int64_t alpha,
                                           const std::vector<double>& Ys, const WeightFn& W, unsigned threads) {
  std::vector<GrowthPoint> out;
  out.reserve(Ys.size());
  for (double Y : Ys) {
    const auto r = quad_shift_sum(table, f, p, alpha, Y, W, threads);
    out.push_back({Y, r.value, r.term_count});
  }
  return out;
}

double predicted_exponent(int k, std::int64_t alpha, double theta0) {
  const double error_term = (k - 2) / 4.0 + theta0 / 2.0;
  if (k % 2 == 1 && alpha > 0) return std::max((k - 1) / 4.0, error_term);
  return error_term;
}

}  // namespace scp::shifted
