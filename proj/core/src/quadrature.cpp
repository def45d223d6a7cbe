#include "scp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "scp/errors.hpp"
#include "scp/summation.hpp"

namespace scp::special {

namespace {

constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b;
  cplx value;
  double error;
  bool operator<(const Piece& other) const { return error < other.error; }
};

Piece rule(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx kron = kKronrod[7] * fc;
  cplx gauss = kGauss[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kNodes[static_cast<std::size_t>(i)];
    const cplx pair = f(c - dx) + f(c + dx);
    kron += kKronrod[static_cast<std::size_t>(i)] * pair;
    if (i % 2 == 1) gauss += kGauss[static_cast<std::size_t>(i / 2)] * pair;
  }
  kron *= h;
  gauss *= h;
  return Piece{a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) fail(ErrorKind::domain, "quadrature tolerances must be positive");
  if (max_subdivisions < 1) fail(ErrorKind::domain, "max_subdivisions must be >= 1");
  if (!(truncation_radius > 0.0)) fail(ErrorKind::domain, "truncation_radius must be positive");
}

QuadResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg, int initial_pieces) {
  cfg.validate();
  if (a == b) return {};
  initial_pieces = std::max(1, initial_pieces);
  std::priority_queue<Piece> heap;
  const double width = (b - a) / initial_pieces;
  for (int i = 0; i < initial_pieces; ++i) {
    const double lo = a + width * i;
    const double hi = (i + 1 == initial_pieces) ? b : a + width * (i + 1);
    heap.push(rule(f, lo, hi));
  }
  auto totals = [&heap]() {
    ComplexCompensatedSum value;
    double err = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      value.add(copy.top().value);
      err += copy.top().error;
      copy.pop();
    }
    return std::pair<cplx, double>(value.value(), err);
  };
  // Running totals are updated incrementally; the exact re-sum happens at the end.
  cplx value(0.0, 0.0);
  double err = 0.0;
  {
    auto t = totals();
    value = t.first;
    err = t.second;
  }
  int count = static_cast<int>(heap.size());
  while (err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) {
    if (count >= cfg.max_subdivisions) {
      fail(ErrorKind::convergence, "adaptive quadrature exhausted its interval budget (error estimate " +
                                       std::to_string(err) + ")");
    }
    const Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Piece left = rule(f, worst.a, mid);
    const Piece right = rule(f, mid, worst.b);
    heap.push(left);
    heap.push(right);
    ++count;
    value += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    if (count % 64 == 0) {
      auto t = totals();
      value = t.first;
      err = t.second;
    }
  }
  auto t = totals();
  return QuadResult{t.first, t.second, count};
}

QuadResult integrate_left_decaying(const Integrand& f, double top, double floor, double step,
                                   const QuadratureConfig& cfg, double drop) {
  if (!(step > 0.0) || !(top > floor)) fail(ErrorKind::domain, "integrate_left_decaying: bad range");
  const double threshold_factor = std::exp(-drop);
  double peak = 0.0;
  int quiet = 0;
  double x = top;
  double lowest_kept = top;
  double highest_significant = floor;
  while (x > floor) {
    const double mag = std::abs(f(x));
    if (!std::isfinite(mag)) fail(ErrorKind::convergence, "integrand is not finite at x = " + std::to_string(x));
    if (mag > peak) peak = mag;
    if (mag >= peak * threshold_factor && mag > 0.0) {
      quiet = 0;
      lowest_kept = x;
      highest_significant = std::max(highest_significant, x);
    } else if (peak > 0.0) {
      if (++quiet >= 4) break;
    }
    x -= step;
  }
  if (peak == 0.0) return {};
  const double a = std::max(floor, lowest_kept - 2.0 * step);
  const double b = std::min(top, highest_significant + 2.0 * step);
  const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / (4.0 * step))));
  return integrate(f, a, b, cfg, pieces);
}

}  // namespace scp::special
