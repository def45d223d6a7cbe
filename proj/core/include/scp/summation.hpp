#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <thread>
#include <vector>

namespace scp {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  void add(std::complex<double> z) noexcept {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

namespace detail {

template <class T>
T pairwise_reduce(const std::vector<T>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_reduce(parts, lo, mid) + pairwise_reduce(parts, mid, hi);
}

}  // namespace detail

inline constexpr std::size_t kReductionBlock = 2048;

// Sums term(0) + ... + term(n-1).  The index range is cut into fixed blocks
// of kReductionBlock terms, each block is summed with compensation, and the
// block totals are combined by a balanced pairwise tree.  The block layout
// does not depend on `threads`, so the result is bit-identical for any
// worker count.
template <class F>
std::complex<double> deterministic_sum(std::size_t n, F&& term, unsigned threads = 1) {
  if (n == 0) return {0.0, 0.0};
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<std::complex<double>> partial(blocks);
  auto run_block = [&](std::size_t b) {
    ComplexCompensatedSum acc;
    const std::size_t end = std::min(n, (b + 1) * kReductionBlock);
    for (std::size_t i = b * kReductionBlock; i < end; ++i) acc.add(std::complex<double>(term(i)));
    partial[b] = acc.value();
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(blocks)));
  if (workers == 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < blocks; b += workers) run_block(b);
      });
    }
    for (auto& t : pool) t.join();
  }
  return detail::pairwise_reduce(partial, 0, blocks);
}

}  // namespace scp
