#include "qeit/fock.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace qeit {

namespace {

// log Poisson pmf; safe for mean ~ 1e3 and n ~ 1e4 where the direct form
// would overflow through the factorial.
double log_pmf(std::int64_t n, double mean) {
  return static_cast<double>(n) * std::log(mean) - mean - std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace

// Below this the boundary pmf needed to evaluate the tail majorant can
// underflow before the target is met, which would turn the certificate vacuous.
constexpr double kTailFloor = 1e-250;

FockWeights poisson_weights(double mean, double tail_eps) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("poisson_weights: mean must be >= 0 and finite");
  if (!(tail_eps > 0.0 && tail_eps < 1.0))
    throw std::invalid_argument("poisson_weights: tail_eps must lie in (0, 1)");
  if (tail_eps < kTailFloor)
    throw std::invalid_argument(
        "poisson_weights: tail_eps below the certification floor (1e-250)");

  FockWeights out;
  out.mean = mean;

  if (mean == 0.0) {
    out.n_lo = out.n_hi = 0;
    out.weights = {1.0};
    out.tail_mass = 0.0;
    return out;
  }

  // Grow the support outward from the mode, always taking the larger of the
  // two boundary candidates; unimodality of the Poisson pmf keeps the
  // contiguous support near-minimal for the certified bound below.
  const std::int64_t mode = static_cast<std::int64_t>(std::floor(mean));
  std::deque<double> w{std::exp(log_pmf(mode, mean))};
  std::int64_t lo = mode, hi = mode;
  // Neumaier-compensated mass so hundreds of tiny tail terms are not lost to
  // rounding against the ~1 head.
  double mass = w.front(), comp = 0.0;
  auto add = [&](double term) {
    const double t = mass + term;
    comp += (std::abs(mass) >= std::abs(term)) ? (mass - t) + term : (term - t) + mass;
    mass = t;
  };
  // Extend by pmf recursion from the stored boundary values; one log-domain
  // anchor at the mode keeps everything accurate and O(1) per step.
  double left_next = (mode > 0) ? w.front() * static_cast<double>(mode) / mean : 0.0;
  double right_next = w.back() * mean / static_cast<double>(mode + 1);

  // Geometric majorants of the exact mass outside [lo, hi].  The successive
  // pmf ratios p(n-1)/p(n) = n/mean and p(n+1)/p(n) = mean/(n+1) shrink
  // monotonically away from the mode, so each tail is bounded by its boundary
  // term times a geometric series.
  auto left_tail_bound = [&]() {
    if (lo == 0) return 0.0;
    const double r = static_cast<double>(lo - 1) / mean;
    return left_next / (1.0 - r);
  };
  auto right_tail_bound = [&]() {
    const double r = mean / static_cast<double>(hi + 2);
    return right_next / (1.0 - r);
  };
  // Certified *fraction* of the exact distribution left outside the support.
  // The anchor pmf scales numerator and denominator alike and cancels, so —
  // unlike a "1 - accumulated sum" test, whose resolution is limited by the
  // anchor's rounding (~eps * (mean + n|ln mean| + ln n!)) — this bound stays
  // meaningful far below double-precision roundoff of the head.
  auto omitted_bound = [&]() {
    const double t = left_tail_bound() + right_tail_bound();
    return t / ((mass + comp) + t);
  };

  double bound = omitted_bound();
  while (bound > tail_eps) {
    if (lo > 0 && left_next >= right_next) {
      w.push_front(left_next);
      --lo;
      add(left_next);
      left_next = (lo > 0) ? w.front() * static_cast<double>(lo) / mean : 0.0;
    } else {
      w.push_back(right_next);
      ++hi;
      add(right_next);
      right_next = w.back() * mean / static_cast<double>(hi + 1);
    }
    bound = omitted_bound();
    // Unreachable given the floor check above: boundary pmfs underflow only
    // after the bound has dropped far below any admissible target.
    if (left_next <= 0.0 && right_next <= 0.0 && bound > tail_eps)
      throw std::logic_error("poisson_weights: tail majorant underflowed before target");
  }

  out.n_lo = lo;
  out.n_hi = hi;
  out.weights.assign(w.begin(), w.end());
  out.tail_mass = bound;
  return out;
}

NumberMoments number_moments(const FockWeights& w) {
  NumberMoments out;
  double m1 = 0.0, m2 = 0.0;
  for (std::int64_t n = w.n_lo; n <= w.n_hi; ++n) {
    const double p = w.weight(n);
    const double x = static_cast<double>(n);
    m1 += p * x;
    m2 += p * x * x;
  }
  out.mean = m1;
  out.variance = std::max(0.0, m2 - m1 * m1);
  out.std_dev = std::sqrt(out.variance);
  return out;
}

}  // namespace qeit
