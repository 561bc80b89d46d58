#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qeit {

// Complex amplitudes of the two driving modes in a two-mode coherent state.
// alpha drives the coupling transition, beta the probe transition.
struct CoherentPair {
  std::complex<double> alpha{0.0, 0.0};
  std::complex<double> beta{0.0, 0.0};

  double n_alpha() const { return std::norm(alpha); }
  double n_beta() const { return std::norm(beta); }
};

// Truncated photon-number distribution: contiguous support [n_lo, n_hi] with
// one probability per n and a certified bound on the omitted mass.
struct FockWeights {
  double mean = 0.0;
  std::int64_t n_lo = 0;
  std::int64_t n_hi = 0;
  std::vector<double> weights;  // weights[k] is the probability of n_lo + k
  double tail_mass = 0.0;  // certified upper bound on the exact mass outside [n_lo, n_hi]

  std::int64_t size() const { return n_hi - n_lo + 1; }
  double weight(std::int64_t n) const { return weights[static_cast<std::size_t>(n - n_lo)]; }
  double sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

// Poisson weights for a coherent state of mean photon number `mean`, truncated
// to a near-minimal contiguous support around the mode that is *certified* to
// leave at most tail_eps of the exact distribution's mass outside it.  The
// certificate comes from geometric majorants of the two tails expressed as a
// fraction of the accumulated mass, so it is independent of the rounding of
// the log-domain anchor value and remains meaningful far below the
// double-precision roundoff of the head (tail_eps down to 1e-250 is allowed;
// below that the majorant itself could underflow).  Individual weight values
// are anchored at the mode via exp(n ln mean - mean - ln n!) and carry the
// relative error of that exponent, ~eps * (mean + n|ln mean| + ln n!).
// Throws std::invalid_argument on violated preconditions.
FockWeights poisson_weights(double mean, double tail_eps);

// Mean and per-part second moments of a diagonal operator f(n) under w,
// accumulated in ascending n (fixed summation order keeps results bit-stable).
struct DiagExpectation {
  std::complex<double> mean{0.0, 0.0};
  double second_moment_re = 0.0;  // sum w(n) * Re(f(n))^2
  double second_moment_im = 0.0;  // sum w(n) * Im(f(n))^2
};

template <class F>
DiagExpectation expect_diag(F&& f, const FockWeights& w) {
  DiagExpectation out;
  for (std::int64_t n = w.n_lo; n <= w.n_hi; ++n) {
    const std::complex<double> v = f(n);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("expect_diag: non-finite value at n = " + std::to_string(n));
    const double p = w.weight(n);
    out.mean += p * v;
    out.second_moment_re += p * v.real() * v.real();
    out.second_moment_im += p * v.imag() * v.imag();
  }
  return out;
}

// First two moments of n itself under the truncated weights.
struct NumberMoments {
  double mean = 0.0;
  double variance = 0.0;
  double std_dev = 0.0;
};

NumberMoments number_moments(const FockWeights& w);

}  // namespace qeit
