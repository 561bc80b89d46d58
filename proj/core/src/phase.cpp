#include "qeit/phase.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qeit/fock.hpp"

namespace qeit {

PhaseExpectations phase_expectations(std::complex<double> alpha, double trunc_eps) {
  const double r2 = std::norm(alpha);
  if (!std::isfinite(r2)) throw std::invalid_argument("phase_expectations: |alpha|^2 not finite");
  if (!(trunc_eps > 0.0 && trunc_eps < 1.0))
    throw std::invalid_argument("phase_expectations: trunc_eps must lie in (0, 1)");

  PhaseExpectations out;
  const double p0 = std::exp(-r2);

  if (r2 == 0.0) {
    // Vacuum: no off-diagonal coherence; <cos^2> = <sin^2> = 1/4.
    out.cos2_mean = out.sin2_mean = 0.25;
    out.cos_std = out.sin_std = 0.5;
    return out;
  }

  const FockWeights w = poisson_weights(r2, trunc_eps);
  double inv1 = 0.0;  // E[ 1/sqrt(n+1) ]
  double inv2 = 0.0;  // E[ 1/sqrt((n+1)(n+2)) ]
  for (std::int64_t n = w.n_lo; n <= w.n_hi; ++n) {
    const double p = w.weight(n);
    const double x = static_cast<double>(n);
    inv1 += p / std::sqrt(x + 1.0);
    inv2 += p / std::sqrt((x + 1.0) * (x + 2.0));
  }

  const std::complex<double> e_minus = alpha * inv1;
  const std::complex<double> e_minus2 = alpha * alpha * inv2;

  out.cos_mean = e_minus.real();
  out.sin_mean = e_minus.imag();
  out.cos2_mean = 0.25 * (2.0 * e_minus2.real() + 2.0 - p0);
  out.sin2_mean = 0.25 * (2.0 - p0 - 2.0 * e_minus2.real());
  out.cos_std = std::sqrt(std::max(0.0, out.cos2_mean - out.cos_mean * out.cos_mean));
  out.sin_std = std::sqrt(std::max(0.0, out.sin2_mean - out.sin_mean * out.sin_mean));
  return out;
}

}  // namespace qeit
