#pragma once

#include <complex>

namespace qeit {

// Coherent-state expectations of the Susskind–Glogower phase operators
//   cos(phi) = (E- + E+)/2,   sin(phi) = (E- - E+)/(2i),
// where E- lowers the photon number with unit matrix elements <n|E-|n+1> = 1.
// These obey [n, cos(phi)] = -i sin(phi) exactly.
struct PhaseExpectations {
  double cos_mean = 0.0;
  double sin_mean = 0.0;
  double cos2_mean = 0.0;
  double sin2_mean = 0.0;
  double cos_std = 0.0;
  double sin_std = 0.0;
};

// Expectations in the coherent state |alpha>, evaluated through truncated Fock
// sums with omitted-tail bound trunc_eps.  Closed-form reductions used:
//   <E->   = alpha   * E[ 1/sqrt(n+1) ]
//   <E-^2> = alpha^2 * E[ 1/sqrt((n+1)(n+2)) ]
//   <cos^2> = (2 Re<E-^2> + 2 - p0)/4,  <sin^2> = (2 - p0 - 2 Re<E-^2>)/4
// with p0 = exp(-|alpha|^2) the vacuum weight (E-E+ = 1, E+E- = 1 - |0><0|).
PhaseExpectations phase_expectations(std::complex<double> alpha, double trunc_eps);

}  // namespace qeit
