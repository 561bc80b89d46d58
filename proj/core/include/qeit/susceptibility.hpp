#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qeit/fock.hpp"
#include "qeit/params.hpp"

namespace qeit {

// Probe susceptibility split into dispersion (chi1) and absorption (chi2),
// both proportional to kappa*gamma1.  chi2 >= 0 for real detuning and
// nonnegative decay rates (passive medium).
struct Susceptibility {
  double chi1 = 0.0;
  double chi2 = 0.0;

  std::complex<double> value() const { return {chi1, chi2}; }
};

// Per-sector susceptibility.
//   cases a/b (sector labeled by the coupling photon number n2):
//     chi = i*kappa*gamma1*(gamma3 + i d) / [ (gamma1 + i d)(gamma3 + i d) + g2^2 (n2+1) ]
//   case c (both modes weak; sector (n1, n2)):
//     chi = i*kappa*gamma1*rho_bb0*[ (gamma3 + i d) gamma2 + g1^2 (n1+1) ] /
//           [ (gamma1 + i d)(gamma3 + i d) gamma2 + gamma2 g2^2 (n2+1) + (gamma1 + i d) g1^2 (n1+1) ]
//     with rho_bb0 = g2^2 (n2+1) / (g1^2 n1 + g2^2 (n2+1)).
// Throws SingularityError if the denominator vanishes (possible only with all
// decay rates zero at special detunings).
Susceptibility chi_sector(DriveCase drive_case, const SystemParams& params,
                          std::int64_t n1, std::int64_t n2, double delta1);

// Mean-field susceptibility of the strong-coupling case: the per-sector form
// with g2^2(n2+1) replaced by omega_bar2^2 = g2^2 (n_alpha + 1), n_alpha real.
Susceptibility chi_mean_case_a(const SystemParams& params, double n_alpha, double delta1);

// Statistics of chi over coherent-state photon distributions.  p1/p2 are the
// relative fluctuations std/|mean|, undefined (flagged false) when the
// corresponding |mean| falls below 1e-14*kappa*gamma1.
struct SusceptibilityStats {
  double chi1_mean = 0.0;
  double chi2_mean = 0.0;
  double chi1_std = 0.0;
  double chi2_std = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  bool p1_defined = false;
  bool p2_defined = false;
  // False for single-point (mean-field) rows, where std/p carry no information.
  bool distributional = true;
};

// case b: single Poisson sum over n2 with weights from |alpha|^2.
// case c: double sum over independent Poisson weights from |beta|^2 (n1) and
// |alpha|^2 (n2); total omitted mass <= 2*tail_eps.
SusceptibilityStats chi_stats(DriveCase drive_case, const SystemParams& params,
                              const CoherentPair& fields, double delta1, double tail_eps);

// One detuning row of a sweep; on per-row failure `error` is set and the
// sweep continues.
struct SweepPoint {
  double delta1 = 0.0;
  SusceptibilityStats stats;
  bool ok = false;
  std::string error;
};

// Evaluate chi statistics over an ascending detuning grid.  Case a rows carry
// the mean-field value with distributional = false.  Rows are computed
// independently (jobs > 1 splits the grid across threads) and returned in grid
// order, so results are identical for every parallelism degree.
std::vector<SweepPoint> fluctuation_sweep(DriveCase drive_case, const SystemParams& params,
                                          const CoherentPair& fields,
                                          const std::vector<double>& delta_grid,
                                          double tail_eps, int jobs = 1);

}  // namespace qeit
