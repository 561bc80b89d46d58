#pragma once

#include <complex>
#include <string>

#include "qeit/fock.hpp"
#include "qeit/params.hpp"
#include "qeit/phase.hpp"

namespace qeit {

// Dimensionless dispersion slope of the per-sector susceptibility:
//   X'(n2, delta1) = -d(chi1/kappa)/d(delta1/gamma1)
// evaluated from the closed form (the sign follows the probe convention
// omega1 = omega_ab - delta1, so d/domega1 = -d/ddelta1).  n2 is treated as a
// continuous variable so the same closed form also yields d X'/d n2.
double dispersion_slope(const SystemParams& params, double n2, double delta1);
double dispersion_slope_dn2(const SystemParams& params, double n2, double delta1);

enum class VgRegime { normal, superluminal, pole };

inline const char* to_string(VgRegime r) {
  switch (r) {
    case VgRegime::normal: return "normal";
    case VgRegime::superluminal: return "superluminal";
    case VgRegime::pole: return "pole";
  }
  return "?";
}

// Group velocity of one sector: V_g/c = 1/(1 + gindex * X').  A denominator
// within 1e-12 of zero is flagged as a pole (value set infinite, never a
// silent overflow); a negative denominator is returned as a signed value with
// the superluminal flag.
struct VgSector {
  double vg_over_c = 1.0;
  VgRegime regime = VgRegime::normal;
};

VgSector vg_sector(const SystemParams& params, double n2, double delta1);

// Coherent-state statistics of V_g/c over the coupling mode's Poisson
// distribution.  Both fluctuation measures are carried side by side:
//   vg_std / rel_fluct          — exact spread of the per-sector values;
//   vg_std_linear / rel_fluct_linear — the linearization |slope_F| * std(n2).
// slope_F = d(V_g/c)/dn2 at n2 = n_alpha (continuous-n derivative of the
// closed form).  min_gindex_slope records min over the retained support of
// gindex*X', the deep-slow-light premise behind prefactor-free fluctuations.
struct GroupVelocityStats {
  double vg_mean = 0.0;
  double vg_std = 0.0;
  double rel_fluct = 0.0;
  double slope_F = 0.0;
  double vg_std_linear = 0.0;
  double rel_fluct_linear = 0.0;
  double vg_at_mean = 0.0;
  double min_gindex_slope = 0.0;
  VgRegime regime = VgRegime::normal;
};

// Throws SingularityError naming the sector if any retained sector sits on a
// group-velocity pole; poles in the discarded tail are irrelevant by
// construction.
GroupVelocityStats vg_stats(const SystemParams& params, const CoherentPair& fields,
                            double delta1, double tail_eps);

// Number-phase uncertainty bound for the group velocity:
//   dVg * dcos(phi) >= |F <sin(phi)>| / 2
// with F = slope_F.  `satisfied` is evaluated with the linearized spread
// dVg = |F| * std(n2), under which the bound reduces to the exact
// Susskind-Glogower relation std(n) * std(cos) >= |<sin>|/2 and is a theorem;
// the exact spread is reported alongside (dvg_exact) since the linearization
// is strained near the dispersion turnover.
struct UncertaintyReport {
  double lhs = 0.0;           // dvg_linear * cos_std
  double rhs = 0.0;           // |slope_F * sin_mean| / 2
  bool satisfied = true;      // lhs >= rhs - tol
  double tol = 0.0;           // 1e-10 * max(lhs, rhs, 1e-30)
  double dvg_linear = 0.0;
  double dvg_exact = 0.0;
  double cos_std = 0.0;
  double sin_mean = 0.0;
  double slope_F = 0.0;
  double delta_n = 0.0;
};

UncertaintyReport uncertainty_bound(const SystemParams& params, std::complex<double> alpha,
                                    double delta1, double tail_eps);

}  // namespace qeit
