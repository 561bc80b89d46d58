#include "qeit/group_velocity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qeit {

namespace {

using C = std::complex<double>;

// chi1/kappa as a function of u = delta1/gamma1 is Re[c(u)] with
//   c(u) = i (g + iu) / ((1 + iu)(g + iu) + Gn),
// g = gamma3/gamma1, Gn = g2^2 (n2+1) / gamma1^2.  The slope X' = -Re c'(u)
// and its Gn-derivative follow from the quotient rule:
//   c'      = i ( iD - (g+iu) D' ) / D^2,        D' = i (1 + g + 2iu)
//   dc'/dGn = i ( -iD + 2 (g+iu) D' ) / D^3
struct SlopeParts {
  double xprime;
  double dxprime_dGn;
};

SlopeParts slope_parts(const SystemParams& p, double n2, double delta1) {
  const C i1{0.0, 1.0};
  const double u = delta1 / p.gamma1;
  const double g = p.gamma3 / p.gamma1;
  const double Gn = p.g2 * p.g2 * (n2 + 1.0) / (p.gamma1 * p.gamma1);

  const C zc = g + i1 * u;
  const C D = (1.0 + i1 * u) * zc + Gn;
  const C Dp = i1 * (1.0 + g + 2.0 * i1 * u);
  const C D2 = D * D;
  const C cp = i1 * (i1 * D - zc * Dp) / D2;
  const C dcp_dGn = i1 * (-i1 * D + 2.0 * zc * Dp) / (D2 * D);

  return {-cp.real(), -dcp_dGn.real()};
}

}  // namespace

double dispersion_slope(const SystemParams& params, double n2, double delta1) {
  params.validate();
  if (!(n2 >= 0.0)) throw std::invalid_argument("dispersion_slope: n2 must be >= 0");
  return slope_parts(params, n2, delta1).xprime;
}

double dispersion_slope_dn2(const SystemParams& params, double n2, double delta1) {
  params.validate();
  if (!(n2 >= 0.0)) throw std::invalid_argument("dispersion_slope_dn2: n2 must be >= 0");
  const double dGn_dn2 = params.g2 * params.g2 / (params.gamma1 * params.gamma1);
  return slope_parts(params, n2, delta1).dxprime_dGn * dGn_dn2;
}

VgSector vg_sector(const SystemParams& params, double n2, double delta1) {
  const double xp = dispersion_slope(params, n2, delta1);
  const double den = 1.0 + params.gindex * xp;

  VgSector out;
  if (std::abs(den) < 1e-12) {
    out.vg_over_c = std::copysign(std::numeric_limits<double>::infinity(), den);
    out.regime = VgRegime::pole;
    return out;
  }
  out.vg_over_c = 1.0 / den;
  out.regime = (den > 0.0) ? VgRegime::normal : VgRegime::superluminal;
  return out;
}

GroupVelocityStats vg_stats(const SystemParams& params, const CoherentPair& fields, double delta1,
                            double tail_eps) {
  params.validate();
  const FockWeights w = poisson_weights(fields.n_alpha(), tail_eps);

  GroupVelocityStats out;
  double mean = 0.0, m2 = 0.0;
  double min_gx = std::numeric_limits<double>::infinity();
  bool superluminal = false;

  for (std::int64_t n = w.n_lo; n <= w.n_hi; ++n) {
    const double x = static_cast<double>(n);
    const VgSector v = vg_sector(params, x, delta1);
    if (v.regime == VgRegime::pole || !std::isfinite(v.vg_over_c))
      throw SingularityError("vg_stats: group-velocity pole inside retained support at n2=" +
                             std::to_string(n) + ", delta1=" + std::to_string(delta1));
    superluminal = superluminal || (v.regime == VgRegime::superluminal);
    const double p = w.weight(n);
    mean += p * v.vg_over_c;
    m2 += p * v.vg_over_c * v.vg_over_c;
    min_gx = std::min(min_gx, params.gindex * dispersion_slope(params, x, delta1));
  }

  const NumberMoments nm = number_moments(w);
  const double nbar = fields.n_alpha();
  const double xp_bar = dispersion_slope(params, nbar, delta1);
  const double den_bar = 1.0 + params.gindex * xp_bar;
  if (std::abs(den_bar) < 1e-12)
    throw SingularityError("vg_stats: group-velocity pole at the mean photon number, delta1=" +
                           std::to_string(delta1));

  out.vg_mean = mean;
  out.vg_std = std::sqrt(std::max(0.0, m2 - mean * mean));
  out.rel_fluct = out.vg_std / out.vg_mean;
  out.vg_at_mean = 1.0 / den_bar;
  out.slope_F = -params.gindex * dispersion_slope_dn2(params, nbar, delta1) / (den_bar * den_bar);
  out.vg_std_linear = std::abs(out.slope_F) * nm.std_dev;
  out.rel_fluct_linear = out.vg_std_linear / out.vg_mean;
  out.min_gindex_slope = min_gx;
  out.regime = superluminal ? VgRegime::superluminal : VgRegime::normal;
  return out;
}

UncertaintyReport uncertainty_bound(const SystemParams& params, std::complex<double> alpha,
                                    double delta1, double tail_eps) {
  const CoherentPair fields{alpha, {0.0, 0.0}};
  const GroupVelocityStats vgs = vg_stats(params, fields, delta1, tail_eps);
  const PhaseExpectations ph = phase_expectations(alpha, tail_eps);
  const NumberMoments nm = number_moments(poisson_weights(fields.n_alpha(), tail_eps));

  UncertaintyReport out;
  out.slope_F = vgs.slope_F;
  out.delta_n = nm.std_dev;
  out.dvg_linear = std::abs(vgs.slope_F) * nm.std_dev;
  out.dvg_exact = vgs.vg_std;
  out.cos_std = ph.cos_std;
  out.sin_mean = ph.sin_mean;
  out.lhs = out.dvg_linear * ph.cos_std;
  out.rhs = 0.5 * std::abs(vgs.slope_F * ph.sin_mean);
  out.tol = 1e-10 * std::max({out.lhs, out.rhs, 1e-30});
  out.satisfied = out.lhs >= out.rhs - out.tol;
  return out;
}

}  // namespace qeit
