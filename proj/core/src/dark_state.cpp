#include "qeit/dark_state.hpp"

#include <cmath>
#include <stdexcept>

namespace qeit {

RabiTriple rabi(const SystemParams& params, std::int64_t n1, std::int64_t n2) {
  if (n1 < 0 || n2 < 0) throw std::invalid_argument("rabi: photon numbers must be >= 0");
  RabiTriple out;
  out.omega1 = 2.0 * params.g1 * std::sqrt(static_cast<double>(n1));
  out.omega2 = 2.0 * params.g2 * std::sqrt(static_cast<double>(n2) + 1.0);
  out.omega = std::hypot(out.omega1, out.omega2);
  return out;
}

DarkState dark_state(const SystemParams& params, std::int64_t n1, std::int64_t n2,
                     double delta1, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("dark_state: order must be 1 or 2");
  const RabiTriple rt = rabi(params, n1, n2);

  DarkState st;
  st.order = order;
  st.n1 = n1;
  st.n2 = n2;

  if (n1 == 0) {
    // |b, 0, n2> is an exact eigenstate (no probe photon to absorb); the
    // perturbative amplitudes degenerate to the bare ground state.
    st.degenerate = true;
    return st;
  }

  const double w1 = rt.omega1, w2 = rt.omega2, w = rt.omega;
  const double w3 = w * w * w;
  st.c_b = w2 / w;
  st.c_a = -2.0 * w1 * w2 * delta1 / w3;
  st.c_c = -w1 / w;
  if (order == 2) {
    const double w7 = w3 * w3 * w;
    const double d2 = delta1 * delta1;
    st.c_b += -4.0 * w1 * w1 * w2 * w2 * w2 * d2 / w7;
    st.c_c += -4.0 * w1 * w2 * w2 * w2 * w2 * d2 / w7;
  }
  return st;
}

double apply_H1(const SystemParams& params, const DarkState& state, double delta1) {
  // Interaction Hamiltonian restricted to the block (|b,n1,n2>, |a,n1-1,n2>,
  // |c,n1-1,n2+1>), in units of hbar:
  //   [ 0        -g1 rn1     0      ]
  //   [ -g1 rn1   delta1    -g2 rn2 ]
  //   [ 0        -g2 rn2     delta1 ]
  // with rn1 = sqrt(n1), rn2 = sqrt(n2+1).  The dark state satisfies
  // H1 |psi> = (omega1^2/omega^2) delta1 |psi> up to the perturbative order.
  const double rn1 = std::sqrt(static_cast<double>(state.n1));
  const double rn2 = std::sqrt(static_cast<double>(state.n2) + 1.0);
  const double hb = -params.g1 * rn1;  // <a|H|b>
  const double hc = -params.g2 * rn2;  // <a|H|c>

  const std::complex<double> vb = state.c_b, va = state.c_a, vc = state.c_c;
  const std::complex<double> rb = hb * va;
  const std::complex<double> ra = hb * vb + delta1 * va + hc * vc;
  const std::complex<double> rc = hc * va + delta1 * vc;

  const RabiTriple rt = rabi(params, state.n1, state.n2);
  const double lambda =
      (rt.omega > 0.0) ? (rt.omega1 * rt.omega1) / (rt.omega * rt.omega) * delta1 : 0.0;

  const std::complex<double> db = rb - lambda * vb;
  const std::complex<double> da = ra - lambda * va;
  const std::complex<double> dc = rc - lambda * vc;
  return std::sqrt(std::norm(db) + std::norm(da) + std::norm(dc)) / params.gamma1;
}

SemiclassicalChi semiclassical_chi(const SystemParams& params, double omega1_bar,
                                   double omega2_bar, double delta1) {
  const double s = omega1_bar * omega1_bar + omega2_bar * omega2_bar;
  if (!(s > 0.0)) throw std::invalid_argument("semiclassical_chi: both Rabi frequencies zero");

  const double k = params.kappa * params.gamma1;
  const double w1sq = omega1_bar * omega1_bar;
  const double w2sq = omega2_bar * omega2_bar;
  const double s2 = s * s;
  const double s5 = s2 * s2 * s;
  const double d = delta1;

  SemiclassicalChi out;
  out.chi = k * (-4.0 * w2sq * d / s2 + 16.0 * w1sq * w2sq * w2sq * d * d * d / s5);
  out.dchi_domega = k * (4.0 * w2sq / s2 - 48.0 * w1sq * w2sq * w2sq * d * d / s5);
  return out;
}

}  // namespace qeit
