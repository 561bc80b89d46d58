#pragma once

#include <complex>
#include <cstdint>

#include "qeit/params.hpp"

namespace qeit {

// Rabi frequencies of the Fock sector (n1, n2) in the dark-state convention:
// omega1 = 2 g1 sqrt(n1), omega2 = 2 g2 sqrt(n2+1).
struct RabiTriple {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega = 0.0;  // sqrt(omega1^2 + omega2^2)
};

RabiTriple rabi(const SystemParams& params, std::int64_t n1, std::int64_t n2);

// Perturbative dark state of the three-level interaction Hamiltonian in the
// sector spanned by |b,n1,n2>, |a,n1-1,n2>, |c,n1-1,n2+1>.
struct DarkState {
  int order = 1;  // 1 or 2
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  std::complex<double> c_b{1.0, 0.0};
  std::complex<double> c_a{0.0, 0.0};
  std::complex<double> c_c{0.0, 0.0};
  // n1 = 0: the bare ground state |b,0,n2> is an exact eigenstate and the
  // perturbative expressions degenerate to c_b = 1.
  bool degenerate = false;
};

// Order-1 amplitudes: (omega2/omega, -2 omega1 omega2 delta1 / omega^3, -omega1/omega).
// Order 2 adds -4 omega1^2 omega2^3 delta1^2 / omega^7 to c_b and
// -4 omega1 omega2^4 delta1^2 / omega^7 to c_c.
DarkState dark_state(const SystemParams& params, std::int64_t n1, std::int64_t n2,
                     double delta1, int order);

// Residual of the eigenvalue equation within the three-ket block:
// || H1 |psi> - (omega1^2/omega^2) delta1 |psi> || / gamma1, with H1 restricted
// to the block (diagonal delta1 on the a and c kets, off-diagonal couplings
// -g1 sqrt(n1) and -g2 sqrt(n2+1)).  Zero at delta1 = 0; scales as delta1^2
// for order 1 and delta1^3 for order 2.
double apply_H1(const SystemParams& params, const DarkState& state, double delta1);

// Semiclassical susceptibility of the lambda system and its frequency
// derivative, in the small-detuning expansion:
//   chi        = kappa*gamma1*( -4 W2^2 d / S^2 + 16 W1^2 W2^4 d^3 / S^5 )
//   dchi/domega = kappa*gamma1*(  4 W2^2 / S^2 - 48 W1^2 W2^4 d^2 / S^5 )
// with W1 = omega1_bar, W2 = omega2_bar, S = W1^2 + W2^2, d = delta1, and the
// probe-frequency sign convention omega1 = omega_ab - delta1 (d/domega = -d/ddelta).
struct SemiclassicalChi {
  double chi = 0.0;
  double dchi_domega = 0.0;
};

SemiclassicalChi semiclassical_chi(const SystemParams& params, double omega1_bar,
                                   double omega2_bar, double delta1);

}  // namespace qeit
