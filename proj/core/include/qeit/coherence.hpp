#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "qeit/params.hpp"

namespace qeit {

// Slowly varying coherences, ordered as the column vector R = (rho_ab, rho_cb, rho_ca).
struct CoherenceVector {
  std::complex<double> rho_ab{0.0, 0.0};
  std::complex<double> rho_cb{0.0, 0.0};
  std::complex<double> rho_ca{0.0, 0.0};

  std::complex<double>& operator[](int i) { return i == 0 ? rho_ab : (i == 1 ? rho_cb : rho_ca); }
  const std::complex<double>& operator[](int i) const {
    return i == 0 ? rho_ab : (i == 1 ? rho_cb : rho_ca);
  }
};

double norm(const CoherenceVector& r);

// 3x3 drift matrix of dR/dt = -M R + A in the diagonal Fock-sector reduction
// (a2 a2+ -> n2+1, a1 a1+ -> n1+1 as scalars on a fixed sector):
//   row 1: [gamma1 + i d,  -i g2 sqrt(n2+1),       0          ]
//   row 2: [-i g2 sqrt(n2+1),  gamma3 + i d,   i g1 sqrt(n1)  ]
//   row 3: [      0,         i g1 sqrt(n1),       gamma2      ]
// Spatial phase factors are evaluated at z = 0.
struct DriftMatrix {
  std::array<std::array<std::complex<double>, 3>, 3> m{};

  std::complex<double>& operator()(int i, int j) { return m[i][j]; }
  const std::complex<double>& operator()(int i, int j) const { return m[i][j]; }
};

// Drive vector A = (i*rho_bb0*e1/2, 0, i*rho_cc0*e2/2); the scaled field
// amplitudes e_m are 1 in kappa-normalized units, so a2 = 0 always.
struct DriveVector {
  std::complex<double> a1{0.0, 0.0};
  std::complex<double> a2{0.0, 0.0};
  std::complex<double> a3{0.0, 0.0};
};

// A sector's dynamical system plus enough labeling to name it in errors.
struct SectorSystem {
  DriftMatrix M;
  DriveVector A;
  DriveCase drive_case = DriveCase::b;
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  double delta1 = 0.0;
  double rho_bb0 = 1.0;
  double rho_cc0 = 0.0;

  std::string label() const;
};

// Build M and A for one Fock sector.
//   case a: probe couplings removed from M and (rho_bb0, rho_cc0) = (1, 0).
//   case b: full M; populations default to (1, 0) (atom prepared in |b>).
//   case c: full M; populations default to the dark-state values
//           rho_bb0 = omega2^2/omega^2, rho_cc0 = omega1^2/omega^2.
// Explicit rho_bb0/rho_cc0 arguments override the case-b/c defaults.
SectorSystem build_sector(const SystemParams& params, DriveCase drive_case,
                          std::int64_t n1, std::int64_t n2, double delta1,
                          std::optional<double> rho_bb0 = std::nullopt,
                          std::optional<double> rho_cc0 = std::nullopt);

// Steady state R = M^{-1} A by direct 3x3 complex elimination with partial
// pivoting; the solution residual satisfies ||M R - A|| <= 1e-12 ||A||.
// Throws SingularityError naming the sector when cond(M) > 1e12.
CoherenceVector steady_state(const SectorSystem& sys);
CoherenceVector steady_state(const DriftMatrix& M, const DriveVector& A,
                             const std::string& label = "unlabeled system");

// Matrix-exponential route selection for evolve().  `automatic` uses the
// eigendecomposition when the eigenvector condition number is below 1e8 and
// falls back to Pade scaling-and-squaring otherwise; the explicit routes exist
// so the two can be cross-checked against each other.
enum class ExpmMethod { automatic, eigendecomposition, pade };

// Transient solution R(t) = exp(-Mt) R0 + (1 - exp(-Mt)) M^{-1} A.
CoherenceVector evolve(const SectorSystem& sys, const CoherenceVector& r0, double t,
                       ExpmMethod method = ExpmMethod::automatic);

// Smallest real part over the eigenvalues of M: the slowest relaxation rate.
// Positive for physical decay parameters; t ~ 50/slowest_rate reaches steady
// state to well below 1e-8.
double slowest_rate(const DriftMatrix& M);

}  // namespace qeit
