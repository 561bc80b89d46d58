#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace qeit {

// Which field configuration drives the atom.
//   a: coupling laser quantized and strong, probe in vacuum (linear response).
//   b: coupling laser weak, in a coherent state; statistics taken over its
//      photon-number distribution.
//   c: both lasers weak; statistics over both photon numbers.
enum class DriveCase { a, b, c };

inline const char* to_string(DriveCase c) {
  switch (c) {
    case DriveCase::a: return "a";
    case DriveCase::b: return "b";
    case DriveCase::c: return "c";
  }
  return "?";
}

// Thrown when a linear solve or a per-sector evaluation hits a (near-)singular
// configuration; carries a human-readable sector label.
class SingularityError : public std::runtime_error {
 public:
  explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

// All rates are measured in units of gamma1 (the rho_ab decay), so gamma1 = 1
// in normal use; it is kept explicit so the formulas stay dimensionally honest.
//
//   gamma1, gamma2, gamma3 : off-diagonal decay rates of rho_ab, rho_ca, rho_cb.
//   g1, g2                 : probe / coupling vacuum Rabi couplings.
//   kappa                  : dimensionless susceptibility scale; every chi is
//                            proportional to kappa*gamma1.
//   gindex                 : group-index scale converting the dimensionless
//                            dispersion slope X' into the slow-down term of
//                            V_g/c = 1/(1 + gindex*X').
struct SystemParams {
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double gamma3 = 1e-3;
  double g1 = 0.5 / std::sqrt(501.0);
  double g2 = 0.5 / std::sqrt(501.0);
  double kappa = 1.0;
  double gindex = 7.5e6;

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(name) + " must be > 0 and finite");
    };
    auto nonneg = [](double v, const char* name) {
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(name) + " must be >= 0 and finite");
    };
    positive(gamma1, "gamma1");
    nonneg(gamma2, "gamma2");
    nonneg(gamma3, "gamma3");
    positive(g1, "g1");
    positive(g2, "g2");
    positive(kappa, "kappa");
    positive(gindex, "gindex");
  }
};

}  // namespace qeit
