#include "qeit/susceptibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace qeit {

namespace {

using C = std::complex<double>;

// Shared core of cases a/b and the mean-field form: Eq with the coupling term
// entering only through G = g2^2 * (photon scale).
C chi_coupling_sector(const SystemParams& p, double G, double delta1) {
  const C i1{0.0, 1.0};
  const C za = p.gamma1 + i1 * delta1;
  const C zc = p.gamma3 + i1 * delta1;
  const C den = za * zc + G;
  const double scale = std::abs(za) * std::abs(zc) + G;
  if (std::abs(den) < 1e-14 * scale)
    throw SingularityError("chi_sector: vanishing denominator at delta1=" +
                           std::to_string(delta1));
  return i1 * p.kappa * p.gamma1 * zc / den;
}

C chi_weak_weak_sector(const SystemParams& p, std::int64_t n1, std::int64_t n2, double delta1) {
  const C i1{0.0, 1.0};
  const C za = p.gamma1 + i1 * delta1;
  const C zc = p.gamma3 + i1 * delta1;
  const double gp2 = p.g1 * p.g1 * (static_cast<double>(n1) + 1.0);
  const double gc2 = p.g2 * p.g2 * (static_cast<double>(n2) + 1.0);
  const double rho_bb0 =
      gc2 / (p.g1 * p.g1 * static_cast<double>(n1) + gc2);  // dark-state ground population
  const C den = za * zc * p.gamma2 + p.gamma2 * gc2 + za * gp2;
  const double scale = std::abs(za) * std::abs(zc) * p.gamma2 + p.gamma2 * gc2 + std::abs(za) * gp2;
  if (std::abs(den) < 1e-14 * scale)
    throw SingularityError("chi_sector: vanishing denominator at (n1=" + std::to_string(n1) +
                           ", n2=" + std::to_string(n2) + "), delta1=" + std::to_string(delta1));
  return i1 * p.kappa * p.gamma1 * rho_bb0 * (zc * p.gamma2 + gp2) / den;
}

Susceptibility split(C chi) { return Susceptibility{chi.real(), chi.imag()}; }

SusceptibilityStats finish_stats(const SystemParams& params, C mean, double m2_re, double m2_im) {
  SusceptibilityStats out;
  out.chi1_mean = mean.real();
  out.chi2_mean = mean.imag();
  out.chi1_std = std::sqrt(std::max(0.0, m2_re - mean.real() * mean.real()));
  out.chi2_std = std::sqrt(std::max(0.0, m2_im - mean.imag() * mean.imag()));
  const double floor = 1e-14 * params.kappa * params.gamma1;
  out.p1_defined = std::abs(out.chi1_mean) > floor;
  out.p2_defined = std::abs(out.chi2_mean) > floor;
  out.p1 = out.p1_defined ? out.chi1_std / std::abs(out.chi1_mean)
                          : std::numeric_limits<double>::quiet_NaN();
  out.p2 = out.p2_defined ? out.chi2_std / std::abs(out.chi2_mean)
                          : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace

Susceptibility chi_sector(DriveCase drive_case, const SystemParams& params, std::int64_t n1,
                          std::int64_t n2, double delta1) {
  params.validate();
  if (n1 < 0 || n2 < 0) throw std::invalid_argument("chi_sector: photon numbers must be >= 0");
  switch (drive_case) {
    case DriveCase::a:
    case DriveCase::b: {
      const double G = params.g2 * params.g2 * (static_cast<double>(n2) + 1.0);
      return split(chi_coupling_sector(params, G, delta1));
    }
    case DriveCase::c:
      return split(chi_weak_weak_sector(params, n1, n2, delta1));
  }
  throw std::invalid_argument("chi_sector: unknown case");
}

Susceptibility chi_mean_case_a(const SystemParams& params, double n_alpha, double delta1) {
  params.validate();
  if (!(n_alpha >= 0.0)) throw std::invalid_argument("chi_mean_case_a: n_alpha must be >= 0");
  const double omega_bar2_sq = params.g2 * params.g2 * (n_alpha + 1.0);
  return split(chi_coupling_sector(params, omega_bar2_sq, delta1));
}

SusceptibilityStats chi_stats(DriveCase drive_case, const SystemParams& params,
                              const CoherentPair& fields, double delta1, double tail_eps) {
  params.validate();
  if (drive_case == DriveCase::a)
    throw std::invalid_argument("chi_stats: case a is mean-field; use chi_mean_case_a");

  if (drive_case == DriveCase::b) {
    const FockWeights w = poisson_weights(fields.n_alpha(), tail_eps);
    const auto e = expect_diag(
        [&](std::int64_t n2) { return chi_sector(DriveCase::b, params, 0, n2, delta1).value(); },
        w);
    return finish_stats(params, e.mean, e.second_moment_re, e.second_moment_im);
  }

  // case c: independent Poisson weights for the probe (n1) and coupling (n2)
  // modes; ascending (n1, n2) double loop keeps the summation order fixed.
  const FockWeights w1 = poisson_weights(fields.n_beta(), tail_eps);
  const FockWeights w2 = poisson_weights(fields.n_alpha(), tail_eps);
  C mean{0.0, 0.0};
  double m2_re = 0.0, m2_im = 0.0;
  for (std::int64_t n1 = w1.n_lo; n1 <= w1.n_hi; ++n1) {
    const double p1w = w1.weight(n1);
    for (std::int64_t n2 = w2.n_lo; n2 <= w2.n_hi; ++n2) {
      const double p = p1w * w2.weight(n2);
      const C v = chi_sector(DriveCase::c, params, n1, n2, delta1).value();
      mean += p * v;
      m2_re += p * v.real() * v.real();
      m2_im += p * v.imag() * v.imag();
    }
  }
  return finish_stats(params, mean, m2_re, m2_im);
}

std::vector<SweepPoint> fluctuation_sweep(DriveCase drive_case, const SystemParams& params,
                                          const CoherentPair& fields,
                                          const std::vector<double>& delta_grid, double tail_eps,
                                          int jobs) {
  if (delta_grid.empty()) throw std::invalid_argument("fluctuation_sweep: empty detuning grid");
  params.validate();

  std::vector<SweepPoint> rows(delta_grid.size());

  auto eval_row = [&](std::size_t i) {
    SweepPoint& row = rows[i];
    row.delta1 = delta_grid[i];
    try {
      if (drive_case == DriveCase::a) {
        const Susceptibility chi = chi_mean_case_a(params, fields.n_alpha(), row.delta1);
        SusceptibilityStats s;
        s.chi1_mean = chi.chi1;
        s.chi2_mean = chi.chi2;
        s.distributional = false;
        s.p1_defined = s.p2_defined = false;
        s.p1 = s.p2 = std::numeric_limits<double>::quiet_NaN();
        row.stats = s;
      } else {
        row.stats = chi_stats(drive_case, params, fields, row.delta1, tail_eps);
      }
      row.ok = true;
    } catch (const std::exception& ex) {
      row.ok = false;
      row.error = ex.what();
    }
  };

  const int n_jobs = std::max(1, jobs);
  if (n_jobs == 1 || rows.size() <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) eval_row(i);
    return rows;
  }

  // Rows are independent and land in preallocated slots, so any schedule
  // yields identical output; round-robin keeps the load even.
  std::vector<std::thread> pool;
  const std::size_t stride = static_cast<std::size_t>(n_jobs);
  pool.reserve(stride);
  for (std::size_t t = 0; t < stride; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < rows.size(); i += stride) eval_row(i);
    });
  }
  for (auto& th : pool) th.join();
  return rows;
}

}  // namespace qeit
