#include "doctest.h"
#include "oracles.hpp"

#include <qeit/dark_state.hpp>
#include <qeit/params.hpp>

#include <cmath>
#include <vector>

namespace {

qeit::SystemParams test_params() {
  qeit::SystemParams p;
  p.g1 = 0.03;
  p.g2 = 0.02;
  return p;
}

}  // namespace

TEST_CASE("quantized Rabi frequencies") {
  const auto p = test_params();
  const auto r = qeit::rabi(p, 9, 24);
  CHECK(r.omega1 == 2.0 * p.g1 * 3.0);
  CHECK(r.omega2 == 2.0 * p.g2 * 5.0);
  CHECK(r.omega == doctest::Approx(std::hypot(r.omega1, r.omega2)).epsilon(1e-15));
}

TEST_CASE("resonant dark state is the exact null eigenvector") {
  const auto p = test_params();
  const auto d = qeit::dark_state(p, 9, 24, 0.0, 1);
  const auto r = qeit::rabi(p, 9, 24);
  CHECK(d.c_b.real() == doctest::Approx(r.omega2 / r.omega).epsilon(1e-15));
  CHECK(d.c_c.real() == doctest::Approx(-r.omega1 / r.omega).epsilon(1e-15));
  CHECK(std::abs(d.c_a) == 0.0);
  CHECK(qeit::apply_H1(p, d, 0.0) <= 1e-16);
}

TEST_CASE("empty probe mode gives the degenerate bare state") {
  const auto p = test_params();
  const auto d = qeit::dark_state(p, 0, 24, 0.05, 1);
  CHECK(d.degenerate);
  CHECK(d.c_b == std::complex<double>{1.0, 0.0});
  CHECK(std::abs(d.c_a) == 0.0);
  CHECK(std::abs(d.c_c) == 0.0);
  // |b, n1=0> really is an eigenstate: zero residual at any detuning.
  CHECK(qeit::apply_H1(p, d, 0.05) <= 1e-16);
}

TEST_CASE("residual scaling orders: quadratic then cubic in detuning") {
  const auto p = test_params();
  const auto r = qeit::rabi(p, 9, 24);

  std::vector<double> deltas, res1, res2;
  for (double f = 1e-3; f <= 1e-1 * 1.0001; f *= 2.0) {
    const double delta = f * r.omega;
    deltas.push_back(delta);
    res1.push_back(qeit::apply_H1(p, qeit::dark_state(p, 9, 24, delta, 1), delta));
    res2.push_back(qeit::apply_H1(p, qeit::dark_state(p, 9, 24, delta, 2), delta));
  }
  CHECK(oracle::loglog_slope(deltas, res1) == doctest::Approx(2.0).epsilon(0.02));
  CHECK(oracle::loglog_slope(deltas, res2) == doctest::Approx(3.0).epsilon(0.02));
  // Second order must actually help.
  for (std::size_t i = 0; i < deltas.size(); ++i) CHECK(res2[i] < res1[i]);
}

TEST_CASE("perturbative state norm deviates only at second order in detuning") {
  const auto p = test_params();
  const auto r = qeit::rabi(p, 9, 24);
  for (double f : {1e-4, 1e-3, 1e-2}) {
    const double delta = f * r.omega;
    const auto d = qeit::dark_state(p, 9, 24, delta, 2);
    const double norm2 = std::norm(d.c_a) + std::norm(d.c_b) + std::norm(d.c_c);
    // The only non-cancelling contribution is |c_a|^2 <= (delta/omega)^2.
    CHECK(std::abs(norm2 - 1.0) <= 2.0 * delta * delta / (r.omega * r.omega));
  }
}

TEST_CASE("mean-field susceptibility symmetries and derivative") {
  qeit::SystemParams p;
  const double w1 = 0.4, w2 = 0.7;

  for (double delta : {0.05, 0.31, 0.9}) {
    const auto plus = qeit::semiclassical_chi(p, w1, w2, delta);
    const auto minus = qeit::semiclassical_chi(p, w1, w2, -delta);
    CHECK(plus.chi == -minus.chi);              // dispersion is odd
    CHECK(plus.dchi_domega == minus.dchi_domega);  // slope is even
  }

  // The analytic frequency derivative matches a central difference in the
  // detuning (frequency increases as detuning decreases).
  for (double delta : {0.0, 0.2, 0.55}) {
    auto chi_of_delta = [&](double d) { return qeit::semiclassical_chi(p, w1, w2, d).chi; };
    const double fd = -oracle::central_fd(chi_of_delta, delta, 1e-6);
    const auto got = qeit::semiclassical_chi(p, w1, w2, delta);
    CHECK(oracle::rel_diff(got.dchi_domega, fd) <= 1e-8);
  }
}

TEST_CASE("slope zero crossing sits at the analytic location") {
  qeit::SystemParams p;
  const double w1 = 0.5, w2 = 0.5;
  const double s = w1 * w1 + w2 * w2;
  const double crossing = std::sqrt(s * s * s / (12.0 * w1 * w1 * w2 * w2));

  const double before = qeit::semiclassical_chi(p, w1, w2, crossing * 0.999).dchi_domega;
  const double after = qeit::semiclassical_chi(p, w1, w2, crossing * 1.001).dchi_domega;
  CHECK(before * after < 0.0);
}
