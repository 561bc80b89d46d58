#include "doctest.h"
#include "oracles.hpp"

#include <qeit/coherence.hpp>
#include <qeit/dark_state.hpp>
#include <qeit/params.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>

using qeit::DriveCase;
using cd = std::complex<double>;

namespace {

qeit::SystemParams default_params() { return qeit::SystemParams{}; }

oracle::Mat3 to_mat(const qeit::DriftMatrix& m) {
  oracle::Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = m(i, j);
  return out;
}

oracle::Vec3 to_vec(const qeit::DriveVector& a) { return {a.a1, a.a2, a.a3}; }
oracle::Vec3 to_vec(const qeit::CoherenceVector& r) { return {r.rho_ab, r.rho_cb, r.rho_ca}; }

double dist(const qeit::CoherenceVector& r, const oracle::Vec3& v) {
  return std::max({std::abs(r.rho_ab - v[0]), std::abs(r.rho_cb - v[1]), std::abs(r.rho_ca - v[2])});
}

}  // namespace

TEST_CASE("drift matrix structure for the fully coupled case") {
  const auto p = default_params();
  const double delta = 0.37;
  const auto sys = qeit::build_sector(p, DriveCase::b, 4, 24, delta);

  const double gc1 = p.g1 * 2.0;  // sqrt(n1) = 2
  const double gc2 = p.g2 * 5.0;  // sqrt(n2 + 1) = 5
  const cd i{0.0, 1.0};

  CHECK(sys.M(0, 0) == p.gamma1 + i * delta);
  CHECK(sys.M(0, 1) == -i * gc2);
  CHECK(sys.M(0, 2) == cd{0.0, 0.0});
  CHECK(sys.M(1, 0) == -i * gc2);
  CHECK(sys.M(1, 1) == p.gamma3 + i * delta);
  CHECK(sys.M(1, 2) == i * gc1);
  CHECK(sys.M(2, 0) == cd{0.0, 0.0});
  CHECK(sys.M(2, 1) == i * gc1);
  CHECK(sys.M(2, 2) == cd{p.gamma2, 0.0});

  CHECK(sys.A.a1 == i * 0.5);  // rho_bb0 = 1
  CHECK(sys.A.a2 == cd{0.0, 0.0});
  CHECK(sys.A.a3 == cd{0.0, 0.0});
}

TEST_CASE("undriven probe removes its couplings") {
  const auto p = default_params();
  const auto sys = qeit::build_sector(p, DriveCase::a, 4, 24, 0.1);
  CHECK(sys.M(1, 2) == cd{0.0, 0.0});
  CHECK(sys.M(2, 1) == cd{0.0, 0.0});
  CHECK(sys.A.a1 == cd(0.0, 0.5));
  CHECK(sys.rho_bb0 == 1.0);
  CHECK(sys.rho_cc0 == 0.0);
}

TEST_CASE("dark-state preparation sets the sector populations") {
  const auto p = default_params();
  const auto sys = qeit::build_sector(p, DriveCase::c, 9, 35, 0.0);
  const auto r = qeit::rabi(p, 9, 35);
  const double w2 = r.omega * r.omega;
  CHECK(sys.rho_bb0 == doctest::Approx(r.omega2 * r.omega2 / w2).epsilon(1e-15));
  CHECK(sys.rho_cc0 == doctest::Approx(r.omega1 * r.omega1 / w2).epsilon(1e-15));
  CHECK(sys.rho_bb0 + sys.rho_cc0 == doctest::Approx(1.0).epsilon(1e-15));

  // Population overrides are honored and validated.
  const auto forced = qeit::build_sector(p, DriveCase::c, 9, 35, 0.0, 0.25, 0.5);
  CHECK(forced.rho_bb0 == 0.25);
  CHECK(forced.rho_cc0 == 0.5);
  CHECK_THROWS_AS(qeit::build_sector(p, DriveCase::b, 1, 1, 0.0, 0.8, 0.8),
                  std::invalid_argument);
}

TEST_CASE("steady state satisfies its residual contract") {
  const auto p = default_params();
  for (double delta : {-0.9, -0.3, 0.0, 0.45, 1.0}) {
    const auto sys = qeit::build_sector(p, DriveCase::b, 2, 500, delta);
    const auto r = qeit::steady_state(sys);

    const auto m = to_mat(sys.M);
    const auto a = to_vec(sys.A);
    oracle::Vec3 res;
    for (int i = 0; i < 3; ++i) {
      cd acc = -a[i];
      for (int j = 0; j < 3; ++j) acc += m[i][j] * to_vec(r)[j];
      res[i] = acc;
    }
    CHECK(oracle::max_abs(res) <= 1e-12 * oracle::max_abs(a));
  }
}

TEST_CASE("steady state agrees with long-time integration") {
  const auto p = default_params();
  const auto sys = qeit::build_sector(p, DriveCase::b, 1, 500, -0.2);
  const auto ss = qeit::steady_state(sys);

  const double rate = qeit::slowest_rate(sys.M);
  REQUIRE(rate > 0.0);
  const auto integrated = oracle::integrate_rk45(to_mat(sys.M), to_vec(sys.A),
                                                 {cd{0}, cd{0}, cd{0}}, 60.0 / rate, 1e-13);
  CHECK(dist(ss, integrated) <= 1e-9);
}

TEST_CASE("evolve matches adaptive integration on physical sectors") {
  const auto p = default_params();
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  for (int trial = 0; trial < 12; ++trial) {
    const auto drive_case = trial % 2 == 0 ? DriveCase::b : DriveCase::c;
    const auto n1 = 1 + trial % 4;
    const auto n2 = 50 + 100 * (trial % 5);
    const double delta = unif(rng);
    const auto sys = qeit::build_sector(p, drive_case, n1, n2, delta);

    qeit::CoherenceVector r0;
    r0.rho_ab = cd{0.1 * unif(rng), 0.1 * unif(rng)};
    r0.rho_cb = cd{0.5 * unif(rng), 0.5 * unif(rng)};
    r0.rho_ca = cd{0.1 * unif(rng), 0.1 * unif(rng)};
    const double t = 5.0 * std::abs(unif(rng)) + 0.1;

    const auto got = qeit::evolve(sys, r0, t);
    const auto ref = oracle::integrate_rk45(to_mat(sys.M), to_vec(sys.A), to_vec(r0), t, 1e-13);
    CAPTURE(trial);
    CHECK(dist(got, ref) <= 1e-9);
  }
}

TEST_CASE("both matrix-exponential routes agree") {
  const auto p = default_params();
  for (double delta : {-0.6, 0.0, 0.8}) {
    const auto sys = qeit::build_sector(p, DriveCase::b, 3, 200, delta);
    qeit::CoherenceVector r0;
    r0.rho_cb = cd{-0.3, 0.1};
    for (double t : {0.05, 1.0, 12.0}) {
      const auto via_eigen = qeit::evolve(sys, r0, t, qeit::ExpmMethod::eigendecomposition);
      const auto via_pade = qeit::evolve(sys, r0, t, qeit::ExpmMethod::pade);
      CHECK(dist(via_eigen, to_vec(via_pade)) <= 1e-11);
    }
  }
}

TEST_CASE("evolve endpoint behavior") {
  const auto p = default_params();
  const auto sys = qeit::build_sector(p, DriveCase::b, 1, 100, 0.3);
  qeit::CoherenceVector r0;
  r0.rho_ab = cd{0.2, -0.1};

  const auto at_zero = qeit::evolve(sys, r0, 0.0);
  CHECK(at_zero.rho_ab == r0.rho_ab);
  CHECK(at_zero.rho_cb == r0.rho_cb);
  CHECK(at_zero.rho_ca == r0.rho_ca);
  CHECK_THROWS_AS(qeit::evolve(sys, r0, -1.0), std::invalid_argument);

  const double rate = qeit::slowest_rate(sys.M);
  const auto late = qeit::evolve(sys, r0, 50.0 / rate);
  const auto ss = qeit::steady_state(sys);
  CHECK(dist(late, to_vec(ss)) <= 1e-8);
}

TEST_CASE("singular sector is rejected with its label") {
  // gamma2 = 0 with an empty probe mode zeroes the third row of M.
  auto p = default_params();
  p.gamma2 = 0.0;
  const auto sys = qeit::build_sector(p, DriveCase::b, 0, 100, 0.0);
  bool threw = false;
  try {
    (void)qeit::steady_state(sys);
  } catch (const qeit::SingularityError& e) {
    threw = true;
    CHECK(std::string(e.what()).find("n2=100") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("slowest decay rate matches the analytic block spectrum") {
  auto p = default_params();
  p.gamma3 = 0.05;
  p.gamma2 = 0.4;
  const int n2 = 900;
  const auto sys = qeit::build_sector(p, DriveCase::a, 0, n2, 0.25);

  const double gc2 = p.g2 * std::sqrt(double(n2 + 1));
  const double mean = 0.5 * (p.gamma1 + p.gamma3);
  const double d = 0.5 * (p.gamma1 - p.gamma3);
  // The 2x2 probe/ground block has eigenvalue real parts mean -+ Re sqrt(d^2 - gc2^2).
  const cd root = std::sqrt(cd{d * d - gc2 * gc2, 0.0});
  const double block_min = mean - std::abs(root.real());
  const double expected = std::min(block_min, p.gamma2);
  CHECK(qeit::slowest_rate(sys.M) == doctest::Approx(expected).epsilon(1e-10));
}
