#include "qeit/coherence.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qeit/dark_state.hpp"

namespace qeit {

namespace {

using C = std::complex<double>;
using Mat3 = std::array<std::array<C, 3>, 3>;
using Vec3 = std::array<C, 3>;

constexpr double kCondLimit = 1e12;        // steady-state singularity threshold
constexpr double kEigencondLimit = 1e8;    // eigendecomposition route threshold

Mat3 to_mat3(const DriftMatrix& m) {
  Mat3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = m(i, j);
  return a;
}

Eigen::Matrix3cd to_eigen(const DriftMatrix& m) {
  Eigen::Matrix3cd a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = m(i, j);
  return a;
}

Vec3 to_vec3(const CoherenceVector& r) { return {r.rho_ab, r.rho_cb, r.rho_ca}; }
Vec3 to_vec3(const DriveVector& a) { return {a.a1, a.a2, a.a3}; }

CoherenceVector to_coherence(const Vec3& v) {
  CoherenceVector r;
  r.rho_ab = v[0];
  r.rho_cb = v[1];
  r.rho_ca = v[2];
  return r;
}

double vec_norm(const Vec3& v) {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

Vec3 mat_vec(const Mat3& m, const Vec3& v) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i] += m[i][j] * v[j];
  return out;
}

Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      C s{0.0, 0.0};
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      out[i][j] = s;
    }
  return out;
}

Mat3 mat_add(const Mat3& a, const Mat3& b) {
  Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = a[i][j] + b[i][j];
  return out;
}

Mat3 mat_scale(const Mat3& a, C s) {
  Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = s * a[i][j];
  return out;
}

Mat3 identity3() {
  Mat3 out{};
  out[0][0] = out[1][1] = out[2][2] = C{1.0, 0.0};
  return out;
}

double norm1(const Mat3& a) {
  double best = 0.0;
  for (int j = 0; j < 3; ++j) {
    double col = 0.0;
    for (int i = 0; i < 3; ++i) col += std::abs(a[i][j]);
    best = std::max(best, col);
  }
  return best;
}

// Gaussian elimination with partial pivoting on the 3x3 complex system
// a x = b for several right-hand sides.  Throws on an exactly zero pivot;
// near-singularity is screened by the callers' condition estimates.
void solve3(Mat3 a, std::array<Vec3, 3>& rhs, int nrhs) {
  int perm[3] = {0, 1, 2};
  for (int k = 0; k < 3; ++k) {
    int p = k;
    for (int i = k + 1; i < 3; ++i)
      if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
    if (std::abs(a[p][k]) == 0.0) throw SingularityError("3x3 solve: zero pivot");
    std::swap(a[k], a[p]);
    std::swap(perm[k], perm[p]);
    for (int r = 0; r < nrhs; ++r) std::swap(rhs[r][k], rhs[r][p]);
    for (int i = k + 1; i < 3; ++i) {
      const C f = a[i][k] / a[k][k];
      a[i][k] = f;
      for (int j = k + 1; j < 3; ++j) a[i][j] -= f * a[k][j];
      for (int r = 0; r < nrhs; ++r) rhs[r][i] -= f * rhs[r][k];
    }
  }
  for (int r = 0; r < nrhs; ++r) {
    for (int k = 2; k >= 0; --k) {
      for (int j = k + 1; j < 3; ++j) rhs[r][k] -= a[k][j] * rhs[r][j];
      rhs[r][k] /= a[k][k];
    }
  }
}

Vec3 solve3(const Mat3& a, const Vec3& b) {
  std::array<Vec3, 3> rhs{};
  rhs[0] = b;
  solve3(a, rhs, 1);
  return rhs[0];
}

// One step of iterative refinement with the residual accumulated in long
// double; pushes the double-precision solve down to its quantization floor.
Vec3 refine(const Mat3& a, const Vec3& b, Vec3 x) {
  for (int pass = 0; pass < 2; ++pass) {
    Vec3 r;
    for (int i = 0; i < 3; ++i) {
      std::complex<long double> acc(b[i].real(), b[i].imag());
      for (int j = 0; j < 3; ++j) {
        const std::complex<long double> aij(a[i][j].real(), a[i][j].imag());
        const std::complex<long double> xj(x[j].real(), x[j].imag());
        acc -= aij * xj;
      }
      r[i] = C(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    }
    const Vec3 dx = solve3(a, r);
    for (int i = 0; i < 3; ++i) x[i] += dx[i];
  }
  return x;
}

double condition_number(const Eigen::Matrix3cd& m) {
  Eigen::JacobiSVD<Eigen::Matrix3cd> svd(m);
  const double smin = svd.singularValues()(2);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return svd.singularValues()(0) / smin;
}

// Matrix exponential exp(a) by Pade-13 approximation with scaling and
// squaring (Higham's coefficients); self-contained so it is an independent
// cross-check of the eigendecomposition route.
Mat3 expm_pade(const Mat3& a_in) {
  static const double b[14] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
  const double theta13 = 5.371920351148152;

  Mat3 a = a_in;
  int squarings = 0;
  const double n1 = norm1(a);
  if (n1 > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(n1 / theta13)));
    a = mat_scale(a, C(std::ldexp(1.0, -squarings), 0.0));
  }

  const Mat3 id = identity3();
  const Mat3 a2 = mat_mul(a, a);
  const Mat3 a4 = mat_mul(a2, a2);
  const Mat3 a6 = mat_mul(a2, a4);

  // U = a * (a6*(b13 a6 + b11 a4 + b9 a2) + b7 a6 + b5 a4 + b3 a2 + b1 I)
  Mat3 u_inner = mat_add(mat_scale(a6, C(b[13], 0.0)),
                         mat_add(mat_scale(a4, C(b[11], 0.0)), mat_scale(a2, C(b[9], 0.0))));
  Mat3 u = mat_mul(a6, u_inner);
  u = mat_add(u, mat_scale(a6, C(b[7], 0.0)));
  u = mat_add(u, mat_scale(a4, C(b[5], 0.0)));
  u = mat_add(u, mat_scale(a2, C(b[3], 0.0)));
  u = mat_add(u, mat_scale(id, C(b[1], 0.0)));
  u = mat_mul(a, u);

  // V = a6*(b12 a6 + b10 a4 + b8 a2) + b6 a6 + b4 a4 + b2 a2 + b0 I
  Mat3 v_inner = mat_add(mat_scale(a6, C(b[12], 0.0)),
                         mat_add(mat_scale(a4, C(b[10], 0.0)), mat_scale(a2, C(b[8], 0.0))));
  Mat3 v = mat_mul(a6, v_inner);
  v = mat_add(v, mat_scale(a6, C(b[6], 0.0)));
  v = mat_add(v, mat_scale(a4, C(b[4], 0.0)));
  v = mat_add(v, mat_scale(a2, C(b[2], 0.0)));
  v = mat_add(v, mat_scale(id, C(b[0], 0.0)));

  // exp(a) = (V - U)^{-1} (V + U)
  const Mat3 vmu = mat_add(v, mat_scale(u, C(-1.0, 0.0)));
  const Mat3 vpu = mat_add(v, u);
  std::array<Vec3, 3> cols{};
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) cols[j][i] = vpu[i][j];
  solve3(vmu, cols, 3);
  Mat3 e{};
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) e[i][j] = cols[j][i];

  for (int k = 0; k < squarings; ++k) e = mat_mul(e, e);
  return e;
}

// exp(a) through the spectral decomposition a = V diag(lambda) V^{-1}.
// Returns false when the eigenvector matrix is too ill-conditioned to trust.
bool expm_eigen(const Eigen::Matrix3cd& a, Mat3& out) {
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(a);
  if (es.info() != Eigen::Success) return false;
  const Eigen::Matrix3cd v = es.eigenvectors();
  if (!(condition_number(v) < kEigencondLimit)) return false;

  Eigen::Vector3cd lam = es.eigenvalues();
  Eigen::Matrix3cd d = Eigen::Matrix3cd::Zero();
  for (int i = 0; i < 3; ++i) d(i, i) = std::exp(lam(i));
  const Eigen::Matrix3cd e = v * d * v.partialPivLu().solve(Eigen::Matrix3cd::Identity());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = e(i, j);
  return true;
}

Mat3 expm_route(const Mat3& a, const Eigen::Matrix3cd& ae, ExpmMethod method) {
  Mat3 out;
  switch (method) {
    case ExpmMethod::pade:
      return expm_pade(a);
    case ExpmMethod::eigendecomposition:
      if (!expm_eigen(ae, out))
        throw SingularityError("evolve: eigenvector matrix too ill-conditioned for the "
                               "eigendecomposition route");
      return out;
    case ExpmMethod::automatic:
      if (expm_eigen(ae, out)) return out;
      return expm_pade(a);
  }
  return expm_pade(a);
}

}  // namespace

double norm(const CoherenceVector& r) {
  return std::sqrt(std::norm(r.rho_ab) + std::norm(r.rho_cb) + std::norm(r.rho_ca));
}

std::string SectorSystem::label() const {
  std::ostringstream os;
  os << "case " << to_string(drive_case) << " sector (n1=" << n1 << ", n2=" << n2
     << ") at delta1=" << delta1;
  return os.str();
}

SectorSystem build_sector(const SystemParams& params, DriveCase drive_case, std::int64_t n1,
                          std::int64_t n2, double delta1, std::optional<double> rho_bb0,
                          std::optional<double> rho_cc0) {
  params.validate();
  if (n1 < 0 || n2 < 0) throw std::invalid_argument("build_sector: photon numbers must be >= 0");

  SectorSystem sys;
  sys.drive_case = drive_case;
  sys.n1 = n1;
  sys.n2 = n2;
  sys.delta1 = delta1;

  const C i1{0.0, 1.0};
  const double gc = params.g2 * std::sqrt(static_cast<double>(n2) + 1.0);
  const double gp = params.g1 * std::sqrt(static_cast<double>(n1));

  DriftMatrix& m = sys.M;
  m(0, 0) = params.gamma1 + i1 * delta1;
  m(0, 1) = -i1 * gc;
  m(0, 2) = C{0.0, 0.0};
  m(1, 0) = -i1 * gc;
  m(1, 1) = params.gamma3 + i1 * delta1;
  m(1, 2) = i1 * gp;
  m(2, 0) = C{0.0, 0.0};
  m(2, 1) = i1 * gp;
  m(2, 2) = C{params.gamma2, 0.0};

  double bb0 = 1.0, cc0 = 0.0;
  switch (drive_case) {
    case DriveCase::a:
      // Probe in vacuum: its couplings drop out of M and the atom sits in |b>.
      m(1, 2) = m(2, 1) = C{0.0, 0.0};
      break;
    case DriveCase::b:
      break;
    case DriveCase::c: {
      // Populations frozen at the dark-state values of the sector.  (Note the
      // off-diagonal M entries use g1*sqrt(n1) while the weak-weak chi formula
      // carries g1^2*(n1+1); both are implemented exactly as specified, and
      // the chi <-> steady-state cross-check is defined for case a only,
      // where the probe entries vanish.)
      const RabiTriple rt = rabi(params, n1, n2);
      bb0 = (rt.omega2 * rt.omega2) / (rt.omega * rt.omega);
      cc0 = (rt.omega1 * rt.omega1) / (rt.omega * rt.omega);
      break;
    }
  }
  if (drive_case != DriveCase::a) {
    if (rho_bb0) bb0 = *rho_bb0;
    if (rho_cc0) cc0 = *rho_cc0;
  }
  if (bb0 < 0.0 || cc0 < 0.0 || bb0 + cc0 > 1.0 + 1e-12)
    throw std::invalid_argument("build_sector: populations must satisfy 0 <= bb0 + cc0 <= 1");

  sys.rho_bb0 = bb0;
  sys.rho_cc0 = cc0;
  sys.A.a1 = i1 * bb0 * 0.5;
  sys.A.a2 = C{0.0, 0.0};
  sys.A.a3 = i1 * cc0 * 0.5;
  return sys;
}

CoherenceVector steady_state(const DriftMatrix& M, const DriveVector& A,
                             const std::string& label) {
  const double cond = condition_number(to_eigen(M));
  if (!(cond <= kCondLimit))
    throw SingularityError("steady_state: drift matrix condition " + std::to_string(cond) +
                           " exceeds 1e12 for " + label);

  const Mat3 m = to_mat3(M);
  const Vec3 b = to_vec3(A);
  Vec3 x = refine(m, b, solve3(m, b));

  const double bn = vec_norm(b);
  Vec3 r = mat_vec(m, x);
  for (int i = 0; i < 3; ++i) r[i] -= b[i];
  if (vec_norm(r) > 1e-12 * bn)
    throw SingularityError("steady_state: solve residual " + std::to_string(vec_norm(r)) +
                           " exceeds 1e-12*||A|| for " + label);
  return to_coherence(x);
}

CoherenceVector steady_state(const SectorSystem& sys) {
  return steady_state(sys.M, sys.A, sys.label());
}

CoherenceVector evolve(const SectorSystem& sys, const CoherenceVector& r0, double t,
                       ExpmMethod method) {
  if (!(t >= 0.0)) throw std::invalid_argument("evolve: t must be >= 0");

  const Mat3 m = to_mat3(sys.M);
  const Mat3 mt = mat_scale(m, C(-t, 0.0));
  const Eigen::Matrix3cd mte = to_eigen(sys.M) * C(-t, 0.0);
  const Mat3 e = expm_route(mt, mte, method);

  const Vec3 v0 = to_vec3(r0);
  Vec3 out = mat_vec(e, v0);

  const Vec3 a = to_vec3(sys.A);
  if (vec_norm(a) > 0.0) {
    // (1 - e^{-Mt}) M^{-1} A; the steady solve reuses the conditioned path so
    // a singular M surfaces as an explicit error rather than garbage.
    const CoherenceVector ss = steady_state(sys);
    const Vec3 s = to_vec3(ss);
    const Vec3 es = mat_vec(e, s);
    for (int i = 0; i < 3; ++i) out[i] += s[i] - es[i];
  }
  return to_coherence(out);
}

double slowest_rate(const DriftMatrix& M) {
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(to_eigen(M));
  if (es.info() != Eigen::Success) throw SingularityError("slowest_rate: eigensolver failed");
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) best = std::min(best, es.eigenvalues()(i).real());
  return best;
}

}  // namespace qeit
