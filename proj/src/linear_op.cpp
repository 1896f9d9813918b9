#include "olb/linear_op.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace olb {

namespace {

void fill_block(int d, const ModelParams& p, const Real* xi, int m, Cmplx* B) {
  const Cmplx I(0, 1);
  std::fill(B, B + (size_t)m * m, Cmplx(0));
  Real xi2 = 0;
  for (int a = 0; a < d; ++a) xi2 += xi[a] * xi[a];
  auto at = [&](int r, int c) -> Cmplx& { return B[(size_t)r * m + c]; };

  for (int j = 0; j < d; ++j) at(0, 1 + j) = -I * xi[j];

  const Real nu = (1 - p.omega) / p.Re;
  for (int i = 0; i < d; ++i) {
    at(1 + i, 0) = -I * xi[i];
    at(1 + i, 1 + i) -= nu * xi2;
    for (int j = 0; j < d; ++j) at(1 + i, 1 + j) -= nu * xi[i] * xi[j];
    for (int r = 0; r < d; ++r)
      for (int s = r; s < d; ++s) {
        const int c = 1 + d + sym_index(r, s, d);
        if (i == r) at(1 + i, c) += (I / p.Re) * xi[s];
        if (i == s && s != r) at(1 + i, c) += (I / p.Re) * xi[r];
      }
  }

  for (int r = 0; r < d; ++r)
    for (int s = r; s < d; ++s) {
      const int c = 1 + d + sym_index(r, s, d);
      at(c, c) = -1.0 / p.We;
      at(c, 1 + r) += (I * p.omega / p.We) * xi[s];
      at(c, 1 + s) += (I * p.omega / p.We) * xi[r];
    }
}

// divtau_i = i sum_j xi_j tau_{ij} from the packed tail of a mode vector
void div_stress(int d, const Real* xi, const Cmplx* y, Cmplx* dt) {
  const Cmplx I(0, 1);
  for (int i = 0; i < d; ++i) {
    Cmplx s(0);
    for (int j = 0; j < d; ++j)
      s += xi[j] * y[1 + d + sym_index(std::min(i, j), std::max(i, j), d)];
    dt[i] = I * s;
  }
}

// The blocks are isotropic, so conjugating by the splitting along e = xi/|xi|
// must close: the longitudinal triple (a, e.u, e.divtau) evolves by
//   a'  = -i|xi| u_l
//   u_l'= -2 nu |xi|^2 u_l - i|xi| a + (1/Re) s_l
//   s_l'= -(2 omega/We)|xi|^2 u_l - s_l/We
// and the transverse pair (u_t, divtau_t) by
//   u_t'= -nu |xi|^2 u_t + (1/Re) s_t
//   s_t'= -(omega/We)|xi|^2 u_t - s_t/We.
// Checked by applying the block to a generic vector.
void check_split_closure(const Grid& g, const ModelParams& p, int m, long mode,
                         const Cmplx* B) {
  const int d = g.d;
  Real xi[3];
  g.xi_of(mode, xi);
  Real xi2 = 0;
  for (int a = 0; a < d; ++a) xi2 += xi[a] * xi[a];
  if (xi2 == 0) return;
  const Real r = std::sqrt(xi2);
  Real e[3];
  for (int a = 0; a < d; ++a) e[a] = xi[a] / r;

  Cmplx y[10], z[10];
  for (int k = 0; k < m; ++k)
    y[k] = Cmplx(0.31 + 0.617 * std::cos(1.0 + k), 0.22 - 0.441 * std::sin(2.0 + k));
  for (int i = 0; i < m; ++i) {
    Cmplx s(0);
    for (int j = 0; j < m; ++j) s += B[(size_t)i * m + j] * y[j];
    z[i] = s;
  }

  const Cmplx I(0, 1);
  const Real nu = (1 - p.omega) / p.Re;
  Cmplx dty[3], dtz[3];
  div_stress(d, xi, y, dty);
  div_stress(d, xi, z, dtz);

  Cmplx ul(0), sl(0), ul2(0), sl2(0);
  for (int a = 0; a < d; ++a) {
    ul += e[a] * y[1 + a];
    sl += e[a] * dty[a];
    ul2 += e[a] * z[1 + a];
    sl2 += e[a] * dtz[a];
  }

  Real res = std::abs(z[0] + I * r * ul);
  res = std::max(res, std::abs(ul2 + 2 * nu * xi2 * ul + I * r * y[0] - sl / p.Re));
  res = std::max(res, std::abs(sl2 + (2 * p.omega / p.We) * xi2 * ul + sl / p.We));
  for (int a = 0; a < d; ++a) {
    const Cmplx ut = y[1 + a] - ul * e[a];
    const Cmplx st = dty[a] - sl * e[a];
    const Cmplx ut2 = z[1 + a] - ul2 * e[a];
    const Cmplx st2 = dtz[a] - sl2 * e[a];
    res = std::max(res, std::abs(ut2 + nu * xi2 * ut - st / p.Re));
    res = std::max(res, std::abs(st2 + (p.omega / p.We) * xi2 * ut + st / p.We));
  }

  const Real scale = (1 + xi2) * (1 + 1 / p.Re + 1 / p.We);
  if (res > 1e-12 * scale) {
    std::ostringstream os;
    os << "mode block fails the split closure at xi = (";
    for (int a = 0; a < d; ++a) os << (a ? "," : "") << xi[a];
    os << "): residual " << res;
    throw Error(os.str());
  }
}

} // namespace

void LinearModeOperator::mode_block(long mode, Cmplx* B) const {
  Real xi[3];
  g.xi_of(mode, xi);
  fill_block(g.d, p, xi, m, B);
}

LinearModeOperator assemble_linear_operator(const Grid& g, const ModelParams& p) {
  p.validate();
  if (g.d != p.d) throw ConfigError("grid and model dimension disagree");
  LinearModeOperator op;
  op.g = g;
  op.p = p;
  op.m = 1 + g.d + g.d * (g.d + 1) / 2;

  std::set<long> radii;
  for (long mode = 0; mode < g.modes; ++mode) {
    if (g.aliased(mode)) continue;
    op.active.push_back(mode);
    int k[3];
    g.k_of(mode, k);
    long r2 = 0;
    for (int a = 0; a < g.d; ++a) r2 += (long)k[a] * k[a];
    radii.insert(r2);
  }

  std::vector<Cmplx> B((size_t)op.m * op.m);
  for (long mode : op.active) {
    op.mode_block(mode, B.data());
    check_split_closure(g, p, op.m, mode, B.data());
  }

  // the blocks depend on xi only through |xi| up to unitary conjugation, so
  // one eigensolve per radius covers the whole mask
  Real worst = -std::numeric_limits<Real>::infinity();
  Real worst_r2 = 0;
  Eigen::MatrixXcd Bm(op.m, op.m);
  for (long r2 : radii) {
    Real xi[3] = {std::sqrt((Real)r2) / g.L, 0, 0};
    fill_block(g.d, p, xi, op.m, B.data());
    for (int i = 0; i < op.m; ++i)
      for (int j = 0; j < op.m; ++j) Bm(i, j) = B[(size_t)i * op.m + j];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Bm, false);
    const Real a = es.eigenvalues().real().maxCoeff();
    if (a > worst) {
      worst = a;
      worst_r2 = (Real)r2;
    }
  }
  op.spectral_abscissa = worst;
  if (!(worst <= 1e-10 * (1 + worst_r2 / (g.L * g.L)))) {
    std::ostringstream os;
    os << "linear operator has an unstable mode: max Re(lambda) = " << worst
       << " at |xi|^2 = " << worst_r2 / (g.L * g.L);
    throw Error(os.str());
  }
  return op;
}

Propagator make_propagator(const LinearModeOperator& op, Real h) {
  if (!(h > 0) || !std::isfinite(h)) throw ConfigError("propagator needs h > 0");
  Propagator prop;
  prop.g = op.g;
  prop.m = op.m;
  prop.h = h;
  prop.active = op.active;
  const int m = op.m;
  const long n = (long)op.active.size();
  prop.E.assign((size_t)n * m * m, Cmplx(0));

  std::vector<Cmplx> B((size_t)m * m);
  Eigen::MatrixXcd Bm(m, m);
  for (long i = 0; i < n; ++i) {
    op.mode_block(op.active[(size_t)i], B.data());
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) Bm(r, c) = h * B[(size_t)r * m + c];
    const Eigen::MatrixXcd Em = Bm.exp();
    Cmplx* out = &prop.E[(size_t)i * m * m];
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) out[(size_t)r * m + c] = Em(r, c);
  }
  return prop;
}

void Propagator::apply(State& s) const {
  if (!s.grid().same(g)) throw ConfigError("propagator grid mismatch");
  const int d = g.d;
  const int nt = d * (d + 1) / 2;
  if (m != 1 + d + nt) throw ConfigError("propagator block dimension mismatch");
  const long n = (long)active.size();
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const long mode = active[(size_t)i];
    const Cmplx* Em = &E[(size_t)i * m * m];
    Cmplx y[10], z[10];
    y[0] = s.a.c[0][mode];
    for (int j = 0; j < d; ++j) y[1 + j] = s.u.c[j][mode];
    for (int c = 0; c < nt; ++c) y[1 + d + c] = s.tau.c[c][mode];
    for (int r = 0; r < m; ++r) {
      Cmplx acc(0);
      for (int c = 0; c < m; ++c) acc += Em[(size_t)r * m + c] * y[c];
      z[r] = acc;
    }
    s.a.c[0][mode] = z[0];
    for (int j = 0; j < d; ++j) s.u.c[j][mode] = z[1 + j];
    for (int c = 0; c < nt; ++c) s.tau.c[c][mode] = z[1 + d + c];
  }
}

} // namespace olb
