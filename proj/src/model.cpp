#include "olb/model.hpp"

#include <cmath>
#include <limits>

#include "olb/ops.hpp"
#include "olb/paraproduct.hpp"

namespace olb {

void ModelParams::validate() const {
  if (d != 2 && d != 3) throw ConfigError("params: d must be 2 or 3");
  if (!(Re > 0.0)) throw ConfigError("params: Re must be positive");
  if (!(We > 0.0)) throw ConfigError("params: We must be positive");
  if (!(omega > 0.0 && omega < 1.0)) throw ConfigError("params: omega must lie in (0,1)");
  if (!(alpha >= -1.0 && alpha <= 1.0)) throw ConfigError("params: alpha must lie in [-1,1]");
  if (!(gamma >= 1.0)) throw ConfigError("params: gamma must be >= 1");
}

State State::zero(const Grid& g) {
  State s;
  s.a = SpectralField::zero(g, Rank::scalar);
  s.u = SpectralField::zero(g, Rank::vector);
  s.tau = SpectralField::zero(g, Rank::sym);
  return s;
}

State operator+(const State& x, const State& y) {
  return State{x.a + y.a, x.u + y.u, x.tau + y.tau};
}

State operator-(const State& x, const State& y) {
  return State{x.a - y.a, x.u - y.u, x.tau - y.tau};
}

State operator*(Real s, const State& x) {
  return State{s * x.a, s * x.u, s * x.tau};
}

void axpy(State& y, Real a, const State& x) {
  axpy(y.a, a, x.a);
  axpy(y.u, a, x.u);
  axpy(y.tau, a, x.tau);
}

namespace {

// real samples of a with the positivity of 1 + a enforced
std::vector<Real> density_samples(const SpectralField& a) {
  if (a.rank != Rank::scalar) throw Error("density: scalar field expected");
  std::vector<Real> ar = real_samples(a.g, a.c[0]);
  long n = a.g.modes;
  Real lo = std::numeric_limits<Real>::infinity();
#pragma omp parallel for schedule(static) reduction(min : lo)
  for (long m = 0; m < n; ++m) lo = std::min(lo, 1.0 + ar[m]);
  if (!(lo > 0.0)) throw VacuumError("density floor reached: min(1+a) <= 0");
  return ar;
}

SpectralField from_samples(const Grid& g, Rank rank,
                           const std::vector<std::vector<Real>>& v) {
  SpectralField f = SpectralField::zero(g, rank);
  for (int c = 0; c < f.nc; ++c) f.c[c] = spectrum_of(g, v[c]);
  dealias_inplace(f);
  return f;
}

// g_alpha on real sample arrays; jr is the d*d Jacobian, taur the packed
// symmetric stress
std::vector<std::vector<Real>> g_alpha_samples(const Grid& g,
                                               const std::vector<std::vector<Real>>& taur,
                                               const std::vector<std::vector<Real>>& jr,
                                               Real alpha) {
  int d = g.d, ns = d * (d + 1) / 2;
  long n = g.modes;
  std::vector<std::vector<Real>> out(ns, std::vector<Real>(n));
#pragma omp parallel for schedule(static)
  for (long m = 0; m < n; ++m) {
    Real J[3][3], T[3][3], D[3][3], W[3][3];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) J[i][j] = jr[i * d + j][m];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        T[i][j] = taur[sym_index(i, j, d)][m];
        D[i][j] = 0.5 * (J[i][j] + J[j][i]);
        W[i][j] = 0.5 * (J[i][j] - J[j][i]);
      }
    for (int i = 0; i < d; ++i)
      for (int k = i; k < d; ++k) {
        Real s = 0.0;
        for (int j = 0; j < d; ++j)
          s += T[i][j] * W[j][k] - W[i][j] * T[j][k] -
               alpha * (D[i][j] * T[j][k] + T[i][j] * D[j][k]);
        out[sym_index(i, k, d)][m] = s;
      }
  }
  return out;
}

std::vector<std::vector<Real>> all_samples(const SpectralField& f) {
  std::vector<std::vector<Real>> r(f.nc);
  for (int c = 0; c < f.nc; ++c) r[c] = real_samples(f.g, f.c[c]);
  return r;
}

}  // namespace

SpectralField I_of_a(const SpectralField& a) {
  std::vector<Real> ar = density_samples(a);
  long n = a.g.modes;
#pragma omp parallel for schedule(static)
  for (long m = 0; m < n; ++m) ar[m] = ar[m] / (1.0 + ar[m]);
  return from_samples(a.g, Rank::scalar, {ar});
}

SpectralField K_tilde_of_a(const SpectralField& a, const ModelParams& p) {
  std::vector<Real> ar = density_samples(a);
  long n = a.g.modes;
  Real dpref = p.gamma * std::pow(p.Re, p.gamma - 1.0);  // p'(Re)
#pragma omp parallel for schedule(static)
  for (long m = 0; m < n; ++m) {
    Real h = 1.0 + ar[m];
    Real dp = p.gamma * std::pow(p.Re * h, p.gamma - 1.0);
    ar[m] = ar[m] / h - (dp - dpref) / h;
  }
  return from_samples(a.g, Rank::scalar, {ar});
}

SpectralField g_alpha(const SpectralField& tau, const SpectralField& grad_u,
                      Real alpha_slip) {
  if (tau.rank != Rank::sym) throw Error("g_alpha: symmetric stress expected");
  if (grad_u.rank != Rank::tensor) throw Error("g_alpha: full Jacobian expected");
  if (!tau.g.same(grad_u.g)) throw Error("g_alpha: grid mismatch");
  return from_samples(tau.g, Rank::sym,
                      g_alpha_samples(tau.g, all_samples(tau), all_samples(grad_u), alpha_slip));
}

State rhs_full(const State& s, const ModelParams& p) {
  const Grid& g = s.grid();
  int d = g.d;
  long n = g.modes;

  std::vector<Real> ar = density_samples(s.a);
  std::vector<std::vector<Real>> ur = all_samples(s.u);
  std::vector<std::vector<Real>> jr = all_samples(jacobian(s.u));
  std::vector<std::vector<Real>> taur = all_samples(s.tau);

  State r = State::zero(g);

  // mass: -div u - div(a u)
  {
    std::vector<std::vector<Real>> au(d, std::vector<Real>(n));
    for (int j = 0; j < d; ++j) {
#pragma omp parallel for schedule(static)
      for (long m = 0; m < n; ++m) au[j][m] = ar[m] * ur[j][m];
    }
    r.a = -1.0 * (divergence(s.u) + divergence(from_samples(g, Rank::vector, au)));
  }

  // momentum
  {
    SpectralField Au = a_op(s.u, p.omega);
    SpectralField dtau = div_sym(s.tau);
    SpectralField grada = gradient(s.a);

    // advective term (u.grad)u
    std::vector<std::vector<Real>> adv(d, std::vector<Real>(n, 0.0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
#pragma omp parallel for schedule(static)
        for (long m = 0; m < n; ++m) adv[i][m] += ur[j][m] * jr[i * d + j][m];
      }

    // I(a)(Au + div tau) and K_tilde(a) grad a
    std::vector<std::vector<Real>> wr = all_samples(Au + dtau);
    std::vector<std::vector<Real>> gr = all_samples(grada);
    Real dpref = p.gamma * std::pow(p.Re, p.gamma - 1.0);
    std::vector<std::vector<Real>> iw(d, std::vector<Real>(n)), kg(d, std::vector<Real>(n));
    for (int i = 0; i < d; ++i) {
#pragma omp parallel for schedule(static)
      for (long m = 0; m < n; ++m) {
        Real h = 1.0 + ar[m];
        Real Ia = ar[m] / h;
        Real Kt = Ia - (p.gamma * std::pow(p.Re * h, p.gamma - 1.0) - dpref) / h;
        iw[i][m] = Ia * wr[i][m];
        kg[i][m] = Kt * gr[i][m];
      }
    }

    r.u = (1.0 / p.Re) * (Au + dtau) - grada - from_samples(g, Rank::vector, adv);
    axpy(r.u, -1.0 / p.Re, from_samples(g, Rank::vector, iw));
    axpy(r.u, 1.0, from_samples(g, Rank::vector, kg));
  }

  // stress
  {
    int ns = d * (d + 1) / 2;
    std::vector<std::vector<Real>> adv(ns, std::vector<Real>(n, 0.0));
    for (int j = 0; j < d; ++j) {
      std::vector<std::vector<Real>> djt = all_samples(partial(s.tau, j));
      for (int c = 0; c < ns; ++c) {
#pragma omp parallel for schedule(static)
        for (long m = 0; m < n; ++m) adv[c][m] += ur[j][m] * djt[c][m];
      }
    }
    r.tau = (2.0 * p.omega / p.We) * deformation(s.u) - (1.0 / p.We) * s.tau;
    axpy(r.tau, -1.0, from_samples(g, Rank::sym, adv));
    axpy(r.tau, -1.0, from_samples(g, Rank::sym, g_alpha_samples(g, taur, jr, p.alpha)));
  }

  dealias_inplace(r.a);
  dealias_inplace(r.u);
  dealias_inplace(r.tau);
  return r;
}

State linear_rhs(const State& s, const ModelParams& p) {
  State r;
  r.a = -1.0 * divergence(s.u);
  r.u = (1.0 / p.Re) * (a_op(s.u, p.omega) + div_sym(s.tau)) - gradient(s.a);
  r.tau = (2.0 * p.omega / p.We) * deformation(s.u) - (1.0 / p.We) * s.tau;
  return r;
}

State rhs_linearized(const State& s, const DyadicFrame& fr, const SpectralField* v,
                     const State* src, const ModelParams& p) {
  const Grid& g = s.grid();
  State r = linear_rhs(s, p);
  if (v) {
    if (v->rank != Rank::vector) throw Error("rhs_linearized: v must be a vector field");
    SpectralField tva = SpectralField::zero(g, Rank::vector);
    for (int j = 0; j < g.d; ++j)
      tva.c[j] = paraproduct(fr, component_field(*v, j), s.a).c[0];
    axpy(r.a, -1.0, divergence(tva));
    axpy(r.u, -1.0, para_transport(fr, *v, s.u));
    axpy(r.tau, -1.0, para_transport(fr, *v, s.tau));
  }
  if (src) {
    axpy(r.a, 1.0, src->a);
    axpy(r.u, 1.0, src->u);
    axpy(r.tau, 1.0, src->tau);
  }
  return r;
}

CompressibleSplit split_compressible(const State& s) {
  SpectralField dtau = div_sym(s.tau);
  return CompressibleSplit{s.a, leray_Pperp(s.u), leray_Pperp(dtau)};
}

IncompressibleSplit split_incompressible(const State& s) {
  SpectralField dtau = div_sym(s.tau);
  return IncompressibleSplit{leray_P(s.u), leray_P(dtau)};
}

}  // namespace olb
