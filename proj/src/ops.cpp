#include "olb/ops.hpp"

#include <cmath>

#include "olb/fft.hpp"

namespace olb {

SpectralField apply_table(const SpectralField& f, const std::vector<Real>& w) {
  if ((long)w.size() != f.g.modes) throw Error("apply_table: table size mismatch");
  SpectralField r = f;
  for (int c = 0; c < f.nc; ++c) {
    long n = f.g.modes;
    Cmplx* p = r.c[c].data();
    const Real* t = w.data();
#pragma omp parallel for schedule(static)
    for (long m = 0; m < n; ++m) p[m] *= t[m];
  }
  return r;
}

void dealias_inplace(SpectralField& f) {
  const Grid& g = f.g;
  long n = g.modes;
  for (int c = 0; c < f.nc; ++c) {
    Cmplx* p = f.c[c].data();
#pragma omp parallel for schedule(static)
    for (long m = 0; m < n; ++m)
      if (g.aliased(m)) p[m] = Cmplx(0, 0);
  }
}

SpectralField dealias(const SpectralField& f) {
  SpectralField r = f;
  dealias_inplace(r);
  return r;
}

SpectralField gradient(const SpectralField& f) {
  if (f.rank != Rank::scalar) throw Error("gradient: scalar input expected");
  const Grid& g = f.g;
  SpectralField r = SpectralField::zero(g, Rank::vector);
  long n = g.modes;
  for (int a = 0; a < g.d; ++a) {
    Cmplx* out = r.c[a].data();
    const Cmplx* in = f.c[0].data();
#pragma omp parallel for schedule(static)
    for (long m = 0; m < n; ++m) {
      Real xi[3];
      g.xi_of(m, xi);
      out[m] = Cmplx(0, xi[a]) * in[m];
    }
  }
  return r;
}

SpectralField partial(const SpectralField& f, int axis) {
  const Grid& g = f.g;
  SpectralField r = f;
  long n = g.modes;
  for (int c = 0; c < f.nc; ++c) {
    Cmplx* p = r.c[c].data();
#pragma omp parallel for schedule(static)
    for (long m = 0; m < n; ++m) {
      Real xi[3];
      g.xi_of(m, xi);
      p[m] *= Cmplx(0, xi[axis]);
    }
  }
  return r;
}

SpectralField jacobian(const SpectralField& u) {
  if (u.rank != Rank::vector) throw Error("jacobian: vector input expected");
  const Grid& g = u.g;
  SpectralField r = SpectralField::zero(g, Rank::tensor);
  long n = g.modes;
  for (int i = 0; i < g.d; ++i)
    for (int j = 0; j < g.d; ++j) {
      Cmplx* out = r.c[i * g.d + j].data();
      const Cmplx* in = u.c[i].data();
#pragma omp parallel for schedule(static)
      for (long m = 0; m < n; ++m) {
        Real xi[3];
        g.xi_of(m, xi);
        out[m] = Cmplx(0, xi[j]) * in[m];
      }
    }
  return r;
}

SpectralField divergence(const SpectralField& u) {
  if (u.rank != Rank::vector) throw Error("divergence: vector input expected");
  const Grid& g = u.g;
  SpectralField r = SpectralField::zero(g, Rank::scalar);
  long n = g.modes;
  Cmplx* out = r.c[0].data();
#pragma omp parallel for schedule(static)
  for (long m = 0; m < n; ++m) {
    Real xi[3];
    g.xi_of(m, xi);
    Cmplx s(0, 0);
    for (int a = 0; a < g.d; ++a) s += Cmplx(0, xi[a]) * u.c[a][m];
    out[m] = s;
  }
  return r;
}

SpectralField div_sym(const SpectralField& tau) {
  if (tau.rank != Rank::sym) throw Error("div_sym: sym input expected");
  const Grid& g = tau.g;
  SpectralField r = SpectralField::zero(g, Rank::vector);
  long n = g.modes;
  for (int k = 0; k < g.d; ++k) {
    Cmplx* out = r.c[k].data();
#pragma omp parallel for schedule(static)
    for (long m = 0; m < n; ++m) {
      Real xi[3];
      g.xi_of(m, xi);
      Cmplx s(0, 0);
      for (int j = 0; j < g.d; ++j)
        s += Cmplx(0, xi[j]) * tau.c[sym_index(j, k, g.d)][m];
      out[m] = s;
    }
  }
  return r;
}

SpectralField laplacian(const SpectralField& f) {
  const Grid& g = f.g;
  SpectralField r = f;
  long n = g.modes;
  for (int c = 0; c < f.nc; ++c) {
    Cmplx* p = r.c[c].data();
#pragma omp parallel for schedule(static)
    for (long m = 0; m < n; ++m) p[m] *= -g.xi_abs2(m);
  }
  return r;
}

SpectralField lambda_power(const SpectralField& f, Real sigma) {
  const Grid& g = f.g;
  if (sigma < 0) {
    Real c0 = 0.0, scale = 0.0;
    for (int c = 0; c < f.nc; ++c) {
      c0 = std::max(c0, std::abs(f.c[c][0]));
      const Cmplx* p = f.c[c].data();
      scale = std::max(scale, det_max(g.modes, [&](long m) { return std::abs(p[m]); }));
    }
    if (c0 > 1e-10 * std::max(scale, 1e-300))
      throw Error("lambda_power: negative power needs a mean-free field");
  }
  SpectralField r = f;
  long n = g.modes;
  for (int c = 0; c < f.nc; ++c) {
    Cmplx* p = r.c[c].data();
#pragma omp parallel for schedule(static)
    for (long m = 0; m < n; ++m) {
      Real a2 = g.xi_abs2(m);
      p[m] = (m == 0 || a2 == 0.0) ? Cmplx(0, 0) : p[m] * std::pow(a2, 0.5 * sigma);
    }
  }
  return r;
}

SpectralField leray_Pperp(const SpectralField& u) {
  if (u.rank != Rank::vector) throw Error("leray: vector input expected");
  const Grid& g = u.g;
  SpectralField r = SpectralField::zero(g, Rank::vector);
  long n = g.modes;
#pragma omp parallel for schedule(static)
  for (long m = 0; m < n; ++m) {
    Real xi[3];
    g.xi_of(m, xi);
    Real a2 = g.xi_abs2(m);
    if (a2 == 0.0) continue;  // zero mode assigned to the P part
    Cmplx s(0, 0);
    for (int a = 0; a < g.d; ++a) s += xi[a] * u.c[a][m];
    s /= a2;
    for (int a = 0; a < g.d; ++a) r.c[a][m] = xi[a] * s;
  }
  return r;
}

SpectralField leray_P(const SpectralField& u) { return u - leray_Pperp(u); }

SpectralField a_op(const SpectralField& u, Real omega) {
  if (u.rank != Rank::vector) throw Error("a_op: vector input expected");
  const Grid& g = u.g;
  SpectralField r = SpectralField::zero(g, Rank::vector);
  long n = g.modes;
  Real nu = 1.0 - omega;
#pragma omp parallel for schedule(static)
  for (long m = 0; m < n; ++m) {
    Real xi[3];
    g.xi_of(m, xi);
    Real a2 = g.xi_abs2(m);
    Cmplx div(0, 0);
    for (int a = 0; a < g.d; ++a) div += xi[a] * u.c[a][m];
    for (int a = 0; a < g.d; ++a)
      r.c[a][m] = -nu * (a2 * u.c[a][m] + xi[a] * div);
  }
  return r;
}

SpectralField deformation(const SpectralField& u) {
  if (u.rank != Rank::vector) throw Error("deformation: vector input expected");
  const Grid& g = u.g;
  SpectralField r = SpectralField::zero(g, Rank::sym);
  long n = g.modes;
  for (int i = 0; i < g.d; ++i)
    for (int j = i; j < g.d; ++j) {
      Cmplx* out = r.c[sym_index(i, j, g.d)].data();
#pragma omp parallel for schedule(static)
      for (long m = 0; m < n; ++m) {
        Real xi[3];
        g.xi_of(m, xi);
        out[m] = Cmplx(0, 0.5) * (xi[j] * u.c[i][m] + xi[i] * u.c[j][m]);
      }
    }
  return r;
}

SpectralField vorticity(const SpectralField& u) {
  if (u.rank != Rank::vector) throw Error("vorticity: vector input expected");
  const Grid& g = u.g;
  SpectralField r = SpectralField::zero(g, Rank::tensor);
  long n = g.modes;
  for (int i = 0; i < g.d; ++i)
    for (int j = 0; j < g.d; ++j) {
      Cmplx* out = r.c[i * g.d + j].data();
#pragma omp parallel for schedule(static)
      for (long m = 0; m < n; ++m) {
        Real xi[3];
        g.xi_of(m, xi);
        out[m] = Cmplx(0, 0.5) * (xi[j] * u.c[i][m] - xi[i] * u.c[j][m]);
      }
    }
  return r;
}

void strip_mean(SpectralField& f) {
  for (int c = 0; c < f.nc; ++c) f.c[c][0] = Cmplx(0, 0);
}

std::vector<Real> real_samples(const Grid& g, const std::vector<Cmplx>& c) {
  std::vector<Cmplx> buf = c;
  fft::backward(g, buf.data());
  std::vector<Real> r(g.modes);
  long n = g.modes;
#pragma omp parallel for schedule(static)
  for (long m = 0; m < n; ++m) r[m] = buf[m].real();
  return r;
}

std::vector<Cmplx> spectrum_of(const Grid& g, const std::vector<Real>& v) {
  std::vector<Cmplx> buf(g.modes);
  long n = g.modes;
#pragma omp parallel for schedule(static)
  for (long m = 0; m < n; ++m) buf[m] = Cmplx(v[m], 0.0);
  fft::forward(g, buf.data());
  return buf;
}

SpectralField embed(const SpectralField& f, const Grid& fine) {
  if (fine.d != f.g.d || fine.L != f.g.L || fine.N < f.g.N)
    throw Error("embed: target grid must refine the source at equal L");
  SpectralField r = SpectralField::zero(fine, f.rank);
  const Grid& gc = f.g;
  long n = gc.modes;
  for (int c = 0; c < f.nc; ++c) {
    for (long m = 0; m < n; ++m) {
      int k[3], idx[3];
      gc.k_of(m, k);
      bool nyq = false;
      for (int a = 0; a < gc.d; ++a)
        if (k[a] == gc.N / 2) nyq = true;  // unpaired highest mode: drop
      if (nyq) continue;
      for (int a = 0; a < gc.d; ++a) idx[a] = fine.index_of_k(k[a]);
      r.c[c][fine.encode(idx)] = f.c[c][m];
    }
  }
  return r;
}

}  // namespace olb
