#include "olb/field.hpp"

#include <cmath>

#include "olb/fft.hpp"

namespace olb {

int rank_comps(Rank r, int d) {
  switch (r) {
    case Rank::scalar: return 1;
    case Rank::vector: return d;
    case Rank::sym: return d * (d + 1) / 2;
    case Rank::tensor: return d * d;
  }
  return 0;
}

const char* rank_name(Rank r) {
  switch (r) {
    case Rank::scalar: return "scalar";
    case Rank::vector: return "vector";
    case Rank::sym: return "sym";
    case Rank::tensor: return "tensor";
  }
  return "?";
}

int sym_index(int i, int j, int d) {
  if (i > j) std::swap(i, j);
  // row-major upper triangle
  return i * d - i * (i - 1) / 2 + (j - i);
}

Real sym_weight(int c, int d) {
  for (int i = 0, p = 0; i < d; ++i)
    for (int j = i; j < d; ++j, ++p)
      if (p == c) return i == j ? 1.0 : 2.0;
  return 1.0;
}

SpectralField SpectralField::zero(const Grid& g, Rank r) {
  SpectralField f;
  f.g = g;
  f.rank = r;
  f.nc = rank_comps(r, g.d);
  f.c.assign(f.nc, std::vector<Cmplx>(g.modes, Cmplx(0, 0)));
  return f;
}

RealField RealField::zero(const Grid& g, Rank r) {
  RealField f;
  f.g = g;
  f.rank = r;
  f.nc = rank_comps(r, g.d);
  f.v.assign(f.nc, std::vector<Real>(g.modes, 0.0));
  return f;
}

SpectralField to_spectral(const RealField& f) {
  SpectralField s = SpectralField::zero(f.g, f.rank);
  std::vector<Cmplx> buf(f.g.modes);
  for (int c = 0; c < f.nc; ++c) {
    long n = f.g.modes;
#pragma omp parallel for schedule(static)
    for (long m = 0; m < n; ++m) buf[m] = Cmplx(f.v[c][m], 0.0);
    fft::forward(f.g, buf.data());
    s.c[c] = buf;
  }
  return s;
}

RealField to_real(const SpectralField& f) {
  RealField r = RealField::zero(f.g, f.rank);
  std::vector<Cmplx> buf(f.g.modes);
  for (int c = 0; c < f.nc; ++c) {
    buf = f.c[c];
    fft::backward(f.g, buf.data());
    long n = f.g.modes;
    Real immax = det_max(n, [&](long m) { return std::abs(buf[m].imag()); });
    Real remax = det_max(n, [&](long m) { return std::abs(buf[m].real()); });
    if (immax > 1e-7 * std::max(remax, 1.0))
      throw Error("to_real: field lost Hermitian symmetry (imag residue " +
                  std::to_string(immax) + ")");
#pragma omp parallel for schedule(static)
    for (long m = 0; m < n; ++m) r.v[c][m] = buf[m].real();
  }
  return r;
}

static void check_compat(const SpectralField& a, const SpectralField& b) {
  if (!a.g.same(b.g) || a.rank != b.rank)
    throw Error("field algebra: incompatible operands");
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  check_compat(a, b);
  SpectralField r = a;
  for (int c = 0; c < a.nc; ++c) {
    long n = a.g.modes;
#pragma omp parallel for schedule(static)
    for (long m = 0; m < n; ++m) r.c[c][m] += b.c[c][m];
  }
  return r;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  check_compat(a, b);
  SpectralField r = a;
  for (int c = 0; c < a.nc; ++c) {
    long n = a.g.modes;
#pragma omp parallel for schedule(static)
    for (long m = 0; m < n; ++m) r.c[c][m] -= b.c[c][m];
  }
  return r;
}

SpectralField operator*(Real s, const SpectralField& a) {
  SpectralField r = a;
  for (int c = 0; c < a.nc; ++c) {
    long n = a.g.modes;
#pragma omp parallel for schedule(static)
    for (long m = 0; m < n; ++m) r.c[c][m] *= s;
  }
  return r;
}

void axpy(SpectralField& y, Real a, const SpectralField& x) {
  check_compat(y, x);
  for (int c = 0; c < y.nc; ++c) {
    long n = y.g.modes;
#pragma omp parallel for schedule(static)
    for (long m = 0; m < n; ++m) y.c[c][m] += a * x.c[c][m];
  }
}

Real l2_norm(const SpectralField& f) {
  Real s = 0.0;
  for (int c = 0; c < f.nc; ++c) {
    Real w = f.rank == Rank::sym ? sym_weight(c, f.g.d) : 1.0;
    const Cmplx* p = f.c[c].data();
    s += w * det_sum(f.g.modes, [&](long m) { return std::norm(p[m]); });
  }
  return std::sqrt(f.g.vol * s);
}

Real inner_l2(const SpectralField& f, const SpectralField& g) {
  check_compat(f, g);
  Real s = 0.0;
  for (int c = 0; c < f.nc; ++c) {
    Real w = f.rank == Rank::sym ? sym_weight(c, f.g.d) : 1.0;
    const Cmplx* p = f.c[c].data();
    const Cmplx* q = g.c[c].data();
    s += w * det_sum(f.g.modes, [&](long m) {
      return p[m].real() * q[m].real() + p[m].imag() * q[m].imag();
    });
  }
  return f.g.vol * s;
}

Real linf_norm(const SpectralField& f) {
  RealField r = to_real(f);
  long n = f.g.modes;
  return std::sqrt(det_max(n, [&](long m) {
    Real s = 0.0;
    for (int c = 0; c < f.nc; ++c) {
      Real w = f.rank == Rank::sym ? sym_weight(c, f.g.d) : 1.0;
      s += w * r.v[c][m] * r.v[c][m];
    }
    return s;
  }));
}

Real max_abs(const SpectralField& f) {
  Real s = 0.0;
  for (int c = 0; c < f.nc; ++c) {
    const Cmplx* p = f.c[c].data();
    s = std::max(s, det_max(f.g.modes, [&](long m) { return std::abs(p[m]); }));
  }
  return s;
}

Real mean_value(const SpectralField& f, int comp) { return f.c[comp][0].real(); }

SpectralField component_field(const SpectralField& f, int comp) {
  if (comp < 0 || comp >= f.nc) throw Error("component_field: index out of range");
  SpectralField r;
  r.g = f.g;
  r.rank = Rank::scalar;
  r.nc = 1;
  r.c = {f.c[comp]};
  return r;
}

}  // namespace olb
