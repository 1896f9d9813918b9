#include "olb/ref.hpp"

#include <cmath>

namespace olb {
namespace ref {

SpectralField dft_forward(const RealField& f) {
  const Grid& g = f.g;
  SpectralField s = SpectralField::zero(g, f.rank);
  long n = g.modes;
  for (int c = 0; c < f.nc; ++c) {
    for (long m = 0; m < n; ++m) {
      int k[3], idx[3];
      g.k_of(m, k);
      Cmplx acc(0, 0);
      for (long j = 0; j < n; ++j) {
        g.decode(j, idx);
        Real phase = 0.0;
        for (int a = 0; a < g.d; ++a)
          phase += 2.0 * M_PI * (Real)k[a] * (Real)idx[a] / (Real)g.N;
        acc += f.v[c][j] * Cmplx(std::cos(phase), -std::sin(phase));
      }
      s.c[c][m] = acc / (Real)n;
    }
  }
  return s;
}

RealField dft_backward(const SpectralField& f) {
  const Grid& g = f.g;
  RealField r = RealField::zero(g, f.rank);
  long n = g.modes;
  for (int c = 0; c < f.nc; ++c) {
    for (long j = 0; j < n; ++j) {
      int k[3], idx[3];
      g.decode(j, idx);
      Cmplx acc(0, 0);
      for (long m = 0; m < n; ++m) {
        g.k_of(m, k);
        Real phase = 0.0;
        for (int a = 0; a < g.d; ++a)
          phase += 2.0 * M_PI * (Real)k[a] * (Real)idx[a] / (Real)g.N;
        acc += f.c[c][m] * Cmplx(std::cos(phase), std::sin(phase));
      }
      r.v[c][j] = acc.real();
    }
  }
  return r;
}

SpectralField apply_table(const SpectralField& f, const std::vector<Real>& w) {
  SpectralField r = f;
  for (int c = 0; c < f.nc; ++c)
    for (long m = 0; m < f.g.modes; ++m) r.c[c][m] *= w[m];
  return r;
}

Real l2_norm(const SpectralField& f) {
  Real s = 0.0;
  for (int c = 0; c < f.nc; ++c) {
    Real w = f.rank == Rank::sym ? sym_weight(c, f.g.d) : 1.0;
    for (long m = 0; m < f.g.modes; ++m) s += w * std::norm(f.c[c][m]);
  }
  return std::sqrt(f.g.vol * s);
}

Real inner_l2(const SpectralField& f, const SpectralField& g) {
  Real s = 0.0;
  for (int c = 0; c < f.nc; ++c) {
    Real w = f.rank == Rank::sym ? sym_weight(c, f.g.d) : 1.0;
    for (long m = 0; m < f.g.modes; ++m)
      s += w * (f.c[c][m].real() * g.c[c][m].real() +
                f.c[c][m].imag() * g.c[c][m].imag());
  }
  return f.g.vol * s;
}

void g_alpha_point(int d, const Real* tau_packed, const Real* gradu,
                   Real alpha, Real* out_packed) {
  Real T[3][3], D[3][3], W[3][3], M[3][3];
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      T[i][j] = tau_packed[sym_index(i, j, d)];
      D[i][j] = 0.5 * (gradu[i * d + j] + gradu[j * d + i]);
      W[i][j] = 0.5 * (gradu[i * d + j] - gradu[j * d + i]);
    }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Real s = 0.0;
      for (int k = 0; k < d; ++k)
        s += T[i][k] * W[k][j] - W[i][k] * T[k][j] -
             alpha * (D[i][k] * T[k][j] + T[i][k] * D[k][j]);
      M[i][j] = s;
    }
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) out_packed[sym_index(i, j, d)] = M[i][j];
}

}  // namespace ref
}  // namespace olb
