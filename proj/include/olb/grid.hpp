#pragma once

#include <cmath>

#include "olb/core.hpp"

namespace olb {

// Periodic box [0, 2*pi*L)^d sampled on N points per axis.  Fourier modes
// are indexed by integer wavevectors k with k_i in (-N/2, N/2]; the physical
// wavevector is xi = k/L.  Storage follows the usual FFT layout: axis index
// i in [0,N) holds k = i for i <= N/2 and k = i - N otherwise, flattened
// row-major with axis 0 slowest.
struct Grid {
  int d = 0;
  int N = 0;
  Real L = 1.0;

  long modes = 0;    // N^d
  int kalias = 0;    // modes with any |k_i| > kalias are dropped by dealiasing
  Real vol = 0.0;    // (2*pi*L)^d
  Real dx = 0.0;     // 2*pi*L/N

  static Grid make(int d, int N, Real L);

  int k_of_index(int i) const { return i <= N / 2 ? i : i - N; }
  int index_of_k(int k) const { return k >= 0 ? k : k + N; }

  void decode(long flat, int* idx) const {
    for (int a = d - 1; a >= 0; --a) {
      idx[a] = (int)(flat % N);
      flat /= N;
    }
  }
  long encode(const int* idx) const {
    long f = 0;
    for (int a = 0; a < d; ++a) f = f * N + idx[a];
    return f;
  }

  // signed integer wavevector of a flat index
  void k_of(long flat, int* k) const {
    int idx[3];
    decode(flat, idx);
    for (int a = 0; a < d; ++a) k[a] = k_of_index(idx[a]);
  }
  void xi_of(long flat, Real* xi) const {
    int k[3];
    k_of(flat, k);
    for (int a = 0; a < d; ++a) xi[a] = k[a] / L;
  }
  Real xi_abs2(long flat) const {
    int k[3];
    k_of(flat, k);
    long s = 0;
    for (int a = 0; a < d; ++a) s += (long)k[a] * k[a];
    return (Real)s / (L * L);
  }

  bool aliased(long flat) const {
    int k[3];
    k_of(flat, k);
    for (int a = 0; a < d; ++a)
      if (k[a] > kalias || k[a] < -kalias) return true;
    return false;
  }

  bool same(const Grid& o) const { return d == o.d && N == o.N && L == o.L; }

  // largest |xi| surviving the dealias mask (corner mode)
  Real xi_max() const { return std::sqrt((Real)d) * kalias / L; }
};

}  // namespace olb
