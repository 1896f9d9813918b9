#pragma once

#include "olb/frame.hpp"

namespace olb {

// sentinel for p = infinity / r = infinity
inline constexpr int kInf = -1;

// Homogeneous dyadic norm: || 2^{qs} ||block(f,q)||_{L^p} ||_{l^r} over the
// resolved band range.  Supported: p in {2, inf}, r in {1, inf}.
struct BesovSpec {
  Real s = 0.0;
  int p = 2;
  int r = 1;
};

// Two-weight variant: bands q <= q0 weighted 2^{qs}, bands q > q0 weighted
// 2^{qt}, both summed with r = 1, p = 2; the norm is low part + high part.
struct HybridSpec {
  Real s = 0.0;
  Real t = 0.0;
  int q0 = 0;
};

Real block_norm(const DyadicFrame& fr, const SpectralField& f, int q, int p);
Real besov_norm(const DyadicFrame& fr, const SpectralField& f, const BesovSpec& sp);
Real hybrid_norm(const DyadicFrame& fr, const SpectralField& f, const HybridSpec& sp);

// Per-band L2 block norms of one field recorded along a run; column q-qmin.
struct BlockTrace {
  int qmin = 0, qmax = -1;
  std::vector<Real> t;
  std::vector<std::vector<Real>> bq;  // [record][band]

  void record(Real time, const DyadicFrame& fr, const SpectralField& f);
};

// Time-then-band composition: per band take the time norm over [0,T]
// (rho = 1 trapezoid integral, rho = inf running max), weight by 2^{qs},
// then l^r across bands.  p is fixed to 2 by the trace.
Real chemin_lerner_norm(const BlockTrace& tr, Real s, int r, int rho);

// same but truncated to records 0..upto (inclusive)
Real chemin_lerner_norm_upto(const BlockTrace& tr, Real s, int r, int rho, size_t upto);

// two-weight variant of the above (r = 1)
Real chemin_lerner_hybrid_upto(const BlockTrace& tr, const HybridSpec& sp, int rho,
                               size_t upto);

}  // namespace olb
