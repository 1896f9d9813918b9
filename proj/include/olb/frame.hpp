#pragma once

#include <map>

#include "olb/field.hpp"

namespace olb {

// Dyadic frequency decomposition on the grid.  The radial cutoff chi is 1
// on |xi| <= 3/4, 0 on |xi| >= 4/3 and glued smoothly in between with an
// exponential step; phi(xi) = chi(xi/2) - chi(xi) is supported on the
// annulus 3/4 <= |xi| <= 8/3 and the shifted copies phi(2^-q xi) telescope
// to an exact partition of unity on every nonzero resolved mode.
//
// block(f, q)     = phi(2^-q |D|) f
// low_cutoff(f,q) = chi(2^-q |D|) f   (keeps the mean)
//
// [qmin, qmax] is the range of q whose annulus meets a nonzero mode that
// survives dealiasing; blocks outside the range are identically zero.
struct DyadicFrame {
  Grid g;
  int qmin = 0, qmax = -1;

  static Real chi(Real r);
  static Real phi(Real r);

  int bands() const { return qmax - qmin + 1; }
  bool in_range(int q) const { return q >= qmin && q <= qmax; }

  const std::vector<Real>& band_table(int q) const;
  const std::vector<Real>& low_table(int q) const;

  SpectralField block(const SpectralField& f, int q) const;
  SpectralField low_cutoff(const SpectralField& f, int q) const;

  // L2 norm of block(f, q) straight from the tables, no copy
  Real block_l2(const SpectralField& f, int q) const;

  // sum of phi(2^-q xi) over q in [lo, hi], evaluated by telescoping
  std::vector<Real> bandpass_table(int lo, int hi) const;

 private:
  friend DyadicFrame build_frame(const Grid& g);
  std::vector<std::vector<Real>> w_;              // band tables
  mutable std::map<int, std::vector<Real>> low_;  // low-cutoff tables, lazy
};

DyadicFrame build_frame(const Grid& g);

}  // namespace olb
