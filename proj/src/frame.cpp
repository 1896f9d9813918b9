#include "olb/frame.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "olb/ops.hpp"

namespace olb {

namespace {
Real step_h(Real t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

Real smoothstep(Real t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  Real a = step_h(t), b = step_h(1.0 - t);
  return a / (a + b);
}
}  // namespace

Real DyadicFrame::chi(Real r) {
  constexpr Real lo = 0.75, hi = 4.0 / 3.0;
  return smoothstep((hi - r) / (hi - lo));
}

Real DyadicFrame::phi(Real r) { return chi(0.5 * r) - chi(r); }

DyadicFrame build_frame(const Grid& g) {
  DyadicFrame f;
  f.g = g;

  // distinct |k|^2 of nonzero modes surviving dealiasing
  std::set<long> r2set;
  for (long m = 1; m < g.modes; ++m) {
    if (g.aliased(m)) continue;
    int k[3];
    g.k_of(m, k);
    long s = 0;
    for (int a = 0; a < g.d; ++a) s += (long)k[a] * k[a];
    if (s > 0) r2set.insert(s);
  }
  if (r2set.empty()) throw ConfigError("frame: no resolved nonzero modes");
  std::vector<Real> radii;
  for (long s : r2set) radii.push_back(std::sqrt((Real)s) / g.L);

  auto band_nonempty = [&](int q) {
    Real lo = 0.75 * std::exp2((Real)q), hi = (8.0 / 3.0) * std::exp2((Real)q);
    auto it = std::upper_bound(radii.begin(), radii.end(), lo);
    return it != radii.end() && *it < hi;
  };

  Real rmin = radii.front(), rmax = radii.back();
  int qa = (int)std::floor(std::log2(rmin * 3.0 / 8.0)) - 2;
  int qb = (int)std::ceil(std::log2(rmax * 4.0 / 3.0)) + 2;
  f.qmin = qb + 1;
  f.qmax = qa - 1;
  for (int q = qa; q <= qb; ++q)
    if (band_nonempty(q)) {
      f.qmin = std::min(f.qmin, q);
      f.qmax = std::max(f.qmax, q);
    }
  if (f.qmax - f.qmin + 1 < 5)
    throw ConfigError("frame: grid resolves fewer than 5 dyadic bands");

  f.w_.resize(f.bands());
  for (int q = f.qmin; q <= f.qmax; ++q) {
    std::vector<Real>& t = f.w_[q - f.qmin];
    t.assign(g.modes, 0.0);
    Real s = std::exp2((Real)-q);
    long n = g.modes;
#pragma omp parallel for schedule(static)
    for (long m = 0; m < n; ++m)
      t[m] = DyadicFrame::phi(s * std::sqrt(g.xi_abs2(m)));
    t[0] = 0.0;
  }
  return f;
}

const std::vector<Real>& DyadicFrame::band_table(int q) const {
  if (!in_range(q)) throw Error("frame: band index out of range");
  return w_[q - qmin];
}

const std::vector<Real>& DyadicFrame::low_table(int q) const {
  auto it = low_.find(q);
  if (it != low_.end()) return it->second;
  if (q < qmin - 2 || q > qmax + 3)
    throw Error("frame: low cutoff index far out of range");
  std::vector<Real> t(g.modes, 0.0);
  Real s = std::exp2((Real)-q);
  long n = g.modes;
#pragma omp parallel for schedule(static)
  for (long m = 0; m < n; ++m) t[m] = chi(s * std::sqrt(g.xi_abs2(m)));
  t[0] = 1.0;  // chi(0) = 1: the mean passes through
  return low_.emplace(q, std::move(t)).first->second;
}

SpectralField DyadicFrame::block(const SpectralField& f, int q) const {
  if (!f.g.same(g)) throw Error("frame: field grid mismatch");
  if (!in_range(q)) return SpectralField::zero(g, f.rank);
  return olb::apply_table(f, band_table(q));
}

SpectralField DyadicFrame::low_cutoff(const SpectralField& f, int q) const {
  if (!f.g.same(g)) throw Error("frame: field grid mismatch");
  if (q < qmin) {
    // all nonzero resolved modes sit above the cutoff; only the mean survives
    SpectralField r = SpectralField::zero(g, f.rank);
    for (int c = 0; c < f.nc; ++c) r.c[c][0] = f.c[c][0];
    return r;
  }
  if (q > qmax + 1) return f;  // chi(2^-q xi) = 1 on every resolved mode
  return olb::apply_table(f, low_table(q));
}

Real DyadicFrame::block_l2(const SpectralField& f, int q) const {
  if (!in_range(q)) return 0.0;
  const std::vector<Real>& t = band_table(q);
  Real s = 0.0;
  for (int c = 0; c < f.nc; ++c) {
    Real wc = f.rank == Rank::sym ? sym_weight(c, g.d) : 1.0;
    const Cmplx* p = f.c[c].data();
    const Real* tw = t.data();
    s += wc * det_sum(g.modes, [&](long m) { return tw[m] * tw[m] * std::norm(p[m]); });
  }
  return std::sqrt(g.vol * s);
}

std::vector<Real> DyadicFrame::bandpass_table(int lo, int hi) const {
  std::vector<Real> t(g.modes, 0.0);
  Real slo = std::exp2((Real)-lo), shi = std::exp2((Real)-(hi + 1));
  long n = g.modes;
#pragma omp parallel for schedule(static)
  for (long m = 0; m < n; ++m) {
    Real r = std::sqrt(g.xi_abs2(m));
    t[m] = chi(shi * r) - chi(slo * r);
  }
  t[0] = 0.0;
  return t;
}

}  // namespace olb
