#include "olb/norms.hpp"

#include <cmath>

namespace olb {

Real block_norm(const DyadicFrame& fr, const SpectralField& f, int q, int p) {
  if (p == 2) return fr.block_l2(f, q);
  if (p == kInf) {
    if (!fr.in_range(q)) return 0.0;
    return linf_norm(fr.block(f, q));
  }
  throw ConfigError("block_norm: p must be 2 or inf");
}

Real besov_norm(const DyadicFrame& fr, const SpectralField& f, const BesovSpec& sp) {
  if (sp.r != 1 && sp.r != kInf) throw ConfigError("besov_norm: r must be 1 or inf");
  Real acc = 0.0;
  for (int q = fr.qmin; q <= fr.qmax; ++q) {
    Real v = std::exp2(sp.s * q) * block_norm(fr, f, q, sp.p);
    acc = sp.r == 1 ? acc + v : std::max(acc, v);
  }
  return acc;
}

Real hybrid_norm(const DyadicFrame& fr, const SpectralField& f, const HybridSpec& sp) {
  Real lo = 0.0, hi = 0.0;
  for (int q = fr.qmin; q <= fr.qmax; ++q) {
    Real b = fr.block_l2(f, q);
    if (q <= sp.q0)
      lo += std::exp2(sp.s * q) * b;
    else
      hi += std::exp2(sp.t * q) * b;
  }
  return lo + hi;
}

void BlockTrace::record(Real time, const DyadicFrame& fr, const SpectralField& f) {
  if (t.empty()) {
    qmin = fr.qmin;
    qmax = fr.qmax;
  } else if (qmin != fr.qmin || qmax != fr.qmax) {
    throw Error("BlockTrace: frame changed between records");
  }
  t.push_back(time);
  std::vector<Real> row(qmax - qmin + 1);
  for (int q = qmin; q <= qmax; ++q) row[q - qmin] = fr.block_l2(f, q);
  bq.push_back(std::move(row));
}

Real chemin_lerner_norm_upto(const BlockTrace& tr, Real s, int r, int rho, size_t upto) {
  if (tr.t.empty()) return 0.0;
  if (upto >= tr.t.size()) upto = tr.t.size() - 1;
  if (r != 1 && r != kInf) throw ConfigError("chemin_lerner: r must be 1 or inf");
  if (rho != 1 && rho != kInf) throw ConfigError("chemin_lerner: rho must be 1 or inf");
  Real acc = 0.0;
  int nb = tr.qmax - tr.qmin + 1;
  for (int b = 0; b < nb; ++b) {
    Real tn = 0.0;
    if (rho == kInf) {
      for (size_t i = 0; i <= upto; ++i) tn = std::max(tn, tr.bq[i][b]);
    } else {
      for (size_t i = 1; i <= upto; ++i)
        tn += 0.5 * (tr.bq[i][b] + tr.bq[i - 1][b]) * (tr.t[i] - tr.t[i - 1]);
    }
    Real v = std::exp2(s * (tr.qmin + b)) * tn;
    acc = r == 1 ? acc + v : std::max(acc, v);
  }
  return acc;
}

Real chemin_lerner_norm(const BlockTrace& tr, Real s, int r, int rho) {
  return chemin_lerner_norm_upto(tr, s, r, rho, tr.t.empty() ? 0 : tr.t.size() - 1);
}

Real chemin_lerner_hybrid_upto(const BlockTrace& tr, const HybridSpec& sp, int rho,
                               size_t upto) {
  if (tr.t.empty()) return 0.0;
  if (upto >= tr.t.size()) upto = tr.t.size() - 1;
  if (rho != 1 && rho != kInf) throw ConfigError("chemin_lerner: rho must be 1 or inf");
  Real acc = 0.0;
  int nb = tr.qmax - tr.qmin + 1;
  for (int b = 0; b < nb; ++b) {
    int q = tr.qmin + b;
    Real tn = 0.0;
    if (rho == kInf) {
      for (size_t i = 0; i <= upto; ++i) tn = std::max(tn, tr.bq[i][b]);
    } else {
      for (size_t i = 1; i <= upto; ++i)
        tn += 0.5 * (tr.bq[i][b] + tr.bq[i - 1][b]) * (tr.t[i] - tr.t[i - 1]);
    }
    acc += std::exp2((q <= sp.q0 ? sp.s : sp.t) * q) * tn;
  }
  return acc;
}

}  // namespace olb
