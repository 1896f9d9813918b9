#include "olb/paraproduct.hpp"

#include "olb/ops.hpp"

namespace olb {

namespace {

// multiply-accumulate acc += a*b on samples
void mac(std::vector<Real>& acc, const std::vector<Real>& a, const std::vector<Real>& b) {
  long n = (long)acc.size();
#pragma omp parallel for schedule(static)
  for (long m = 0; m < n; ++m) acc[m] += a[m] * b[m];
}

}  // namespace

SpectralField paraproduct(const DyadicFrame& fr, const SpectralField& f,
                          const SpectralField& g) {
  if (f.rank != Rank::scalar) throw Error("paraproduct: low-frequency factor must be scalar");
  const Grid& gr = fr.g;
  if (!f.g.same(gr) || !g.g.same(gr)) throw Error("paraproduct: grid mismatch");

  // S_{q-1} f samples for q = qmin..qmax
  std::vector<std::vector<Real>> low(fr.bands());
  for (int q = fr.qmin; q <= fr.qmax; ++q)
    low[q - fr.qmin] = real_samples(gr, fr.low_cutoff(f, q - 1).c[0]);

  SpectralField out = SpectralField::zero(gr, g.rank);
  for (int c = 0; c < g.nc; ++c) {
    std::vector<Real> acc(gr.modes, 0.0);
    for (int q = fr.qmin; q <= fr.qmax; ++q) {
      std::vector<Real> blk = real_samples(gr, fr.block(g, q).c[c]);
      mac(acc, low[q - fr.qmin], blk);
    }
    out.c[c] = spectrum_of(gr, acc);
  }
  dealias_inplace(out);
  return out;
}

SpectralField remainder(const DyadicFrame& fr, const SpectralField& f,
                        const SpectralField& g) {
  if (f.rank != Rank::scalar) throw Error("remainder: first factor must be scalar");
  const Grid& gr = fr.g;
  if (!f.g.same(gr) || !g.g.same(gr)) throw Error("remainder: grid mismatch");

  std::vector<std::vector<Real>> fb(fr.bands());
  for (int q = fr.qmin; q <= fr.qmax; ++q)
    fb[q - fr.qmin] = real_samples(gr, fr.block(f, q).c[0]);

  SpectralField out = SpectralField::zero(gr, g.rank);
  for (int c = 0; c < g.nc; ++c) {
    std::vector<std::vector<Real>> gb(fr.bands());
    for (int q = fr.qmin; q <= fr.qmax; ++q)
      gb[q - fr.qmin] = real_samples(gr, fr.block(g, q).c[c]);
    std::vector<Real> acc(gr.modes, 0.0);
    for (int q = fr.qmin; q <= fr.qmax; ++q)
      for (int p = q - 1; p <= q + 1; ++p) {
        if (p < fr.qmin || p > fr.qmax) continue;
        mac(acc, fb[q - fr.qmin], gb[p - fr.qmin]);
      }
    out.c[c] = spectrum_of(gr, acc);
  }
  dealias_inplace(out);
  return out;
}

SpectralField para_transport(const DyadicFrame& fr, const SpectralField& v,
                             const SpectralField& w) {
  if (v.rank != Rank::vector) throw Error("para_transport: v must be a vector field");
  const Grid& gr = fr.g;

  // S_{q-1} v_j samples
  std::vector<std::vector<std::vector<Real>>> low(gr.d);
  for (int j = 0; j < gr.d; ++j) {
    low[j].resize(fr.bands());
    for (int q = fr.qmin; q <= fr.qmax; ++q)
      low[j][q - fr.qmin] = real_samples(gr, fr.low_cutoff(v, q - 1).c[j]);
  }

  SpectralField out = SpectralField::zero(gr, w.rank);
  for (int c = 0; c < w.nc; ++c) {
    std::vector<Real> acc(gr.modes, 0.0);
    for (int j = 0; j < gr.d; ++j) {
      SpectralField djw = partial(w, j);
      for (int q = fr.qmin; q <= fr.qmax; ++q) {
        std::vector<Real> blk = real_samples(gr, fr.block(djw, q).c[c]);
        mac(acc, low[j][q - fr.qmin], blk);
      }
    }
    out.c[c] = spectrum_of(gr, acc);
  }
  dealias_inplace(out);
  return out;
}

SpectralField commutator_lambda_inv(const DyadicFrame& fr, const SpectralField& v,
                                    const SpectralField& u, int q) {
  if (v.rank != Rank::vector) throw Error("commutator: v must be a vector field");
  const Grid& gr = fr.g;

  std::vector<std::vector<Real>> sv(gr.d);
  for (int j = 0; j < gr.d; ++j)
    sv[j] = real_samples(gr, fr.low_cutoff(v, q - 1).c[j]);

  SpectralField w = fr.block(u, q);
  SpectralField lw = lambda_power(w, -1.0);

  std::vector<std::vector<Real>> acc1(u.nc, std::vector<Real>(gr.modes, 0.0));
  std::vector<std::vector<Real>> acc2 = acc1;
  for (int j = 0; j < gr.d; ++j) {
    SpectralField djw = partial(w, j);
    SpectralField djlw = partial(lw, j);
    for (int c = 0; c < u.nc; ++c) {
      mac(acc1[c], sv[j], real_samples(gr, djw.c[c]));
      mac(acc2[c], sv[j], real_samples(gr, djlw.c[c]));
    }
  }
  SpectralField t1 = SpectralField::zero(gr, u.rank);
  SpectralField t2 = SpectralField::zero(gr, u.rank);
  for (int c = 0; c < u.nc; ++c) {
    t1.c[c] = spectrum_of(gr, acc1[c]);
    t2.c[c] = spectrum_of(gr, acc2[c]);
  }
  dealias_inplace(t1);
  dealias_inplace(t2);
  // the transport of a band-localized field has no mean; strip roundoff
  // residue so the inverse gradient weight is well defined
  strip_mean(t1);
  return lambda_power(t1, -1.0) - t2;
}

}  // namespace olb
