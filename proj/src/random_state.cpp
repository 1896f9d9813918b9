#include "olb/random_state.hpp"

#include "olb/energy.hpp"

#include <cmath>

namespace olb {

namespace {

constexpr Real kPi = 3.14159265358979323846;

bool canonical_half(const int* k, int d) {
  for (int a = 0; a < d; ++a) {
    if (k[a] > 0) return true;
    if (k[a] < 0) return false;
  }
  return false; // zero mode
}

// one Hermitian white-noise component, shaped by the bandpass table
void fill_component(const Grid& g, const std::vector<Real>& w, Gaussian& rng,
                    std::vector<Cmplx>& c) {
  const Real inv_sqrt2 = std::sqrt(0.5);
  for (long m = 0; m < g.modes; ++m) {
    if (g.aliased(m) || w[m] == 0.0) continue;
    int k[3];
    g.k_of(m, k);
    if (!canonical_half(k, g.d)) continue;
    const Cmplx z(rng() * inv_sqrt2, rng() * inv_sqrt2);
    int idx[3];
    for (int a = 0; a < g.d; ++a) idx[a] = g.index_of_k(-k[a]);
    const long mn = g.encode(idx);
    c[m] = w[m] * z;
    c[mn] = w[m] * std::conj(z);
  }
}

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// unit complex gaussian keyed on (seed, component, wavevector), so a finer
// grid reproduces the same coefficient on every shared mode
Cmplx mode_gaussian(std::uint64_t seed, int comp, const int* k, int d) {
  std::uint64_t h = mix64(seed ^ (0x9e3779b9ull + (std::uint64_t)comp));
  for (int a = 0; a < d; ++a) h = mix64(h ^ (std::uint64_t)(std::int64_t)k[a]);
  const std::uint64_t r1 = mix64(h ^ 0xa5a5a5a5a5a5a5a5ull);
  const std::uint64_t r2 = mix64(h ^ 0x5a5a5a5a5a5a5a5aull);
  const Real u1 = ((r1 >> 11) + 1) * 0x1.0p-53; // (0, 1]
  const Real u2 = (r2 >> 11) * 0x1.0p-53;       // [0, 1)
  const Real r = std::sqrt(-std::log(u1));
  return Cmplx(r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2));
}

// banded Hermitian noise with grid-independent per-mode draws
void fill_banded(const Grid& g, const std::vector<Real>& w, std::uint64_t seed,
                 int comp, std::vector<Cmplx>& c) {
  for (long m = 0; m < g.modes; ++m) {
    if (g.aliased(m) || w[m] == 0.0) continue;
    int k[3];
    g.k_of(m, k);
    if (!canonical_half(k, g.d)) continue;
    const Cmplx z = mode_gaussian(seed, comp, k, g.d);
    int idx[3];
    for (int a = 0; a < g.d; ++a) idx[a] = g.index_of_k(-k[a]);
    const long mn = g.encode(idx);
    c[m] = w[m] * z;
    c[mn] = w[m] * std::conj(z);
  }
}

} // namespace

Real Gaussian::operator()() {
  if (have_) {
    have_ = false;
    return spare_;
  }
  const Real u1 = ((eng() >> 11) + 1) * 0x1.0p-53; // (0, 1]
  const Real u2 = (eng() >> 11) * 0x1.0p-53;       // [0, 1)
  const Real r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * kPi * u2);
  have_ = true;
  return r * std::cos(2.0 * kPi * u2);
}

SpectralField random_field(const Grid& g, Rank rank, Gaussian& rng) {
  SpectralField f = SpectralField::zero(g, rank);
  const std::vector<Real> ones(g.modes, 1.0);
  for (int c = 0; c < f.nc; ++c) fill_component(g, ones, rng, f.c[c]);
  return f;
}

Real data_norm(const DyadicFrame& fr, const State& s, const ModelParams& p) {
  const Real sd = p.d / 2.0;
  const EnergyConstants ec = derive_constants(p);
  return hybrid_norm(fr, s.a, HybridSpec{sd - 1, sd, ec.q0}) +
         besov_norm(fr, s.u, BesovSpec{sd - 1, 2, 1}) +
         besov_norm(fr, s.tau, BesovSpec{sd, 2, 1});
}

State random_band_state(const DyadicFrame& fr, const ModelParams& p,
                        std::uint64_t seed, int qlo, int qhi, Real amplitude) {
  p.validate();
  const Grid& g = fr.g;
  if (g.d != p.d) throw ConfigError("random state: grid and model dimension disagree");
  qlo = std::max(qlo, fr.qmin);
  qhi = std::min(qhi, fr.qmax);
  if (qlo > qhi) throw ConfigError("random state: band range misses the resolved shells");
  const std::vector<Real> w = fr.bandpass_table(qlo, qhi);

  State s = State::zero(g);
  fill_banded(g, w, seed, 0, s.a.c[0]);
  for (int j = 0; j < g.d; ++j) fill_banded(g, w, seed, 1 + j, s.u.c[j]);
  for (int c = 0; c < s.tau.nc; ++c) fill_banded(g, w, seed, 1 + g.d + c, s.tau.c[c]);

  const Real n0 = data_norm(fr, s, p);
  if (!(n0 > 0)) throw Error("random state: drawn state has zero data norm");
  const Real sc = amplitude / n0;
  for (auto* f : {&s.a, &s.u, &s.tau})
    for (int c = 0; c < f->nc; ++c)
      for (Cmplx& z : f->c[c]) z *= sc;
  return s;
}

State single_mode_state(const Grid& g, const ModelParams& p, Real amplitude) {
  p.validate();
  if (g.d != p.d) throw ConfigError("single mode: grid and model dimension disagree");
  State s = State::zero(g);
  // sin(x_1/L) carried by u_0: coefficients -i/2 at k = e_1, +i/2 at -e_1
  int k[3] = {0, 0, 0};
  k[1] = 1;
  int idx[3];
  for (int a = 0; a < g.d; ++a) idx[a] = g.index_of_k(k[a]);
  const long m = g.encode(idx);
  for (int a = 0; a < g.d; ++a) idx[a] = g.index_of_k(-k[a]);
  const long mn = g.encode(idx);
  s.u.c[0][m] = Cmplx(0, -0.5) * amplitude;
  s.u.c[0][mn] = Cmplx(0, 0.5) * amplitude;
  return s;
}

} // namespace olb
