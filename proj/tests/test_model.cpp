#include <doctest.h>

#include "olb/model.hpp"
#include "olb/ops.hpp"
#include "olb/paraproduct.hpp"
#include "olb/random_state.hpp"
#include "olb/ref.hpp"

#include <cmath>

using namespace olb;

namespace {

SpectralField const_scalar(const Grid& g, Real v) {
  SpectralField f = SpectralField::zero(g, Rank::scalar);
  f.c[0][0] = Cmplx(v, 0.0);
  return f;
}

// u = (sin(x_1), 0): divergence free eigenfunction of the laplacian
State shear_state(const Grid& g, Real amp) {
  State s = State::zero(g);
  int idx[3] = {g.index_of_k(0), g.index_of_k(1), 0};
  s.u.c[0][g.encode(idx)] = Cmplx(0, -0.5 * amp);
  idx[1] = g.index_of_k(-1);
  s.u.c[0][g.encode(idx)] = Cmplx(0, 0.5 * amp);
  return s;
}

// keep |k_i| <= kmax so quadratic products stay below the dealiasing cut
// and sample-space evaluation is alias free
void band_limit(SpectralField& f, int kmax) {
  for (long m = 0; m < f.g.modes; ++m) {
    int k[3];
    f.g.k_of(m, k);
    bool keep = true;
    for (int a = 0; a < f.g.d; ++a) keep = keep && std::abs(k[a]) <= kmax;
    if (!keep)
      for (int c = 0; c < f.nc; ++c) f.c[c][m] = Cmplx(0.0, 0.0);
  }
}

} // namespace

TEST_CASE("rational coefficient functions match pointwise formulas") {
  const Grid g = Grid::make(2, 32, 1.0);
  Gaussian rng(41);
  SpectralField a = random_field(g, Rank::scalar, rng);
  // keep samples well away from vacuum
  for (Cmplx& z : a.c[0]) z *= 0.01;

  // the library evaluates on samples and dealiases the spectrum; push the
  // pointwise formula through the same pipeline and compare coefficients
  const std::vector<Real> as = real_samples(g, a.c[0]);
  std::vector<Real> want(g.modes);
  for (long m = 0; m < g.modes; ++m) want[m] = as[m] / (1.0 + as[m]);
  SpectralField expect = SpectralField::zero(g, Rank::scalar);
  expect.c[0] = spectrum_of(g, want);
  dealias_inplace(expect);
  const SpectralField got = I_of_a(a);
  Real e = 0;
  for (long m = 0; m < g.modes; ++m)
    e = std::max(e, std::abs(got.c[0][m] - expect.c[0][m]));
  CHECK(e < 1e-14);

  // gamma = 1: the pressure correction cancels and K = I
  ModelParams p1;
  p1.gamma = 1.0;
  CHECK(l2_norm(K_tilde_of_a(a, p1) - I_of_a(a)) < 1e-12);

  // gamma = 2, Re = 1: K(a) = -a/(1+a); at constant a = 1 that is -1/2
  ModelParams p2;
  p2.gamma = 2.0;
  p2.Re = 1.0;
  const SpectralField one = const_scalar(g, 1.0);
  const SpectralField k2 = K_tilde_of_a(one, p2);
  CHECK(mean_value(k2) == doctest::Approx(-0.5).epsilon(1e-14));
  Real rest = 0;
  for (long m = 1; m < g.modes; ++m) rest = std::max(rest, std::abs(k2.c[0][m]));
  CHECK(rest < 1e-14);

  // general gamma against the sample formula, same pipeline as above
  ModelParams p3;
  p3.gamma = 1.4;
  p3.Re = 2.0;
  const auto pprime = [&](Real rho) { return p3.gamma * std::pow(rho, p3.gamma - 1.0); };
  for (long m = 0; m < g.modes; ++m)
    want[m] = as[m] / (1.0 + as[m]) -
              (pprime(p3.Re * (1.0 + as[m])) - pprime(p3.Re)) / (1.0 + as[m]);
  expect.c[0] = spectrum_of(g, want);
  dealias_inplace(expect);
  const SpectralField kt = K_tilde_of_a(a, p3);
  e = 0;
  for (long m = 0; m < g.modes; ++m)
    e = std::max(e, std::abs(kt.c[0][m] - expect.c[0][m]));
  CHECK(e < 1e-13);
}

TEST_CASE("vacuum states are rejected") {
  const Grid g = Grid::make(2, 32, 1.0);
  const SpectralField bad = const_scalar(g, -1.5);
  CHECK_THROWS_AS(I_of_a(bad), VacuumError);
  State s = State::zero(g);
  s.a = bad;
  ModelParams p;
  CHECK_THROWS_AS(rhs_full(s, p), VacuumError);
}

TEST_CASE("stress source term matches the pointwise reference") {
  for (int d : {2, 3}) {
    const Grid g = Grid::make(d, 24, 1.0);
    Gaussian rng(43 + d);
    SpectralField tau = random_field(g, Rank::sym, rng);
    SpectralField u = random_field(g, Rank::vector, rng);
    // half the dealias cut: products stay alias free and uncut
    band_limit(tau, g.kalias / 2);
    band_limit(u, g.kalias / 2);
    const SpectralField gu = jacobian(u);
    const Real alpha = 0.63;

    const SpectralField got = g_alpha(tau, gu, alpha);

    std::vector<std::vector<Real>> ts(tau.nc), gs(gu.nc), os(got.nc);
    for (int c = 0; c < tau.nc; ++c) ts[c] = real_samples(g, tau.c[c]);
    for (int c = 0; c < gu.nc; ++c) gs[c] = real_samples(g, gu.c[c]);
    for (int c = 0; c < got.nc; ++c) os[c] = real_samples(g, got.c[c]);

    Real e = 0, scale = 0;
    Real tp[6], gp[9], op[6];
    for (long m = 0; m < g.modes; ++m) {
      for (int c = 0; c < tau.nc; ++c) tp[c] = ts[c][m];
      for (int c = 0; c < gu.nc; ++c) gp[c] = gs[c][m];
      ref::g_alpha_point(g.d, tp, gp, alpha, op);
      for (int c = 0; c < got.nc; ++c) {
        e = std::max(e, std::abs(os[c][m] - op[c]));
        scale = std::max(scale, std::abs(op[c]));
      }
    }
    CHECK(scale > 0);
    CHECK(e < 1e-11 * scale);
  }
}

TEST_CASE("pure shear reduces the system to closed forms") {
  const Grid g = Grid::make(2, 32, 1.0);
  ModelParams p;
  p.Re = 2.0;
  p.We = 0.5;
  p.omega = 0.3;
  const State s = shear_state(g, 1.0);
  const State r = rhs_full(s, p);

  // density: -div u - div(a u) = 0
  CHECK(l2_norm(r.a) < 1e-13);
  // velocity: (u.grad)u = 0, A u = -(1-omega) u, everything else vanishes
  const SpectralField want_u = (-(1.0 - p.omega) / p.Re) * s.u;
  CHECK(l2_norm(r.u - want_u) < 1e-12);
  // stress: (2 omega / We) D(u)
  const SpectralField want_tau = (2.0 * p.omega / p.We) * deformation(s.u);
  CHECK(l2_norm(r.tau - want_tau) < 1e-12);
}

TEST_CASE("full dynamics linearize to the constant-coefficient part") {
  const Grid g = Grid::make(2, 32, 1.0);
  const DyadicFrame fr = build_frame(g);
  ModelParams p;
  p.Re = 1.0;
  p.We = 2.0;
  p.omega = 0.4;
  State s = random_band_state(fr, p, 77, fr.qmin, fr.qmax, 1.0);

  // || rhs(eps s) - eps linear(s) || = O(eps^2)
  const Real e1 = 1e-3, e2 = 1e-4;
  const State l = linear_rhs(s, p);
  const State d1 = rhs_full(e1 * s, p) - e1 * l;
  const State d2 = rhs_full(e2 * s, p) - e2 * l;
  const Real r1 = l2_norm(d1.a) + l2_norm(d1.u) + l2_norm(d1.tau);
  const Real r2 = l2_norm(d2.a) + l2_norm(d2.u) + l2_norm(d2.tau);
  CHECK(r1 > 0);
  CHECK(r2 > 0);
  const Real order = std::log10(r1 / r2); // expect ~2 per decade of eps
  CHECK(order > 1.8);
  CHECK(order < 2.2);
}

TEST_CASE("paralinearized rhs with nothing frozen is the linear rhs") {
  const Grid g = Grid::make(2, 32, 1.0);
  const DyadicFrame fr = build_frame(g);
  ModelParams p;
  State s = random_band_state(fr, p, 78, fr.qmin, fr.qmax, 1.0);
  const State a = rhs_linearized(s, fr, nullptr, nullptr, p);
  const State b = linear_rhs(s, p);
  CHECK(l2_norm(a.a - b.a) == 0.0);
  CHECK(l2_norm(a.u - b.u) == 0.0);
  CHECK(l2_norm(a.tau - b.tau) == 0.0);
}

TEST_CASE("paralinearized sources enter additively") {
  const Grid g = Grid::make(2, 32, 1.0);
  const DyadicFrame fr = build_frame(g);
  ModelParams p;
  State s = random_band_state(fr, p, 79, fr.qmin, fr.qmax, 1.0);
  State src = random_band_state(fr, p, 80, fr.qmin, fr.qmax, 0.5);
  const State with = rhs_linearized(s, fr, nullptr, &src, p);
  const State without = rhs_linearized(s, fr, nullptr, nullptr, p);
  // up to the rounding of one addition per coefficient
  CHECK(l2_norm(with.a - without.a - src.a) <
        1e-14 * (1 + l2_norm(without.a) + l2_norm(src.a)));
  CHECK(l2_norm(with.u - without.u - src.u) <
        1e-14 * (1 + l2_norm(without.u) + l2_norm(src.u)));
  CHECK(l2_norm(with.tau - without.tau - src.tau) <
        1e-14 * (1 + l2_norm(without.tau) + l2_norm(src.tau)));
}

TEST_CASE("frozen transport enters through the shifted advection") {
  const Grid g = Grid::make(2, 48, 1.0);
  const DyadicFrame fr = build_frame(g);
  ModelParams p;
  State s = random_band_state(fr, p, 81, fr.qmin, fr.qmax, 1.0);
  Gaussian rng(82);
  const SpectralField v = random_field(g, Rank::vector, rng);
  const State with = rhs_linearized(s, fr, &v, nullptr, p);
  const State without = rhs_linearized(s, fr, nullptr, nullptr, p);
  // the density advects in divergence form, velocity and stress in
  // gradient form
  SpectralField tva = SpectralField::zero(g, Rank::vector);
  for (int j = 0; j < g.d; ++j)
    tva.c[j] = paraproduct(fr, component_field(v, j), s.a).c[0];
  const SpectralField ta = divergence(tva);
  const SpectralField tu = para_transport(fr, v, s.u);
  const SpectralField tt = para_transport(fr, v, s.tau);
  CHECK(l2_norm(with.a - without.a + ta) < 1e-11 * (1 + l2_norm(ta)));
  CHECK(l2_norm(with.u - without.u + tu) < 1e-11 * (1 + l2_norm(tu)));
  CHECK(l2_norm(with.tau - without.tau + tt) < 1e-11 * (1 + l2_norm(tt)));
}

TEST_CASE("velocity splits reconstruct the state") {
  const Grid g = Grid::make(2, 32, 1.0);
  const DyadicFrame fr = build_frame(g);
  ModelParams p;
  const State s = random_band_state(fr, p, 83, fr.qmin, fr.qmax, 1.0);
  const CompressibleSplit cs = split_compressible(s);
  const IncompressibleSplit is = split_incompressible(s);

  CHECK(l2_norm(cs.u_perp + is.u_sol - s.u) < 1e-13 * l2_norm(s.u));
  const SpectralField dt = div_sym(s.tau);
  CHECK(l2_norm(cs.dtau_perp + is.dtau_sol - dt) < 1e-12 * (1 + l2_norm(dt)));
  CHECK(l2_norm(divergence(is.u_sol)) < 1e-12 * l2_norm(s.u));
  CHECK(l2_norm(leray_P(cs.u_perp)) < 1e-13 * l2_norm(s.u));
  CHECK(l2_norm(cs.a - s.a) == 0.0);
}

TEST_CASE("density mean is never moved by the dynamics") {
  const Grid g = Grid::make(2, 32, 1.0);
  const DyadicFrame fr = build_frame(g);
  ModelParams p;
  State s = random_band_state(fr, p, 84, fr.qmin, fr.qmax, 0.1);
  s.a.c[0][0] = Cmplx(0.05, 0.0);
  const State r = rhs_full(s, p);
  CHECK(std::abs(r.a.c[0][0]) == 0.0);
}

TEST_CASE("parameter validation") {
  ModelParams p;
  p.omega = 1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.omega = 0.5;
  p.Re = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.Re = 1.0;
  p.alpha = 1.5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.alpha = -1.0;
  CHECK_NOTHROW(p.validate());
  p.d = 4;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}
