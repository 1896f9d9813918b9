#include <doctest.h>

#include "olb/fft.hpp"
#include "olb/field.hpp"
#include "olb/ops.hpp"
#include "olb/random_state.hpp"
#include "olb/ref.hpp"

#include <cmath>
#include <functional>
#include <omp.h>

using namespace olb;

namespace {

constexpr Real kPi = 3.14159265358979323846;

RealField sampled(const Grid& g, int nc, Rank rank,
                  const std::function<Real(int, const Real*)>& f) {
  RealField r;
  r.g = g;
  r.rank = rank;
  r.nc = nc;
  r.v.assign(nc, std::vector<Real>(g.modes));
  for (long m = 0; m < g.modes; ++m) {
    int idx[3];
    g.decode(m, idx);
    Real x[3] = {0, 0, 0};
    for (int a = 0; a < g.d; ++a) x[a] = g.dx * idx[a];
    for (int c = 0; c < nc; ++c) r.v[c][m] = f(c, x);
  }
  return r;
}

Real max_sample_diff(const SpectralField& f, const RealField& want) {
  const RealField got = to_real(f);
  Real e = 0;
  for (int c = 0; c < f.nc; ++c)
    for (long m = 0; m < f.g.modes; ++m)
      e = std::max(e, std::abs(got.v[c][m] - want.v[c][m]));
  return e;
}

} // namespace

TEST_CASE("grid indexing round-trips") {
  const Grid g = Grid::make(2, 16, 1.0);
  CHECK(g.modes == 256);
  CHECK(g.kalias == 5); // floor(16/3)
  for (long m = 0; m < g.modes; ++m) {
    int idx[3];
    g.decode(m, idx);
    CHECK(g.encode(idx) == m);
    int k[3];
    g.k_of(m, k);
    for (int a = 0; a < g.d; ++a) CHECK(g.index_of_k(k[a]) == idx[a]);
  }
  // axis 0 is the slowest index
  int idx0[3] = {1, 0, 0};
  CHECK(g.encode(idx0) == 16);
}

TEST_CASE("fft matches the direct transform") {
  for (int d : {2, 3}) {
    const Grid g = Grid::make(d, 16, 2.0);
    Gaussian rng(42 + d);
    RealField r;
    r.g = g;
    r.rank = Rank::scalar;
    r.nc = 1;
    r.v.assign(1, std::vector<Real>(g.modes));
    for (long m = 0; m < g.modes; ++m) r.v[0][m] = rng();

    const SpectralField via_fft = to_spectral(r);
    const SpectralField via_dft = ref::dft_forward(r);
    Real e = 0;
    for (long m = 0; m < g.modes; ++m)
      e = std::max(e, std::abs(via_fft.c[0][m] - via_dft.c[0][m]));
    CHECK(e < 1e-13);

    // round trip back to samples
    const RealField back = to_real(via_fft);
    Real e2 = 0;
    for (long m = 0; m < g.modes; ++m)
      e2 = std::max(e2, std::abs(back.v[0][m] - r.v[0][m]));
    CHECK(e2 < 1e-13);
  }
}

TEST_CASE("single harmonic lands on its wavevector") {
  const Grid g = Grid::make(2, 16, 1.0);
  const RealField r = sampled(g, 1, Rank::scalar,
                              [](int, const Real* x) { return std::sin(4.0 * x[0]); });
  const SpectralField f = to_spectral(r);
  int idx[3] = {g.index_of_k(4), g.index_of_k(0), 0};
  const long mp = g.encode(idx);
  idx[0] = g.index_of_k(-4);
  const long mn = g.encode(idx);
  CHECK(std::abs(f.c[0][mp] - Cmplx(0, -0.5)) < 1e-14);
  CHECK(std::abs(f.c[0][mn] - Cmplx(0, 0.5)) < 1e-14);
  Real rest = 0;
  for (long m = 0; m < g.modes; ++m)
    if (m != mp && m != mn) rest = std::max(rest, std::abs(f.c[0][m]));
  CHECK(rest < 1e-14);
  CHECK(l2_norm(f) == doctest::Approx(kPi * std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("derivative operators on an analytic field") {
  const Grid g = Grid::make(2, 32, 1.0);
  const auto fval = [](const Real* x) { return std::sin(4 * x[0]) * std::cos(2 * x[1]); };
  const RealField r = sampled(g, 1, Rank::scalar,
                              [&](int, const Real* x) { return fval(x); });
  const SpectralField f = to_spectral(r);

  const RealField g0 = sampled(g, 1, Rank::scalar, [](int, const Real* x) {
    return 4 * std::cos(4 * x[0]) * std::cos(2 * x[1]);
  });
  const RealField g1 = sampled(g, 1, Rank::scalar, [](int, const Real* x) {
    return -2 * std::sin(4 * x[0]) * std::sin(2 * x[1]);
  });
  CHECK(max_sample_diff(partial(f, 0), g0) < 1e-12);
  CHECK(max_sample_diff(partial(f, 1), g1) < 1e-12);

  const SpectralField gr = gradient(f);
  CHECK(max_sample_diff(component_field(gr, 0), g0) < 1e-12);
  CHECK(max_sample_diff(component_field(gr, 1), g1) < 1e-12);

  const RealField lap = sampled(g, 1, Rank::scalar, [&](int, const Real* x) {
    return -20.0 * std::sin(4 * x[0]) * std::cos(2 * x[1]);
  });
  CHECK(max_sample_diff(laplacian(f), lap) < 1e-11);

  // divergence of the gradient is the laplacian
  CHECK(l2_norm(divergence(gr) - laplacian(f)) < 1e-12);
}

TEST_CASE("jacobian uses the row-derivative convention") {
  // (grad u)_{ij} = d_j u_i
  const Grid g = Grid::make(2, 32, 1.0);
  Gaussian rng(7);
  const SpectralField u = random_field(g, Rank::vector, rng);
  const SpectralField J = jacobian(u);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const SpectralField want = partial(component_field(u, i), j);
      CHECK(l2_norm(component_field(J, 2 * i + j) - want) == 0.0);
    }
}

TEST_CASE("leray projectors split and annihilate correctly") {
  const Grid g = Grid::make(2, 32, 1.0);
  Gaussian rng(11);
  const SpectralField u = random_field(g, Rank::vector, rng);

  const SpectralField us = leray_P(u);
  const SpectralField up = leray_Pperp(u);
  CHECK(l2_norm(us + up - u) < 1e-13 * l2_norm(u));
  CHECK(l2_norm(divergence(us)) < 1e-12 * l2_norm(u));
  CHECK(l2_norm(leray_P(up)) < 1e-13 * l2_norm(u));
  CHECK(l2_norm(leray_Pperp(us)) < 1e-13 * l2_norm(u));

  // gradients are curl free: P grad phi = 0
  const SpectralField phi = random_field(g, Rank::scalar, rng);
  CHECK(l2_norm(leray_P(gradient(phi))) < 1e-12 * l2_norm(gradient(phi)));
}

TEST_CASE("fractional laplacian powers compose") {
  const Grid g = Grid::make(2, 32, 1.0);
  Gaussian rng(13);
  const SpectralField f = random_field(g, Rank::scalar, rng); // mean free
  CHECK(l2_norm(lambda_power(f, 2.0) + laplacian(f)) < 1e-12 * l2_norm(laplacian(f)));
  CHECK(l2_norm(lambda_power(lambda_power(f, -1.0), 1.0) - f) < 1e-12 * l2_norm(f));
}

TEST_CASE("dealiasing wipes the high third") {
  const Grid g = Grid::make(2, 16, 1.0); // kalias = 5
  SpectralField f = SpectralField::zero(g, Rank::scalar);
  for (long m = 0; m < g.modes; ++m) f.c[0][m] = Cmplx(1.0, 0.0);
  const SpectralField fd = dealias(f);
  for (long m = 0; m < g.modes; ++m) {
    int k[3];
    g.k_of(m, k);
    const bool keep = std::abs(k[0]) <= 5 && std::abs(k[1]) <= 5;
    CHECK(fd.c[0][m] == (keep ? Cmplx(1.0, 0.0) : Cmplx(0.0, 0.0)));
  }
}

TEST_CASE("elliptic operator acts as (1-omega)(lap + grad div)") {
  const Grid g = Grid::make(2, 32, 1.0);
  Gaussian rng(17);
  const SpectralField u = random_field(g, Rank::vector, rng);
  const Real om = 0.3;
  const SpectralField want =
      (1.0 - om) * (laplacian(u) + gradient(divergence(u)));
  CHECK(l2_norm(a_op(u, om) - want) < 1e-12 * l2_norm(want));
}

TEST_CASE("deformation and vorticity split the jacobian") {
  const Grid g = Grid::make(2, 32, 1.0);
  Gaussian rng(19);
  const SpectralField u = random_field(g, Rank::vector, rng);
  const SpectralField J = jacobian(u);
  const SpectralField D = deformation(u); // sym rank
  const SpectralField W = vorticity(u);   // full tensor rank
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const SpectralField Jij = component_field(J, 2 * i + j);
      const SpectralField Jji = component_field(J, 2 * j + i);
      const SpectralField Dij = component_field(D, sym_index(i, j, 2));
      const SpectralField Wij = component_field(W, 2 * i + j);
      CHECK(l2_norm(Dij - 0.5 * (Jij + Jji)) < 1e-13 * (1 + l2_norm(Jij)));
      CHECK(l2_norm(Wij - 0.5 * (Jij - Jji)) < 1e-13 * (1 + l2_norm(Jij)));
    }
}

TEST_CASE("divergence of a symmetric tensor matches components") {
  const Grid g = Grid::make(2, 32, 1.0);
  Gaussian rng(23);
  const SpectralField tau = random_field(g, Rank::sym, rng);
  const SpectralField dv = div_sym(tau);
  for (int i = 0; i < 2; ++i) {
    SpectralField want = partial(component_field(tau, sym_index(i, 0, 2)), 0);
    axpy(want, 1.0, partial(component_field(tau, sym_index(i, 1, 2)), 1));
    CHECK(l2_norm(component_field(dv, i) - want) < 1e-13 * (1 + l2_norm(want)));
  }
}

TEST_CASE("parallel reductions agree with the serial reference") {
  const Grid g = Grid::make(2, 64, 1.0);
  Gaussian rng(29);
  const SpectralField f = random_field(g, Rank::sym, rng);
  const SpectralField h = random_field(g, Rank::sym, rng);
  // the reference accumulates component-major, the kernel mode-major, so
  // agreement is to rounding even on a single thread
  const Real tol = 1e-12;
  CHECK(std::abs(l2_norm(f) - ref::l2_norm(f)) <= tol * ref::l2_norm(f));
  CHECK(std::abs(inner_l2(f, h) - ref::inner_l2(f, h)) <=
        tol * (1 + std::abs(ref::inner_l2(f, h))));

  std::vector<Real> w(g.modes);
  for (long m = 0; m < g.modes; ++m) w[m] = std::cos((Real)m);
  const SpectralField a1 = apply_table(f, w);
  const SpectralField a2 = ref::apply_table(f, w);
  Real e = 0;
  for (int c = 0; c < a1.nc; ++c)
    for (long m = 0; m < g.modes; ++m) e = std::max(e, std::abs(a1.c[c][m] - a2.c[c][m]));
  CHECK(e == 0.0);
}

TEST_CASE("mean handling: strip_mean and mean_value") {
  const Grid g = Grid::make(2, 16, 1.0);
  Gaussian rng(31);
  SpectralField f = random_field(g, Rank::scalar, rng);
  f.c[0][0] = Cmplx(0.7, 0.0);
  CHECK(mean_value(f) == 0.7);
  SpectralField s = f;
  strip_mean(s);
  CHECK(mean_value(s) == 0.0);
  // differs from f only in the mean
  const SpectralField diff = f - s;
  Real off = 0;
  for (long m = 1; m < g.modes; ++m) off = std::max(off, std::abs(diff.c[0][m]));
  CHECK(off == 0.0);
  CHECK(std::abs(diff.c[0][0] - Cmplx(0.7, 0.0)) == 0.0);
}
