#include <doctest.h>

#include "olb/norms.hpp"
#include "olb/ops.hpp"
#include "olb/random_state.hpp"

#include <cmath>
#include <functional>

using namespace olb;

namespace {

constexpr Real kPi = 3.14159265358979323846;

// sin(4 x_0) on the unit-scale box: a single shell at |xi| = 4, which meets
// exactly two annuli, phi(2) at q=1 and phi(1) at q=2
SpectralField harmonic4(const Grid& g) {
  SpectralField f = SpectralField::zero(g, Rank::scalar);
  int idx[3] = {g.index_of_k(4), g.index_of_k(0), 0};
  f.c[0][g.encode(idx)] = Cmplx(0, -0.5);
  idx[0] = g.index_of_k(-4);
  f.c[0][g.encode(idx)] = Cmplx(0, 0.5);
  return f;
}

} // namespace

TEST_CASE("dyadic norms of a single harmonic have closed forms") {
  const Grid g = Grid::make(2, 64, 1.0);
  const DyadicFrame fr = build_frame(g);
  const SpectralField f = harmonic4(g);

  const Real nl2 = kPi * std::sqrt(2.0); // sqrt(vol/2)
  const Real c1 = DyadicFrame::chi(1.0); // phi(2)
  const Real p1 = 1.0 - c1;              // phi(1)

  // band content: only q = 1 and q = 2
  for (int q = fr.qmin; q <= fr.qmax; ++q) {
    const Real want = q == 1 ? c1 * nl2 : q == 2 ? p1 * nl2 : 0.0;
    CHECK(block_norm(fr, f, q, 2) == doctest::Approx(want).epsilon(1e-13));
  }

  // s = 0, r = 1 recovers the L2 norm exactly (partition of unity)
  CHECK(besov_norm(fr, f, {0.0, 2, 1}) == doctest::Approx(nl2).epsilon(1e-13));
  // s = 1, r = 1
  CHECK(besov_norm(fr, f, {1.0, 2, 1}) ==
        doctest::Approx((2 * c1 + 4 * p1) * nl2).epsilon(1e-13));
  // r = inf takes the largest weighted band
  CHECK(besov_norm(fr, f, {1.0, 2, kInf}) ==
        doctest::Approx(std::max(2 * c1, 4 * p1) * nl2).epsilon(1e-13));
  // p = inf: each block is phi_q * sin(4 x_0), sup = phi_q
  CHECK(besov_norm(fr, f, {0.0, kInf, 1}) == doctest::Approx(c1 + p1).epsilon(1e-12));

  // hybrid weighting switches exponent above q0
  const Real want_h = std::exp2(0.0 * 1) * c1 * nl2 + std::exp2(1.0 * 2) * p1 * nl2;
  CHECK(hybrid_norm(fr, f, {0.0, 1.0, 1}) == doctest::Approx(want_h).epsilon(1e-13));
  // with q0 >= 2 both bands use the low exponent
  CHECK(hybrid_norm(fr, f, {0.0, 1.0, 2}) == doctest::Approx(nl2).epsilon(1e-13));
}

TEST_CASE("besov norm scales dyadically under frequency doubling") {
  const Grid g = Grid::make(2, 64, 1.0);
  const DyadicFrame fr = build_frame(g);
  // sin(4 x_0) vs sin(8 x_0): s = 1 norm doubles
  SpectralField f8 = SpectralField::zero(g, Rank::scalar);
  int idx[3] = {g.index_of_k(8), g.index_of_k(0), 0};
  f8.c[0][g.encode(idx)] = Cmplx(0, -0.5);
  idx[0] = g.index_of_k(-8);
  f8.c[0][g.encode(idx)] = Cmplx(0, 0.5);
  const Real n4 = besov_norm(fr, harmonic4(g), {1.0, 2, 1});
  const Real n8 = besov_norm(fr, f8, {1.0, 2, 1});
  CHECK(n8 == doctest::Approx(2.0 * n4).epsilon(1e-13));
}

TEST_CASE("time traces compose band and time norms") {
  const Grid g = Grid::make(2, 32, 1.0);
  const DyadicFrame fr = build_frame(g);
  const SpectralField f = harmonic4(g);

  // f(t) = exp(-t) f recorded at t = 0, 1/2, 1
  BlockTrace tr;
  const std::vector<Real> times = {0.0, 0.5, 1.0};
  for (Real t : times) {
    const SpectralField ft = std::exp(-t) * f;
    tr.record(t, fr, ft);
  }
  CHECK(tr.qmin == fr.qmin);
  CHECK(tr.t.size() == 3);

  const Real nl2 = kPi * std::sqrt(2.0);
  const Real c1 = DyadicFrame::chi(1.0);
  const Real p1 = 1.0 - c1;

  // trapezoid of exp(-t) on {0, 1/2, 1}
  const Real trap =
      0.25 * (1.0 + std::exp(-0.5)) + 0.25 * (std::exp(-0.5) + std::exp(-1.0));
  const Real want_l1 = (2 * c1 + 4 * p1) * nl2 * trap;
  CHECK(chemin_lerner_norm(tr, 1.0, 1, 1) == doctest::Approx(want_l1).epsilon(1e-13));

  // rho = inf: running max is the t = 0 value
  CHECK(chemin_lerner_norm(tr, 1.0, 1, kInf) ==
        doctest::Approx((2 * c1 + 4 * p1) * nl2).epsilon(1e-13));

  // truncations integrate to each record
  CHECK(chemin_lerner_norm_upto(tr, 1.0, 1, 1, 0) == 0.0);
  const Real trap_half = 0.25 * (1.0 + std::exp(-0.5));
  CHECK(chemin_lerner_norm_upto(tr, 1.0, 1, 1, 1) ==
        doctest::Approx((2 * c1 + 4 * p1) * nl2 * trap_half).epsilon(1e-13));
  CHECK(chemin_lerner_norm_upto(tr, 1.0, 1, 1, 2) ==
        doctest::Approx(want_l1).epsilon(1e-13));

  // hybrid truncation: weight 2^{0q} below q0=1, 2^{1q} above
  const Real want_h = (c1 + 4 * p1) * nl2 * trap;
  CHECK(chemin_lerner_hybrid_upto(tr, {0.0, 1.0, 1}, 1, 2) ==
        doctest::Approx(want_h).epsilon(1e-13));
}

TEST_CASE("block traces demand matched frames") {
  const Grid g = Grid::make(2, 32, 1.0);
  const DyadicFrame fr = build_frame(g);
  Gaussian rng(3);
  BlockTrace tr;
  tr.record(0.0, fr, random_field(g, Rank::scalar, rng));
  // a second record with a different band range must throw
  const Grid g2 = Grid::make(2, 32, 2.0);
  const DyadicFrame fr2 = build_frame(g2);
  CHECK((fr2.qmin != fr.qmin || fr2.qmax != fr.qmax));
  CHECK_THROWS_AS(tr.record(1.0, fr2, random_field(g2, Rank::scalar, rng)), Error);
}

TEST_CASE("norm monotonicity and homogeneity on random fields") {
  const Grid g = Grid::make(2, 64, 1.0);
  const DyadicFrame fr = build_frame(g);
  Gaussian rng(4);
  const SpectralField f = random_field(g, Rank::vector, rng);

  // scaling
  const Real n1 = besov_norm(fr, f, {0.5, 2, 1});
  CHECK(besov_norm(fr, 3.0 * f, {0.5, 2, 1}) == doctest::Approx(3.0 * n1).epsilon(1e-14));

  // r = inf is dominated by r = 1
  CHECK(besov_norm(fr, f, {0.5, 2, kInf}) <= n1 * (1 + 1e-14));

  // hybrid with equal weights reduces to plain besov
  CHECK(hybrid_norm(fr, f, {0.5, 0.5, 2}) == doctest::Approx(n1).epsilon(1e-14));
}
