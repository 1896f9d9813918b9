#include "olb/field.hpp"
#include "olb/frame.hpp"
#include "olb/ops.hpp"
#include "olb/random_state.hpp"
#include "olb/ref.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

// Times the OpenMP kernels against their serial reference twins on a
// Release-sized grid and prints one table row per kernel.  The "rel diff"
// column doubles as a smoke check that both paths agree.

using namespace olb;

namespace {

double sink = 0;

template <class F>
double per_call(int reps, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void row(const std::string& name, long n, int reps, double ts, double tp, double rel) {
  std::printf("%-16s %9ld %6d %12.3f %12.3f %8.2fx %10.2e\n", name.c_str(), n, reps,
              ts * 1e6, tp * 1e6, ts / tp, rel);
}

} // namespace

int main() {
  const Grid g = Grid::make(2, 256, 1.0);
  const DyadicFrame fr = build_frame(g);
  Gaussian rng(2024);
  const SpectralField f = random_field(g, Rank::sym, rng);
  const SpectralField h = random_field(g, Rank::sym, rng);
  const std::vector<Real> table = fr.bandpass_table(fr.qmin + 1, fr.qmax - 1);

  std::printf("threads %d   grid d=%d N=%d (%ld modes, %d components)\n\n",
              omp_get_max_threads(), g.d, g.N, g.modes, f.nc);
  std::printf("%-16s %9s %6s %12s %12s %9s %10s\n", "kernel", "n", "reps", "serial us",
              "parallel us", "speedup", "rel diff");

  {
    const int reps = 200;
    const Real a = ref::l2_norm(f);
    const Real b = l2_norm(f);
    const double ts = per_call(reps, [&] { sink += ref::l2_norm(f); });
    const double tp = per_call(reps, [&] { sink += l2_norm(f); });
    row("l2_norm", g.modes * f.nc, reps, ts, tp, std::abs(a - b) / a);
  }
  {
    const int reps = 200;
    const Real a = ref::inner_l2(f, h);
    const Real b = inner_l2(f, h);
    const double ts = per_call(reps, [&] { sink += ref::inner_l2(f, h); });
    const double tp = per_call(reps, [&] { sink += inner_l2(f, h); });
    row("inner_l2", g.modes * f.nc, reps, ts, tp, std::abs(a - b) / std::abs(a));
  }
  {
    const int reps = 100;
    const SpectralField a = ref::apply_table(f, table);
    const SpectralField b = apply_table(f, table);
    const double ts = per_call(reps, [&] { sink += ref::apply_table(f, table).c[0][1].real(); });
    const double tp = per_call(reps, [&] { sink += apply_table(f, table).c[0][1].real(); });
    const Real na = l2_norm(a);
    row("apply_table", g.modes * f.nc, reps, ts, tp, na > 0 ? l2_norm(a - b) / na : 0.0);
  }
  {
    // naive direct transform vs the FFT path, on a grid the O(modes^2)
    // reference can still finish
    const Grid gs = Grid::make(2, 64, 1.0);
    Gaussian rng2(7);
    const RealField rf = to_real(random_field(gs, Rank::scalar, rng2));
    const SpectralField a = ref::dft_forward(rf);
    const SpectralField b = to_spectral(rf);
    const double ts = per_call(2, [&] { sink += ref::dft_forward(rf).c[0][1].real(); });
    const double tp = per_call(200, [&] { sink += to_spectral(rf).c[0][1].real(); });
    const Real na = l2_norm(a);
    row("forward fft", gs.modes, 2, ts, tp, na > 0 ? l2_norm(a - b) / na : 0.0);
  }

  if (sink == 42.0) std::printf("\n"); // keep the timed calls observable
  return 0;
}
