#pragma once

#include "olb/frame.hpp"
#include "olb/model.hpp"

#include <cstdint>
#include <random>

namespace olb {

// Gaussian draws with every step pinned down: mt19937_64 has a fully
// specified stream and the Box-Muller map is written out here, so a seed
// determines the data bit for bit on every platform.
struct Gaussian {
  explicit Gaussian(std::uint64_t seed) : eng(seed) {}
  Real operator()();

  std::mt19937_64 eng;

 private:
  bool have_ = false;
  Real spare_ = 0.0;
};

// Data norm used to calibrate initial states:
//   |a|_{B^{d/2-1,d/2}} + |u|_{B^{d/2-1}} + |tau|_{B^{d/2}}
// with the hybrid split of a at the derived q0.
Real data_norm(const DyadicFrame& fr, const State& s, const ModelParams& p);

// White noise on the dyadic shells q in [qlo, qhi] (clamped to the frame's
// resolved range).  Each coefficient is a hash of (seed, component,
// wavevector), so refining N reproduces the same data on every shared mode:
// runs at two resolutions start from the same state whenever the requested
// shells are fully resolved at both.  Hermitian-symmetrized so samples are
// real; a is mean free, tau symmetric by storage.  The result is scaled so
// data_norm equals amplitude.
State random_band_state(const DyadicFrame& fr, const ModelParams& p,
                        std::uint64_t seed, int qlo, int qhi, Real amplitude);

// Hermitian white noise on every resolved nonzero mode; mean free.
SpectralField random_field(const Grid& g, Rank rank, Gaussian& rng);

// u = amplitude (sin(x_1/L), 0, ...), a = tau = 0: a divergence-free
// Laplacian eigenmode, the building block for exactness checks.
State single_mode_state(const Grid& g, const ModelParams& p, Real amplitude);

} // namespace olb
