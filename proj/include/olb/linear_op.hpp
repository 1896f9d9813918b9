#pragma once

#include "olb/model.hpp"

#include <vector>

namespace olb {

// Exact per-mode representation of the linear part of the system.  For each
// wavevector xi the coefficients (a^, u^, tau^) evolve under a dense complex
// block B(xi) of dimension m = 1 + d + d(d+1)/2:
//
//   a'   = -i xi . u
//   u'   = -((1-omega)/Re) (|xi|^2 u + xi (xi.u)) - i xi a + (i/Re) xi . tau
//   tau' = -tau/We + (i omega/We)(xi (x) u + u (x) xi)
//
// At xi = 0 this degenerates to diag(0, 0, -1/We): means of a and u are
// frozen, the mean of tau relaxes.
struct LinearModeOperator {
  Grid g;
  ModelParams p;
  int m = 0;                    // block dimension
  std::vector<long> active;     // modes kept by the dealiasing mask
  Real spectral_abscissa = 0.0; // max real part over all resolved modes

  // row-major m*m block for one mode
  void mode_block(long mode, Cmplx* B) const;
};

// Builds the operator, then runs two startup audits:
//  - closure: on every active mode, applying B to a generic state reproduces
//    the longitudinal 3x3 block (coefficients 2(1-omega)/Re, 2omega/We) and
//    the transverse 2x2 block ((1-omega)/Re, omega/We) within 1e-12,
//  - stability: no eigenvalue of any resolved block has positive real part
//    (checked once per distinct |xi| since the blocks are isotropic).
// Throws Error when either audit fails.
LinearModeOperator assemble_linear_operator(const Grid& g, const ModelParams& p);

// Tabulated exp(h B(xi)) over the active modes.
struct Propagator {
  Grid g;
  int m = 0;
  Real h = 0.0;
  std::vector<long> active;
  std::vector<Cmplx> E; // active.size() blocks of m*m, row-major

  // s <- exp(hB) s, acting mode by mode; masked-out modes are untouched
  // (they stay zero under the dealiasing discipline)
  void apply(State& s) const;
};

Propagator make_propagator(const LinearModeOperator& op, Real h);

} // namespace olb
