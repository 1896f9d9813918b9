#pragma once

#include "olb/linear_op.hpp"

#include <functional>

namespace olb {

enum class Scheme { if_euler, if_rk2 };

struct StepConfig {
  Real h = 0.01;
  Real T_end = 1.0;
  Scheme scheme = Scheme::if_rk2;
  Real cfl = 0.5;     // bound on h * max|u| * max|xi|
  Real blowup = 1e12; // coefficient magnitude treated as blown up
};

// rhs must return the complete right-hand side at the given state; the
// stepper subtracts the linear part itself and propagates it exactly
using RhsFn = std::function<State(const State&)>;

// One integrating-factor step of size E.h.  With N = rhs - linear:
//   euler:  S1 = exp(hB) (S + h N(S))
//   rk2:    S* = exp(hB) S + h exp(hB) N(S)
//           S1 = exp(hB) S + (h/2) (exp(hB) N(S) + N(S*))
// When rhs coincides with the linear right-hand side, N vanishes exactly
// and both schemes reduce to the exact flow.  Throws CflError (with a
// workable step size attached) when the advective bound rejects h.
State step(const State& s, const Propagator& E, const RhsFn& rhs,
           const ModelParams& p, Scheme scheme = Scheme::if_rk2, Real cfl = 0.5);

struct Recorder {
  int stride = 1; // in steps; the initial and final states always fire
  std::function<void(Real, const State&)> fn;
};

// Fixed-step march to T_end, which must be an integer number of steps.
// Throws BlowupError carrying the last finite time when a coefficient
// passes cfg.blowup or stops being finite.
State run(State s, const StepConfig& cfg, const Propagator& E, const RhsFn& rhs,
          const ModelParams& p, const Recorder* rec = nullptr);

} // namespace olb
