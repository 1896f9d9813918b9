#include "olb/integrator.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace olb {

namespace {

Real worst_coefficient(const State& s) {
  const Real inf = std::numeric_limits<Real>::infinity();
  auto field_max = [&](const SpectralField& f) {
    Real w = 0;
    for (int c = 0; c < f.nc; ++c) {
      const Cmplx* p = f.c[c].data();
      w = std::max(w, det_max(f.g.modes, [&](long m) {
                     const Real v = std::abs(p[m]);
                     return std::isfinite(v) ? v : inf;
                   }));
    }
    return w;
  };
  return std::max({field_max(s.a), field_max(s.u), field_max(s.tau)});
}

} // namespace

State step(const State& s, const Propagator& E, const RhsFn& rhs,
           const ModelParams& p, Scheme scheme, Real cfl) {
  const Real h = E.h;
  const Grid& g = s.grid();

  const Real vmax = linf_norm(s.u);
  if (h * vmax * g.xi_max() > cfl) {
    std::ostringstream os;
    os << "advective bound rejects h = " << h << ": h*max|u|*max|xi| = "
       << h * vmax * g.xi_max() << " > " << cfl;
    throw CflError(os.str(), 0.9 * cfl / (vmax * g.xi_max()));
  }

  State ns = rhs(s) - linear_rhs(s, p);

  if (scheme == Scheme::if_euler) {
    State s1 = s;
    axpy(s1, h, ns);
    E.apply(s1);
    return s1;
  }

  State es = s;
  E.apply(es); // exp(hB) S
  E.apply(ns); // exp(hB) N(S)

  State mid = es;
  axpy(mid, h, ns);
  State ns2 = rhs(mid) - linear_rhs(mid, p);

  State s1 = es;
  axpy(s1, h / 2, ns);
  axpy(s1, h / 2, ns2);
  return s1;
}

State run(State s, const StepConfig& cfg, const Propagator& E, const RhsFn& rhs,
          const ModelParams& p, const Recorder* rec) {
  if (!(cfg.h > 0) || !std::isfinite(cfg.h)) throw ConfigError("run needs h > 0");
  if (std::abs(E.h - cfg.h) > 1e-12 * cfg.h)
    throw ConfigError("propagator was built for a different step size");
  const Real steps_r = cfg.T_end / cfg.h;
  const long nsteps = std::llround(steps_r);
  if (nsteps < 0 || std::abs(steps_r - (Real)nsteps) > 1e-6)
    throw ConfigError("T_end must be an integer number of steps");

  if (rec && rec->fn) rec->fn(0.0, s);
  for (long n = 1; n <= nsteps; ++n) {
    s = step(s, E, rhs, p, cfg.scheme, cfg.cfl);
    const Real w = worst_coefficient(s);
    if (!(w <= cfg.blowup)) {
      std::ostringstream os;
      os << "blow-up at t = " << n * cfg.h << ": max coefficient " << w
         << "; last finite state at t = " << (n - 1) * cfg.h;
      throw BlowupError(os.str(), (n - 1) * cfg.h);
    }
    if (rec && rec->fn && (n % std::max(1, rec->stride) == 0 || n == nsteps))
      rec->fn(n * cfg.h, s);
  }
  return s;
}

} // namespace olb
