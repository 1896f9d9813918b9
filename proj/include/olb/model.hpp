#pragma once

#include "olb/frame.hpp"

namespace olb {

// Dimensionless coefficients: Reynolds and Weissenberg numbers, the polymer
// fraction omega of the total viscosity, the slip parameter of the objective
// stress derivative, and the exponent of the pressure law p(rho) = rho^gamma.
struct ModelParams {
  int d = 2;
  Real Re = 1.0;
  Real We = 1.0;
  Real omega = 0.5;
  Real alpha = 0.0;
  Real gamma = 2.0;

  void validate() const;
};

// Unknowns: scaled density perturbation a (the physical density is
// Re(1 + a)), velocity u, extra stress tau.
struct State {
  SpectralField a, u, tau;

  static State zero(const Grid& g);
  const Grid& grid() const { return a.g; }
};

State operator+(const State& x, const State& y);
State operator-(const State& x, const State& y);
State operator*(Real s, const State& x);
void axpy(State& y, Real a, const State& x);

// pointwise a/(1+a)
SpectralField I_of_a(const SpectralField& a);

// pointwise a/(1+a) - (p'(Re(1+a)) - p'(Re))/(1+a); for gamma = 1 the
// pressure term cancels and this reduces to I_of_a
SpectralField K_tilde_of_a(const SpectralField& a, const ModelParams& p);

// tau W - W tau - alpha (D tau + tau D), with D and W the symmetric and
// antisymmetric parts of grad_u; pointwise matrix algebra in real space
SpectralField g_alpha(const SpectralField& tau, const SpectralField& grad_u,
                      Real alpha_slip);

// full right-hand side:
//   da/dt   = -div u - div(a u)
//   du/dt   = -(u.grad)u + (1/Re)Au - grad a + (1/Re)div tau
//             - (1/Re)I(a)(Au + div tau) + K_tilde(a) grad a
//   dtau/dt = -(u.grad)tau - g_alpha(tau, grad u) - tau/We + (2w/We)D(u)
// with A = (1-omega)(Laplace + grad div); all products dealiased
State rhs_full(const State& s, const ModelParams& p);

// constant-coefficient part of rhs_full (the linearization at zero)
State linear_rhs(const State& s, const ModelParams& p);

// transport terms paralinearized around a frozen velocity v, plus external
// sources (null pointers mean zero):
//   da/dt   = -div(T_v a) - div u + src.a
//   du/dt   = -T_v.grad u + (1/Re)Au - grad a + (1/Re)div tau + src.u
//   dtau/dt = -T_v.grad tau - tau/We + (2w/We)D(u) + src.tau
State rhs_linearized(const State& s, const DyadicFrame& fr, const SpectralField* v,
                     const State* src, const ModelParams& p);

// Leray split of the state into its curl-free (compressible) and
// divergence-free (incompressible) parts, div tau split alongside u.
struct CompressibleSplit {
  SpectralField a, u_perp, dtau_perp;
};
struct IncompressibleSplit {
  SpectralField u_sol, dtau_sol;
};

CompressibleSplit split_compressible(const State& s);
IncompressibleSplit split_incompressible(const State& s);

}  // namespace olb
