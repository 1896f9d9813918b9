#pragma once

#include "olb/model.hpp"
#include "olb/norms.hpp"

namespace olb {

// Thresholds and coefficients of the three-regime band functionals, all
// determined by the flow parameters: q0/q1 split the frequency axis into
// low/mid/high, M and Mp weight the stress norms, alpha_comp/beta_comp damp
// the mid-regime cross couplings.
struct EnergyConstants {
  Real M = 0.0;
  Real Mp = 0.0;
  int q0 = 0;
  int q1 = 0;
  Real alpha_comp = 0.0;
  Real beta_comp = 0.0;
  Real q0_threshold = 0.0;  // smallest admissible value of 2^q0
  Real q1_threshold = 0.0;  // largest admissible value of 2^q1
};

// q0 minimal and q1 maximal integers within their bounds; alpha/beta at
// their maxima. Throws if the rounded thresholds collide (q1 >= q0).
EnergyConstants derive_constants(const ModelParams& p);

enum class Regime { low, mid, high };

Regime regime_of(int q, const EnergyConstants& c);
const char* regime_name(Regime r);

Real weight_s(int q, const EnergyConstants& c);       // 2^q above q0, else 1
Real weight_stilde(int q, const EnergyConstants& c);  // 1 above q0, else 2^{2q}

// One coefficient inequality: lhs >= bound must hold for the derived
// constants; margin = lhs - bound.
struct IneqCheck {
  std::string name;
  Real lhs = 0.0;
  Real bound = 0.0;
  Real margin = 0.0;
  bool pass = false;
};

std::vector<IneqCheck> verify_coefficient_inequalities(const EnergyConstants& c,
                                                       const ModelParams& p);

// Worst-case coefficient matrix of a band quadratic form: couplings at
// their Cauchy-Schwarz extreme with the band's Bernstein factor, in the
// scaled norm coordinates. margin = smallest eigenvalue of G - diag(floor),
// where floor holds the guaranteed per-direction coefficients.
struct GramCheck {
  Regime regime = Regime::high;
  bool tilde = false;
  int q = 0;
  int dim = 0;
  Real G[3][3] = {};
  Real floor[3] = {};
  Real margin = 0.0;
  bool pass = false;
};

GramCheck gram_matrix(Regime r, bool tilde, int q, const EnergyConstants& c,
                      const ModelParams& p);
// all six regime/family combinations at their worst resolved q
std::vector<GramCheck> gram_margins(const EnergyConstants& c, const ModelParams& p);

// Band functionals on the Leray-split state. Throws if the quadratic form
// goes negative beyond roundoff (the Gram guarantee is violated).
Real band_energy_Y(const CompressibleSplit& sp, const DyadicFrame& fr, int q,
                   const EnergyConstants& c, const ModelParams& p);
Real band_energy_Ytilde(const IncompressibleSplit& sp, const DyadicFrame& fr, int q,
                        const EnergyConstants& c, const ModelParams& p);

struct BandEnergy {
  int q = 0;
  Regime regime = Regime::mid;
  Real Y = 0.0;
  Real Ytilde = 0.0;
  Real X = 0.0;
  Real s_q = 0.0;
  Real stilde_q = 0.0;
  Real equiv_ratio = 0.0;  // X / (s(q)|a_q| + |u_q| + |div tau_q|); 0 on empty bands
};

std::vector<BandEnergy> band_spectrum(const State& s, const DyadicFrame& fr,
                                      const EnergyConstants& c, const ModelParams& p);

// Time-integrated quantities of a recorded run: X mixes sup-in-time and
// L1-in-time block norms, U is the L1 part alone, V integrates the sup norm
// of grad u. U <= X holds by construction and is asserted.
struct BootstrapTrace {
  std::vector<Real> t, X, U, V;
  Real X0 = 0.0;
  Real embed_const = 0.0;  // measured sup of V/U
};

BootstrapTrace bootstrap_quantities(const BlockTrace& a, const BlockTrace& u,
                                    const BlockTrace& tau,
                                    const std::vector<Real>& gradu_inf, int d, int q0);

}  // namespace olb
