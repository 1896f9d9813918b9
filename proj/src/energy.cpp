#include "olb/energy.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "olb/ops.hpp"

namespace olb {

namespace {

// smallest integer q with 2^q >= x (x > 0)
int ceil_log2(Real x) {
  int q = 0;
  while (std::exp2(q) < x) ++q;
  while (q > -1074 && std::exp2(q - 1) >= x) --q;
  return q;
}

// largest integer q with 2^q <= x (x > 0)
int floor_log2(Real x) {
  int q = 0;
  while (std::exp2(q) > x) --q;
  while (q < 1024 && std::exp2(q + 1) <= x) ++q;
  return q;
}

}  // namespace

EnergyConstants derive_constants(const ModelParams& p) {
  p.validate();
  EnergyConstants c;
  Real rw = p.Re * p.We;
  c.M = rw + 2.0;
  c.Mp = (4.0 / 3.0) * (rw + 1.0 / rw) + 2.0;

  c.q0_threshold = std::pow(4.0 / 3.0, 1.5) *
                   std::sqrt(2.0 * p.Re * (rw + 2.0) /
                             (std::pow(1.0 - p.omega, 3.0) * p.We));
  c.q0 = ceil_log2(c.q0_threshold);

  c.q1_threshold =
      (3.0 / 32.0) *
      std::min({1.0, p.Re, 2.0 / std::pow(rw, 0.25), std::sqrt(p.We / p.Re),
                2.0 * std::pow(p.Re / p.We, 1.0 / 6.0),
                std::sqrt(c.Mp - 1.0) / (2.0 * c.Mp), std::sqrt(p.Re / p.We)});
  c.q1 = floor_log2(c.q1_threshold);

  if (c.q1 >= c.q0)
    throw ConfigError("thresholds collide: q1 = " + std::to_string(c.q1) +
                      " >= q0 = " + std::to_string(c.q0));

  Real t = std::exp2(-c.q0) * (3.0 / 32.0) * p.Re;
  c.alpha_comp = std::min({0.25, t, t * t});
  Real b83 = (8.0 / 3.0) * std::exp2(c.q0);
  c.beta_comp = std::min({0.25, std::exp2(-c.q0) * (3.0 / 16.0) * std::sqrt(p.omega * p.Re / p.We),
                          p.omega * p.Re / (4.0 * p.We) / (b83 * b83),
                          p.omega * c.alpha_comp / (2.0 * rw), std::sqrt(p.omega / 2.0)});
  return c;
}

Regime regime_of(int q, const EnergyConstants& c) {
  if (q > c.q0) return Regime::high;
  if (q <= c.q1) return Regime::low;
  return Regime::mid;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::low: return "low";
    case Regime::mid: return "mid";
    case Regime::high: return "high";
  }
  return "?";
}

Real weight_s(int q, const EnergyConstants& c) {
  return q > c.q0 ? std::exp2(q) : 1.0;
}

Real weight_stilde(int q, const EnergyConstants& c) {
  return q > c.q0 ? 1.0 : std::exp2(2 * q);
}

std::vector<IneqCheck> verify_coefficient_inequalities(const EnergyConstants& c,
                                                       const ModelParams& p) {
  Real rw = p.Re * p.We;
  Real nu = 1.0 - p.omega;
  Real b0 = (4.0 / 3.0) * std::exp2(-c.q0);  // high-band Bernstein factor
  Real b1 = (8.0 / 3.0) * std::exp2(c.q1);   // low-band Bernstein factor

  std::vector<IneqCheck> out;
  auto add = [&](const char* name, Real lhs, Real bound) {
    IneqCheck k;
    k.name = name;
    k.lhs = lhs;
    k.bound = bound;
    k.margin = lhs - bound;
    k.pass = k.margin >= -1e-9;
    out.push_back(std::move(k));
  };

  add("high_velocity_floor", c.M - rw - 1.5, 0.5);
  add("high_dissipation_margin",
      (2.0 * c.M - 2.0 - rw) * nu / p.Re - b0 * b0 * 2.0 * c.M * c.M / (nu * nu * p.We),
      (rw + 2.0) * nu / (4.0 * p.Re));
  add("low_stress_floor", c.Mp - 17.0 / 4.0, 5.0 / 12.0);
  add("low_velocity_margin",
      0.75 -
          b1 * b1 * (4.0 * c.Mp * c.Mp * p.We / ((c.Mp - 1.0) * p.Re) + p.Re / p.We) -
          (4.0 * p.We / p.Re) * std::pow(b1, 6.0) - 2.0 * b1 * b1,
      7.0 / 16.0);
  add("low_density_margin", 0.5 - rw * std::pow(b1, 4.0), 7.0 / 16.0);
  add("low_stress_damping", 0.75 * c.Mp - 1.5 - (rw - 1.0) * (rw - 1.0) / rw, 2.0);
  return out;
}

GramCheck gram_matrix(Regime r, bool tilde, int q, const EnergyConstants& c,
                      const ModelParams& p) {
  GramCheck k;
  k.regime = r;
  k.tilde = tilde;
  k.q = q;
  Real rw = p.Re * p.We;
  Real nu = 1.0 - p.omega;
  Real b = (8.0 / 3.0) * std::exp2(q);  // low/mid Bernstein factor at band q

  if (!tilde) {
    k.dim = 3;
    if (r == Regime::high) {
      // coordinates (|Pperp u|, |(nu/Re) grad a|, |(nu We/(w Re)) Pperp div tau|)
      k.G[0][0] = c.M;
      k.G[1][1] = 2.0 * rw;
      k.G[2][2] = 1.0;
      k.G[0][1] = k.G[1][0] = -rw;
      k.G[0][2] = k.G[2][0] = -1.0;
      k.floor[0] = c.M - rw - 1.5;
      k.floor[1] = rw;
      k.floor[2] = 1.0 / 3.0;
    } else if (r == Regime::low) {
      // coordinates (|a|, |Pperp u|, |(We/Re) Pperp div tau|)
      k.G[0][0] = k.G[1][1] = 1.0;
      k.G[2][2] = c.Mp;
      k.G[0][1] = k.G[1][0] = -b / p.Re;
      k.G[1][2] = k.G[2][1] = -(1.0 + b * b);
      k.floor[0] = 0.75;
      k.floor[1] = 0.25;
      k.floor[2] = c.Mp - 17.0 / 4.0;
    } else {
      // coordinates (|a|, |Pperp u|, |Lambda^-1 Pperp div tau|)
      k.G[0][0] = k.G[1][1] = 1.0;
      k.G[2][2] = p.We / (2.0 * p.omega * p.Re);
      k.G[0][1] = k.G[1][0] = -c.alpha_comp * nu * b / p.Re;
      k.G[1][2] = k.G[2][1] = -c.beta_comp * nu * p.We * b / (2.0 * p.omega * p.Re);
      k.floor[0] = 0.75;
      k.floor[1] = 0.5;
      k.floor[2] = p.We / (4.0 * p.omega * p.Re);
    }
  } else {
    k.dim = 2;
    if (r == Regime::high) {
      // coordinates (|P u|, |(nu We/(w Re)) P div tau|)
      k.G[0][0] = 2.0;
      k.G[1][1] = 1.0;
      k.G[0][1] = k.G[1][0] = -1.0;
      k.floor[0] = 0.25;
      k.floor[1] = 0.25;
    } else if (r == Regime::low) {
      // coordinates (|P u|, |(We/Re) P div tau|)
      k.G[0][0] = 1.0;
      k.G[1][1] = c.Mp;
      k.G[0][1] = k.G[1][0] = -(1.0 + b * b);
      k.floor[0] = 0.5;
      k.floor[1] = c.Mp - 17.0 / 4.0;
    } else {
      // coordinates (|P u|, |Lambda^-1 P div tau|)
      k.G[0][0] = 1.0;
      k.G[1][1] = p.We / (p.omega * p.Re);
      k.G[0][1] = k.G[1][0] = -c.beta_comp * nu * p.We * b / (p.omega * p.Re);
      k.floor[0] = 0.5;
      k.floor[1] = p.We / (2.0 * p.omega * p.Re);
    }
  }

  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  Real scale = 0.0;
  for (int i = 0; i < k.dim; ++i)
    for (int j = 0; j < k.dim; ++j) {
      m(i, j) = k.G[i][j] - (i == j ? k.floor[i] : 0.0);
      scale = std::max(scale, std::abs(k.G[i][j]));
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.topLeftCorner(k.dim, k.dim));
  k.margin = es.eigenvalues().minCoeff();
  k.pass = k.margin >= -1e-9 * (1.0 + scale);
  return k;
}

std::vector<GramCheck> gram_margins(const EnergyConstants& c, const ModelParams& p) {
  std::vector<GramCheck> out;
  for (bool tilde : {false, true}) {
    out.push_back(gram_matrix(Regime::high, tilde, c.q0 + 1, c, p));
    out.push_back(gram_matrix(Regime::mid, tilde, c.q0, c, p));
    out.push_back(gram_matrix(Regime::low, tilde, c.q1, c, p));
  }
  return out;
}

namespace {

Real checked_sqrt(Real rad, Real scale, const char* where) {
  if (rad < -1e-12 * std::max(scale, 1e-300))
    throw Error(std::string(where) + ": quadratic form went negative");
  return std::sqrt(std::max(rad, 0.0));
}

}  // namespace

Real band_energy_Y(const CompressibleSplit& sp, const DyadicFrame& fr, int q,
                   const EnergyConstants& c, const ModelParams& p) {
  SpectralField aq = fr.block(sp.a, q);
  SpectralField uq = fr.block(sp.u_perp, q);
  SpectralField sq = fr.block(sp.dtau_perp, q);
  Real nu = 1.0 - p.omega;
  Real rw = p.Re * p.We;
  Real rad = 0.0, scale = 0.0;

  switch (regime_of(q, c)) {
    case Regime::high: {
      Real ca = nu / p.Re;
      Real cs = nu * p.We / (p.omega * p.Re);
      SpectralField ga = gradient(aq);
      Real nu2 = inner_l2(uq, uq), na2 = ca * ca * inner_l2(ga, ga);
      Real ns2 = cs * cs * inner_l2(sq, sq);
      scale = c.M * nu2 + 2.0 * rw * na2 + ns2;
      rad = scale + 2.0 * rw * ca * inner_l2(ga, uq) - 2.0 * cs * inner_l2(uq, sq);
      break;
    }
    case Regime::low: {
      Real cw = p.We / p.Re;
      Real na2 = inner_l2(aq, aq), nu2 = inner_l2(uq, uq);
      Real ns2 = cw * cw * inner_l2(sq, sq);
      scale = na2 + nu2 + c.Mp * ns2;
      rad = scale + (2.0 / p.Re) * inner_l2(gradient(aq), uq) +
            2.0 * cw * inner_l2(uq, sq) + 2.0 * cw * inner_l2(uq, laplacian(sq));
      break;
    }
    case Regime::mid: {
      SpectralField ls = lambda_power(sq, -1.0);
      Real na2 = inner_l2(aq, aq), nu2 = inner_l2(uq, uq);
      Real nl2 = inner_l2(ls, ls);
      scale = na2 + nu2 + p.We / (2.0 * p.omega * p.Re) * nl2;
      rad = scale + (2.0 * c.alpha_comp * nu / p.Re) * inner_l2(gradient(aq), uq) -
            (c.beta_comp * nu * p.We / (p.omega * p.Re)) * inner_l2(uq, sq);
      break;
    }
  }
  return checked_sqrt(rad, scale, "band_energy_Y");
}

Real band_energy_Ytilde(const IncompressibleSplit& sp, const DyadicFrame& fr, int q,
                        const EnergyConstants& c, const ModelParams& p) {
  SpectralField uq = fr.block(sp.u_sol, q);
  SpectralField sq = fr.block(sp.dtau_sol, q);
  Real nu = 1.0 - p.omega;
  Real rad = 0.0, scale = 0.0;

  switch (regime_of(q, c)) {
    case Regime::high: {
      Real cs = nu * p.We / (p.omega * p.Re);
      Real nu2 = inner_l2(uq, uq), ns2 = cs * cs * inner_l2(sq, sq);
      scale = 2.0 * nu2 + ns2;
      rad = scale - 2.0 * cs * inner_l2(uq, sq);
      break;
    }
    case Regime::low: {
      Real cw = p.We / p.Re;
      Real nu2 = inner_l2(uq, uq), ns2 = cw * cw * inner_l2(sq, sq);
      scale = nu2 + c.Mp * ns2;
      rad = scale + 2.0 * cw * inner_l2(uq, sq) + 2.0 * cw * inner_l2(uq, laplacian(sq));
      break;
    }
    case Regime::mid: {
      SpectralField ls = lambda_power(sq, -1.0);
      Real nu2 = inner_l2(uq, uq), nl2 = inner_l2(ls, ls);
      scale = nu2 + p.We / (p.omega * p.Re) * nl2;
      rad = scale - (2.0 * c.beta_comp * nu * p.We / (p.omega * p.Re)) * inner_l2(uq, sq);
      break;
    }
  }
  return checked_sqrt(rad, scale, "band_energy_Ytilde");
}

std::vector<BandEnergy> band_spectrum(const State& s, const DyadicFrame& fr,
                                      const EnergyConstants& c, const ModelParams& p) {
  CompressibleSplit cs = split_compressible(s);
  IncompressibleSplit is = split_incompressible(s);
  SpectralField dtau = div_sym(s.tau);

  std::vector<BandEnergy> out;
  for (int q = fr.qmin; q <= fr.qmax; ++q) {
    BandEnergy e;
    e.q = q;
    e.regime = regime_of(q, c);
    e.Y = band_energy_Y(cs, fr, q, c, p);
    e.Ytilde = band_energy_Ytilde(is, fr, q, c, p);
    e.X = e.Y + e.Ytilde;
    e.s_q = weight_s(q, c);
    e.stilde_q = weight_stilde(q, c);
    Real denom = e.s_q * fr.block_l2(s.a, q) + fr.block_l2(s.u, q) + fr.block_l2(dtau, q);
    e.equiv_ratio = denom > 0.0 ? e.X / denom : 0.0;
    out.push_back(e);
  }
  return out;
}

BootstrapTrace bootstrap_quantities(const BlockTrace& a, const BlockTrace& u,
                                    const BlockTrace& tau,
                                    const std::vector<Real>& gradu_inf, int d, int q0) {
  size_t n = a.t.size();
  if (u.t.size() != n || tau.t.size() != n || gradu_inf.size() != n)
    throw Error("bootstrap: traces have different lengths");
  if (n == 0) throw Error("bootstrap: empty trace");
  if (n > 1) {
    Real h = a.t[1] - a.t[0];
    for (size_t i = 1; i < n; ++i)
      if (std::abs(a.t[i] - a.t[i - 1] - h) > 1e-9 * std::max(h, 1.0))
        throw Error("bootstrap: trace steps are not uniform");
  }

  Real sd = 0.5 * d;
  HybridSpec a_sup{sd - 1.0, sd, q0};
  HybridSpec a_int{sd + 1.0, sd, q0};

  BootstrapTrace bt;
  bt.t = a.t;
  bt.X.resize(n);
  bt.U.resize(n);
  bt.V.resize(n);
  Real v = 0.0;
  for (size_t i = 0; i < n; ++i) {
    if (i > 0) v += 0.5 * (gradu_inf[i] + gradu_inf[i - 1]) * (a.t[i] - a.t[i - 1]);
    Real sup_part = chemin_lerner_hybrid_upto(a, a_sup, kInf, i) +
                    chemin_lerner_norm_upto(u, sd - 1.0, 1, kInf, i) +
                    chemin_lerner_norm_upto(tau, sd, 1, kInf, i);
    Real int_part = chemin_lerner_hybrid_upto(a, a_int, 1, i) +
                    chemin_lerner_norm_upto(u, sd + 1.0, 1, 1, i) +
                    chemin_lerner_norm_upto(tau, sd, 1, 1, i);
    bt.U[i] = int_part;
    bt.X[i] = sup_part + int_part;  // U <= X exact: the sup part is nonnegative
    bt.V[i] = v;
    if (bt.U[i] > bt.X[i]) throw Error("bootstrap: U exceeded X");
    if (bt.U[i] > 0.0) bt.embed_const = std::max(bt.embed_const, bt.V[i] / bt.U[i]);
  }
  bt.X0 = bt.X[0];
  return bt;
}

}  // namespace olb
