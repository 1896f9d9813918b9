#include "olb/scenarios.hpp"

#include "olb/csv.hpp"
#include "olb/energy.hpp"
#include "olb/ops.hpp"
#include "olb/paraproduct.hpp"
#include "olb/random_state.hpp"
#include "olb/snapshot.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <utility>

namespace olb {

namespace {

using nlohmann::json;

std::string joinp(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir);
}

// named checks: printed as they land, collected for summary.json
struct CheckList {
  std::string scenario;
  json checks = json::array();
  bool all = true;

  explicit CheckList(std::string name) : scenario(std::move(name)) {}

  void add(const std::string& name, bool ok, const std::string& detail) {
    checks.push_back({{"name", name}, {"status", ok ? "pass" : "fail"}, {"detail", detail}});
    all = all && ok;
    std::printf("[%s] %s: %s  %s\n", scenario.c_str(), name.c_str(),
                ok ? "PASS" : "FAIL", detail.c_str());
  }
  void na(const std::string& name, const std::string& detail) {
    checks.push_back({{"name", name}, {"status", "na"}, {"detail", detail}});
    std::printf("[%s] %s: N/A  %s\n", scenario.c_str(), name.c_str(), detail.c_str());
  }
};

void write_summary(const RunConfig& rc, const CheckList& cl, const json& metrics) {
  json j;
  j["scenario"] = cl.scenario;
  j["pass"] = cl.all;
  j["checks"] = cl.checks;
  j["metrics"] = metrics;
  j["config"] = json::parse(config_summary(rc));
  std::ofstream out(joinp(rc.out_dir, "summary.json"));
  out << j.dump(2) << "\n";
  if (!out) throw Error("cannot write summary.json");
}

void csv_preamble(Csv& csv, const RunConfig& rc) {
  csv.comment("config " + config_summary(rc));
  csv.comment("seed " + fmt_int((long long)rc.seed));
}

void csv_constants_line(Csv& csv, const EnergyConstants& ec) {
  csv.comment("constants M=" + fmt_real(ec.M) + " Mp=" + fmt_real(ec.Mp) +
              " q0=" + fmt_int(ec.q0) + " q1=" + fmt_int(ec.q1) +
              " alpha=" + fmt_real(ec.alpha_comp) + " beta=" + fmt_real(ec.beta_comp));
}

// instantaneous weighted band sums from one trace record
Real besov_now(const BlockTrace& tr, size_t i, Real s) {
  Real acc = 0;
  for (int q = tr.qmin; q <= tr.qmax; ++q)
    acc += std::exp2(s * q) * tr.bq[i][q - tr.qmin];
  return acc;
}

Real hybrid_now(const BlockTrace& tr, size_t i, const HybridSpec& sp) {
  Real acc = 0;
  for (int q = tr.qmin; q <= tr.qmax; ++q)
    acc += std::exp2((q <= sp.q0 ? sp.s : sp.t) * q) * tr.bq[i][q - tr.qmin];
  return acc;
}

std::optional<Real> ls_slope(const std::vector<Real>& x, const std::vector<Real>& y) {
  const size_t n = x.size();
  if (n < 3 || y.size() != n) return std::nullopt;
  Real mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= (Real)n;
  my /= (Real)n;
  Real num = 0, den = 0;
  for (size_t i = 0; i < n; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  if (!(den > 0)) return std::nullopt;
  return num / den;
}

// decay rate of x(t): minus the slope of log x over the records before x
// falls below floor_rel * x(0)
std::optional<Real> fit_rate(const std::vector<Real>& t, const std::vector<Real>& x,
                             Real floor_rel) {
  if (x.empty() || !(x[0] > 0)) return std::nullopt;
  std::vector<Real> ts, ys;
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || x[i] < floor_rel * x[0]) break;
    ts.push_back(t[i]);
    ys.push_back(std::log(x[i]));
  }
  const auto slope = ls_slope(ts, ys);
  if (!slope) return std::nullopt;
  return -*slope;
}

} // namespace

int scenario_constants_audit(const RunConfig& rc) {
  ensure_dir(rc.out_dir);
  CheckList cl("constants-audit");

  std::vector<std::array<Real, 3>> sets;
  for (Real re : {0.5, 1.0, 2.0})
    for (Real we : {0.5, 1.0, 2.0})
      for (Real om : {0.1, 0.5, 0.9}) sets.push_back({re, we, om});

  Csv csv(joinp(rc.out_dir, "constants_audit.csv"));
  csv_preamble(csv, rc);
  csv.row({"Re", "We", "omega", "M", "Mp", "q0", "q1", "alpha", "beta",
           "min_ineq_margin", "min_gram_margin", "pass"});

  json dump = json::array();
  for (const auto& s : sets) {
    ModelParams p = rc.params;
    p.Re = s[0];
    p.We = s[1];
    p.omega = s[2];
    const std::string tag =
        "Re=" + fmt_real(p.Re) + " We=" + fmt_real(p.We) + " omega=" + fmt_real(p.omega);
    json entry = {{"Re", p.Re}, {"We", p.We}, {"omega", p.omega}};
    try {
      const EnergyConstants ec = derive_constants(p);
      const auto ineqs = verify_coefficient_inequalities(ec, p);
      const auto grams = gram_margins(ec, p);
      Real min_i = std::numeric_limits<Real>::infinity(), min_g = min_i;
      bool ok = ec.q1 < ec.q0;
      json ji = json::array(), jg = json::array();
      for (const IneqCheck& c : ineqs) {
        min_i = std::min(min_i, c.margin);
        ok = ok && c.pass;
        ji.push_back({{"name", c.name}, {"lhs", c.lhs}, {"bound", c.bound},
                      {"margin", c.margin}, {"pass", c.pass}});
      }
      for (const GramCheck& gc : grams) {
        min_g = std::min(min_g, gc.margin);
        ok = ok && gc.pass;
        json G = json::array();
        for (int i = 0; i < gc.dim; ++i) {
          json row = json::array();
          for (int j = 0; j < gc.dim; ++j) row.push_back(gc.G[i][j]);
          G.push_back(row);
        }
        json fl = json::array();
        for (int i = 0; i < gc.dim; ++i) fl.push_back(gc.floor[i]);
        jg.push_back({{"regime", regime_name(gc.regime)},
                      {"family", gc.tilde ? "Ytilde" : "Y"},
                      {"q", gc.q},
                      {"G", G},
                      {"floor", fl},
                      {"margin", gc.margin},
                      {"pass", gc.pass}});
      }
      entry["constants"] = {{"M", ec.M},       {"Mp", ec.Mp},
                            {"q0", ec.q0},     {"q1", ec.q1},
                            {"alpha", ec.alpha_comp}, {"beta", ec.beta_comp},
                            {"q0_threshold", ec.q0_threshold},
                            {"q1_threshold", ec.q1_threshold}};
      entry["inequalities"] = ji;
      entry["gram"] = jg;
      entry["pass"] = ok;
      csv.row({fmt_real(p.Re), fmt_real(p.We), fmt_real(p.omega), fmt_real(ec.M),
               fmt_real(ec.Mp), fmt_int(ec.q0), fmt_int(ec.q1), fmt_real(ec.alpha_comp),
               fmt_real(ec.beta_comp), fmt_real(min_i), fmt_real(min_g), ok ? "1" : "0"});
      cl.add(tag, ok,
             "q0=" + fmt_int(ec.q0) + " q1=" + fmt_int(ec.q1) + " M=" + fmt_real(ec.M) +
                 " Mp=" + fmt_real(ec.Mp) +
                 " min_margin=" + fmt_real(std::min(min_i, min_g)));
    } catch (const Error& e) {
      entry["pass"] = false;
      entry["error"] = e.what();
      csv.row({fmt_real(p.Re), fmt_real(p.We), fmt_real(p.omega), "nan", "nan", "0", "0",
               "nan", "nan", "nan", "nan", "0"});
      cl.add(tag, false, e.what());
    }
    dump.push_back(entry);
  }
  csv.close();
  {
    std::ofstream out(joinp(rc.out_dir, "constants.json"));
    out << dump.dump(2) << "\n";
    if (!out) throw Error("cannot write constants.json");
  }
  write_summary(rc, cl, json::object());
  return cl.all ? 0 : 1;
}

int scenario_lp_audit(const RunConfig& rc) {
  ensure_dir(rc.out_dir);
  CheckList cl("lp-audit");
  ModelParams p = rc.params;
  p.validate();
  const Grid g = rc.grid();
  const DyadicFrame fr = build_frame(g);
  const int nsamp = std::max(1, rc.samples);

  Real recon_max = 0, ortho_max = 0, bony_max = 0;
  long bern_viol = 0;

  Csv scsv(joinp(rc.out_dir, "lp_audit.csv"));
  csv_preamble(scsv, rc);
  scsv.row({"sample", "recon_rel", "ortho_rel", "bony_rel", "bernstein_violations"});

  Gaussian rng(rc.seed);
  for (int s = 0; s < nsamp; ++s) {
    const SpectralField f = random_field(g, Rank::scalar, rng);
    const SpectralField f2 = random_field(g, Rank::scalar, rng);
    const Real nf = l2_norm(f);

    std::vector<SpectralField> blocks;
    for (int q = fr.qmin; q <= fr.qmax; ++q) blocks.push_back(fr.block(f, q));

    SpectralField sum = SpectralField::zero(g, Rank::scalar);
    for (const SpectralField& b : blocks) axpy(sum, 1.0, b);
    const Real recon = l2_norm(sum - f) / nf;

    Real ortho = 0;
    for (size_t i = 0; i < blocks.size(); ++i)
      for (size_t j = i + 2; j < blocks.size(); ++j)
        ortho = std::max(ortho, std::abs(inner_l2(blocks[i], blocks[j])) / (nf * nf));

    const std::vector<Real> fs = real_samples(g, f.c[0]);
    const std::vector<Real> gs = real_samples(g, f2.c[0]);
    std::vector<Real> prod(fs.size());
    for (size_t i = 0; i < prod.size(); ++i) prod[i] = fs[i] * gs[i];
    SpectralField fg = SpectralField::zero(g, Rank::scalar);
    fg.c[0] = spectrum_of(g, prod);
    dealias_inplace(fg);
    SpectralField bony = paraproduct(fr, f, f2);
    axpy(bony, 1.0, paraproduct(fr, f2, f));
    axpy(bony, 1.0, remainder(fr, f, f2));
    const Real nfg = l2_norm(fg);
    const Real bony_rel = nfg > 0 ? l2_norm(fg - bony) / nfg : 0.0;

    long viol = 0;
    for (size_t i = 0; i < blocks.size(); ++i) {
      const Real bn = l2_norm(blocks[i]);
      if (bn == 0) continue;
      const Real gn = l2_norm(gradient(blocks[i]));
      const int q = fr.qmin + (int)i;
      if (gn > (8.0 / 3.0) * std::exp2((Real)q) * bn * (1 + 1e-12)) ++viol;
      if (gn < 0.75 * std::exp2((Real)q) * bn * (1 - 1e-12)) ++viol;
    }

    recon_max = std::max(recon_max, recon);
    ortho_max = std::max(ortho_max, ortho);
    bony_max = std::max(bony_max, bony_rel);
    bern_viol += viol;
    scsv.row({fmt_int(s), fmt_real(recon), fmt_real(ortho), fmt_real(bony_rel), fmt_int(viol)});
  }
  scsv.close();

  cl.add("reconstruction", recon_max <= 1e-12, "max relative residual " + fmt_real(recon_max));
  cl.add("quasi_orthogonality", ortho_max <= 1e-12,
         "max normalized distant-block inner product " + fmt_real(ortho_max));
  cl.add("bony_identity", bony_max <= 1e-10, "max relative residual " + fmt_real(bony_max));
  cl.add("bernstein_bounds", bern_viol == 0, fmt_int(bern_viol) + " violations");

  // commutator constant: fixed 50-draw budget, compared across resolutions
  // by running the audit at two N
  const int csamp = std::min(nsamp, 50);
  Real comm_sup = 0;
  Csv ccsv(joinp(rc.out_dir, "commutator.csv"));
  csv_preamble(ccsv, rc);
  ccsv.row({"sample", "q", "C_emp"});
  Gaussian crng(rc.seed + 0x517cc1b727220a95ull);
  for (int s = 0; s < csamp; ++s) {
    const SpectralField v = random_field(g, Rank::vector, crng);
    const SpectralField u = random_field(g, Rank::scalar, crng);
    for (int q = fr.qmin; q <= fr.qmax; ++q) {
      const SpectralField uq = fr.block(u, q);
      const Real lun = l2_norm(lambda_power(uq, -1.0));
      if (lun == 0) continue;
      const Real gv = linf_norm(jacobian(fr.low_cutoff(v, q - 1)));
      if (gv == 0) continue;
      const Real c_emp = l2_norm(commutator_lambda_inv(fr, v, u, q)) / (gv * lun);
      comm_sup = std::max(comm_sup, c_emp);
      ccsv.row({fmt_int(s), fmt_int(q), fmt_real(c_emp)});
    }
  }
  ccsv.close();
  cl.add("commutator_constant", std::isfinite(comm_sup) && comm_sup > 0 && comm_sup < 1e6,
         "sup over samples and bands " + fmt_real(comm_sup));

  json metrics = {{"recon_max", recon_max},
                  {"ortho_max", ortho_max},
                  {"bony_max", bony_max},
                  {"bernstein_violations", bern_viol},
                  {"commutator_sup", comm_sup},
                  {"qmin", fr.qmin},
                  {"qmax", fr.qmax}};
  write_summary(rc, cl, metrics);
  return cl.all ? 0 : 1;
}

int scenario_linear_decay(const RunConfig& rc) {
  ensure_dir(rc.out_dir);
  CheckList cl("linear-decay");
  ModelParams p = rc.params;
  p.validate();
  const Grid g = rc.grid();
  const DyadicFrame fr = build_frame(g);
  const EnergyConstants ec = derive_constants(p);
  const LinearModeOperator op = assemble_linear_operator(g, p);
  const Propagator E = make_propagator(op, rc.h);

  const Real steps_r = rc.T / rc.h;
  const long nsteps = std::llround(steps_r);
  if (nsteps <= 0 || std::abs(steps_r - (Real)nsteps) > 1e-6)
    throw ConfigError("linear-decay: T must be a positive integer number of steps");
  const int stride = std::max(1, rc.stride);

  State S = random_band_state(fr, p, rc.seed, rc.qlo, rc.qhi, 1.0);

  std::vector<Real> times;
  std::vector<std::vector<BandEnergy>> specs;
  times.push_back(0.0);
  specs.push_back(band_spectrum(S, fr, ec, p));
  for (long n = 1; n <= nsteps; ++n) {
    E.apply(S);
    if (n % stride == 0 || n == nsteps) {
      times.push_back(n * rc.h);
      specs.push_back(band_spectrum(S, fr, ec, p));
    }
  }

  Csv bcsv(joinp(rc.out_dir, "bands.csv"));
  csv_preamble(bcsv, rc);
  csv_constants_line(bcsv, ec);
  bcsv.row({"t", "q", "regime", "Y", "Ytilde", "X", "s_q", "stilde_q", "equiv_ratio"});
  for (size_t i = 0; i < specs.size(); ++i)
    for (const BandEnergy& be : specs[i])
      bcsv.row({fmt_real(times[i]), fmt_int(be.q), regime_name(be.regime), fmt_real(be.Y),
                fmt_real(be.Ytilde), fmt_real(be.X), fmt_real(be.s_q), fmt_real(be.stilde_q),
                fmt_real(be.equiv_ratio)});
  bcsv.close();

  const int nb = fr.bands();
  bool mono = true;
  std::string mono_detail = "every band nonincreasing";
  std::vector<std::optional<Real>> rate(nb);
  Real eq_min = std::numeric_limits<Real>::infinity(), eq_max = 0;

  Csv rcsv(joinp(rc.out_dir, "rates.csv"));
  csv_preamble(rcsv, rc);
  csv_constants_line(rcsv, ec);
  rcsv.row({"q", "regime", "X0", "rate", "rate_over_stilde"});
  for (int b = 0; b < nb; ++b) {
    const int q = fr.qmin + b;
    std::vector<Real> xs(specs.size());
    for (size_t i = 0; i < specs.size(); ++i) {
      xs[i] = specs[i][b].X;
      const Real er = specs[i][b].equiv_ratio;
      if (er > 0) {
        eq_min = std::min(eq_min, er);
        eq_max = std::max(eq_max, er);
      }
    }
    for (size_t i = 0; i + 1 < xs.size() && mono; ++i)
      if (xs[i + 1] > xs[i] * (1 + 1e-12) + 1e-14 * xs[0]) {
        mono = false;
        mono_detail =
            "band q=" + fmt_int(q) + " first increases at t=" + fmt_real(times[i + 1]);
      }
    rate[b] = fit_rate(times, xs, 1e-8);
    const Real st = weight_stilde(q, ec);
    rcsv.row({fmt_int(q), regime_name(regime_of(q, ec)), fmt_real(xs[0]),
              rate[b] ? fmt_real(*rate[b]) : "nan",
              rate[b] ? fmt_real(*rate[b] / st) : "nan"});
  }
  rcsv.close();

  cl.add("monotone_decay", mono, mono_detail);

  {
    // low bands: rate/2^{2q} level across three consecutive bands
    std::vector<std::pair<int, Real>> lows;
    for (int b = 0; b < nb; ++b) {
      const int q = fr.qmin + b;
      if (q <= ec.q1 && rate[b] && *rate[b] > 0)
        lows.push_back({q, *rate[b] / std::exp2(2.0 * q)});
    }
    Real best = std::numeric_limits<Real>::infinity();
    for (size_t i = 0; i + 2 < lows.size(); ++i) {
      if (lows[i + 1].first != lows[i].first + 1 || lows[i + 2].first != lows[i].first + 2)
        continue;
      const Real lo = std::min({lows[i].second, lows[i + 1].second, lows[i + 2].second});
      const Real hi = std::max({lows[i].second, lows[i + 1].second, lows[i + 2].second});
      best = std::min(best, hi / lo);
    }
    if (!std::isfinite(best))
      cl.na("low_rate_scaling",
            "no three consecutive fitted bands at or below q1=" + fmt_int(ec.q1));
    else
      cl.add("low_rate_scaling", best <= 4.0,
             "best rate/2^{2q} spread over three consecutive low bands: factor " +
                 fmt_real(best));
  }
  {
    std::vector<Real> highs;
    for (int b = 0; b < nb; ++b)
      if (fr.qmin + b > ec.q0 && rate[b] && *rate[b] > 0) highs.push_back(*rate[b]);
    if (highs.size() < 2)
      cl.na("high_rate_uniform", "fewer than two fitted bands above q0=" + fmt_int(ec.q0));
    else {
      const Real lo = *std::min_element(highs.begin(), highs.end());
      const Real hi = *std::max_element(highs.begin(), highs.end());
      cl.add("high_rate_uniform", hi <= 4.0 * lo,
             "high-band rate spread: factor " + fmt_real(hi / lo));
    }
  }
  {
    int nmid = 0;
    bool ok = true;
    Real worst = std::numeric_limits<Real>::infinity();
    for (int b = 0; b < nb; ++b) {
      const int q = fr.qmin + b;
      if (q > ec.q1 && q <= ec.q0 && rate[b]) {
        ++nmid;
        worst = std::min(worst, *rate[b]);
        ok = ok && *rate[b] > 0;
      }
    }
    if (nmid == 0)
      cl.na("mid_rate_positive", "no fitted bands in (q1, q0]");
    else
      cl.add("mid_rate_positive", ok,
             fmt_int(nmid) + " mid bands, smallest rate " + fmt_real(worst));
  }

  write_state_snapshot(joinp(rc.out_dir, "final_state.olbx"), S);

  json jr = json::array();
  for (int b = 0; b < nb; ++b) {
    json e = {{"q", fr.qmin + b}};
    if (rate[b])
      e["rate"] = *rate[b];
    else
      e["rate"] = nullptr;
    jr.push_back(e);
  }
  json metrics = {{"qmin", fr.qmin},       {"qmax", fr.qmax},
                  {"q0", ec.q0},           {"q1", ec.q1},
                  {"rates", jr},           {"equiv_ratio_min", eq_min},
                  {"equiv_ratio_max", eq_max}};
  write_summary(rc, cl, metrics);
  return cl.all ? 0 : 1;
}

int scenario_prop31_audit(const RunConfig& rc) {
  ensure_dir(rc.out_dir);
  CheckList cl("prop31-audit");
  ModelParams p = rc.params;
  p.validate();
  const Grid g = rc.grid();
  const DyadicFrame fr = build_frame(g);
  const EnergyConstants ec = derive_constants(p);
  const LinearModeOperator op = assemble_linear_operator(g, p);
  const Propagator E = make_propagator(op, rc.h);

  const Real sd = p.d / 2.0;
  const HybridSpec low_sup{sd - 1, sd, ec.q0};
  const HybridSpec low_int{sd + 1, sd, ec.q0};
  const BesovSpec u_sup{sd - 1, 2, 1}, u_int{sd + 1, 2, 1}, t_spec{sd, 2, 1};

  State S = random_band_state(fr, p, rc.seed, rc.qlo, rc.qhi, 1.0);

  std::optional<SpectralField> v;
  if (rc.v_recipe == "shear") {
    v = single_mode_state(g, p, 1.0).u; // unit sup norm by construction
  } else if (rc.v_recipe == "random") {
    // large-scale advecting field: three lowest shells, unit sup norm
    State vs = random_band_state(fr, p, rc.seed + 1, fr.qmin,
                                 std::min(fr.qmin + 2, fr.qmax), 1.0);
    const Real vn = linf_norm(vs.u);
    if (vn > 0) v = (1.0 / vn) * vs.u;
  } else if (rc.v_recipe != "zero") {
    throw ConfigError("prop31: unknown v recipe \"" + rc.v_recipe + "\"");
  }
  const Real gradv_inf = v ? linf_norm(jacobian(*v)) : 0.0;

  std::optional<State> src;
  if (rc.source_recipe == "single") {
    const int qs = std::clamp((ec.q0 + ec.q1) / 2, fr.qmin, fr.qmax);
    State F = random_band_state(fr, p, rc.seed + 2, qs, qs, 1.0);
    for (int j = 0; j < g.d; ++j) std::fill(F.u.c[j].begin(), F.u.c[j].end(), Cmplx(0));
    for (int c = 0; c < F.tau.nc; ++c)
      std::fill(F.tau.c[c].begin(), F.tau.c[c].end(), Cmplx(0));
    const Real nF = hybrid_norm(fr, F.a, low_sup);
    if (!(nF > 0)) throw Error("prop31: degenerate single-band source");
    for (Cmplx& z : F.a.c[0]) z *= 1.0 / nF;
    src = std::move(F);
  } else if (rc.source_recipe == "random") {
    src = random_band_state(fr, p, rc.seed + 2, rc.qlo, rc.qhi, 1.0);
  } else if (rc.source_recipe != "zero") {
    throw ConfigError("prop31: unknown source recipe \"" + rc.source_recipe + "\"");
  }

  const Real data0 = hybrid_norm(fr, S.a, low_sup) + besov_norm(fr, S.u, u_sup) +
                     besov_norm(fr, S.tau, t_spec);
  const Real src_rate = src ? hybrid_norm(fr, src->a, low_sup) +
                              besov_norm(fr, src->u, u_sup) +
                              besov_norm(fr, src->tau, t_spec)
                            : 0.0;

  BlockTrace ta, tu, tt;
  std::vector<Real> times;
  Recorder rec;
  rec.stride = std::max(1, rc.stride);
  rec.fn = [&](Real t, const State& s) {
    times.push_back(t);
    ta.record(t, fr, s.a);
    tu.record(t, fr, s.u);
    tt.record(t, fr, s.tau);
  };

  StepConfig sc;
  sc.h = rc.h;
  sc.T_end = rc.T;
  sc.scheme = rc.scheme;
  sc.cfl = rc.cfl;
  sc.blowup = rc.blowup;
  const SpectralField* vp = v ? &*v : nullptr;
  const State* srcp = src ? &*src : nullptr;
  RhsFn rhs = [&](const State& s) { return rhs_linearized(s, fr, vp, srcp, p); };
  const State Sf = run(S, sc, E, rhs, p, &rec);

  Csv pcsv(joinp(rc.out_dir, "prop31.csv"));
  csv_preamble(pcsv, rc);
  csv_constants_line(pcsv, ec);
  pcsv.row({"t", "V", "LHS", "RHS", "ratio"});
  Real sup_ratio = 0;
  bool finite = true;
  std::vector<Real> Vs, ratios;
  for (size_t i = 0; i < times.size(); ++i) {
    const Real lhs = hybrid_now(ta, i, low_sup) + besov_now(tu, i, u_sup.s) +
                     besov_now(tt, i, t_spec.s) +
                     chemin_lerner_hybrid_upto(ta, low_int, 1, i) +
                     chemin_lerner_norm_upto(tu, u_int.s, 1, 1, i) +
                     chemin_lerner_norm_upto(tt, t_spec.s, 1, 1, i);
    const Real V = gradv_inf * times[i];
    const Real rhsv = data0 + src_rate * times[i];
    const Real ratio =
        rhsv > 0 ? lhs / rhsv : (lhs > 0 ? std::numeric_limits<Real>::infinity() : 0.0);
    if (!std::isfinite(ratio)) finite = false;
    sup_ratio = std::max(sup_ratio, ratio);
    Vs.push_back(V);
    ratios.push_back(ratio);
    pcsv.row({fmt_real(times[i]), fmt_real(V), fmt_real(lhs), fmt_real(rhsv),
              fmt_real(ratio)});
  }
  pcsv.close();

  json metrics = {{"data_norm", data0},   {"source_rate", src_rate},
                  {"gradv_inf", gradv_inf}, {"sup_ratio", sup_ratio},
                  {"q0", ec.q0},          {"q1", ec.q1}};

  if (data0 == 0 && src_rate == 0) {
    cl.add("vacuous", true, "zero data and sources: vacuous pass");
  } else {
    cl.add("ratio_finite", finite, "sup LHS/RHS = " + fmt_real(sup_ratio));
    if (!v) {
      cl.add("bounded_without_transport", finite && sup_ratio < 1e6,
             "v = 0: empirical constant " + fmt_real(sup_ratio));
    } else {
      const Real K0 = 10 * std::max(1.0, ratios.empty() ? 1.0 : ratios[0]);
      bool anomaly = false;
      Real anomaly_t = 0;
      for (size_t i = 0; i < ratios.size(); ++i)
        if (ratios[i] > K0 * std::exp(std::min(100.0 * Vs[i], 700.0))) {
          anomaly = true;
          anomaly_t = times[i];
          break;
        }
      cl.add("growth_within_exp_100V", !anomaly,
             anomaly ? "ratio escapes exp(100 V) at t=" + fmt_real(anomaly_t)
                     : "contained for every horizon");
      std::vector<Real> lx, ly;
      for (size_t i = 0; i < ratios.size(); ++i)
        if (ratios[i] > 0 && std::isfinite(ratios[i])) {
          lx.push_back(Vs[i]);
          ly.push_back(std::log(ratios[i]));
        }
      const auto C = ls_slope(lx, ly);
      if (C) metrics["fitted_C"] = *C;
    }
  }

  write_state_snapshot(joinp(rc.out_dir, "final_state.olbx"), Sf);
  write_summary(rc, cl, metrics);
  return cl.all ? 0 : 1;
}

namespace {

struct SdResult {
  bool completed = false;
  std::string error;
  BootstrapTrace bt;
  Real sup_X = 0, M_emp = 0, max_mean_a = 0;
  std::optional<State> final_state;
};

SdResult small_run(const RunConfig& rc, const ModelParams& p, int N, Real delta,
                   const std::string& csv_path) {
  SdResult r;
  const Grid g = Grid::make(p.d, N, rc.L);
  const DyadicFrame fr = build_frame(g);
  const EnergyConstants ec = derive_constants(p);
  const LinearModeOperator op = assemble_linear_operator(g, p);
  const Propagator E = make_propagator(op, rc.h);

  const Real steps_r = rc.T / rc.h;
  const long nsteps = std::llround(steps_r);
  if (nsteps <= 0 || std::abs(steps_r - (Real)nsteps) > 1e-6)
    throw ConfigError("small-data: T must be a positive integer number of steps");
  int stride = (int)std::min((long)std::max(1, rc.stride), nsteps);
  while (nsteps % stride) --stride; // keep record times uniform

  State S = random_band_state(fr, p, rc.seed, rc.qlo, rc.qhi, delta);

  BlockTrace ta, tu, tt;
  std::vector<Real> times, gradu, means;
  Recorder rec;
  rec.stride = stride;
  rec.fn = [&](Real t, const State& s) {
    times.push_back(t);
    ta.record(t, fr, s.a);
    tu.record(t, fr, s.u);
    tt.record(t, fr, s.tau);
    gradu.push_back(linf_norm(jacobian(s.u)));
    means.push_back(std::abs(mean_value(s.a)));
  };

  StepConfig sc;
  sc.h = rc.h;
  sc.T_end = rc.T;
  sc.scheme = rc.scheme;
  sc.cfl = rc.cfl;
  sc.blowup = rc.blowup;
  RhsFn rhs = [&p](const State& s) { return rhs_full(s, p); };
  try {
    r.final_state = run(S, sc, E, rhs, p, &rec);
    r.completed = true;
  } catch (const Error& e) {
    r.error = e.what();
  }

  if (!times.empty()) {
    r.bt = bootstrap_quantities(ta, tu, tt, gradu, p.d, ec.q0);
    r.sup_X = *std::max_element(r.bt.X.begin(), r.bt.X.end());
    r.M_emp = r.bt.X0 > 0 ? r.sup_X / r.bt.X0 : 0.0;
    r.max_mean_a = *std::max_element(means.begin(), means.end());

    Csv csv(csv_path);
    csv_preamble(csv, rc);
    csv_constants_line(csv, ec);
    csv.comment("N " + fmt_int(N) + "  delta " + fmt_real(delta));
    csv.row({"t", "X", "U", "V", "gradu_inf", "abs_mean_a"});
    for (size_t i = 0; i < r.bt.t.size(); ++i)
      csv.row({fmt_real(r.bt.t[i]), fmt_real(r.bt.X[i]), fmt_real(r.bt.U[i]),
               fmt_real(r.bt.V[i]), fmt_real(gradu[i]), fmt_real(means[i])});
    csv.close();
  }
  return r;
}

} // namespace

int scenario_small_data_global(const RunConfig& rc) {
  ensure_dir(rc.out_dir);
  CheckList cl("small-data-global");
  ModelParams p = rc.params;
  p.validate();

  const SdResult base = small_run(rc, p, rc.N, rc.delta, joinp(rc.out_dir, "bootstrap_base.csv"));
  const SdResult half =
      small_run(rc, p, rc.N, rc.delta / 2, joinp(rc.out_dir, "bootstrap_halfdelta.csv"));
  const SdResult dbln =
      small_run(rc, p, 2 * rc.N, rc.delta, joinp(rc.out_dir, "bootstrap_doubleN.csv"));

  cl.add("no_blowup", base.completed && half.completed && dbln.completed,
         base.completed && half.completed && dbln.completed
             ? "all three runs reached T=" + fmt_real(rc.T)
             : "base: " + (base.completed ? std::string("ok") : base.error) +
                   " | half-delta: " + (half.completed ? std::string("ok") : half.error) +
                   " | double-N: " + (dbln.completed ? std::string("ok") : dbln.error));

  cl.add("M_emp_finite", base.completed && std::isfinite(base.M_emp) && base.M_emp > 0,
         "M_emp = sup X / X0 = " + fmt_real(base.M_emp));

  if (base.completed && dbln.completed && base.M_emp > 0) {
    const Real rel = std::abs(dbln.M_emp / base.M_emp - 1.0);
    cl.add("M_emp_resolution_stable", rel <= 0.2,
           "N=" + fmt_int(rc.N) + ": " + fmt_real(base.M_emp) + "  N=" + fmt_int(2 * rc.N) +
               ": " + fmt_real(dbln.M_emp) + "  rel diff " + fmt_real(rel));
  } else {
    cl.na("M_emp_resolution_stable", "runs incomplete");
  }

  if (base.completed && half.completed && half.sup_X > 0) {
    const Real ratio = base.sup_X / half.sup_X;
    cl.add("amplitude_scaling", ratio >= 1.8 && ratio <= 2.2,
           "sup X ratio for delta vs delta/2: " + fmt_real(ratio));
  } else {
    cl.na("amplitude_scaling", "runs incomplete");
  }

  // saturation of U: increments over the last five unit windows
  if (base.completed && rc.T >= 6.0) {
    std::vector<Real> marks;
    bool have = true;
    for (int k = 0; k <= 5; ++k) {
      const Real tk = rc.T - 5 + k;
      bool found = false;
      for (size_t i = 0; i < base.bt.t.size(); ++i)
        if (std::abs(base.bt.t[i] - tk) <= 1e-9) {
          marks.push_back(base.bt.U[i]);
          found = true;
          break;
        }
      have = have && found;
    }
    if (!have) {
      cl.na("U_window_saturation", "records do not hit unit-time marks");
    } else {
      bool dec = true;
      std::string det = "increments";
      for (int k = 0; k < 5; ++k) {
        const Real inc = marks[k + 1] - marks[k];
        det += " " + fmt_real(inc);
        if (k > 0 && inc > (marks[k] - marks[k - 1]) * (1 + 1e-9) + 1e-15) dec = false;
      }
      cl.add("U_window_saturation", dec, det);
    }
  } else {
    cl.na("U_window_saturation", "needs a completed run with T >= 6");
  }

  cl.add("mean_mass_conserved", base.completed && base.max_mean_a <= 1e-12,
         "max |mean(a)| over the base run: " + fmt_real(base.max_mean_a));

  if (base.final_state)
    write_state_snapshot(joinp(rc.out_dir, "final_state.olbx"), *base.final_state);
  if (half.final_state)
    write_state_snapshot(joinp(rc.out_dir, "final_state_halfdelta.olbx"), *half.final_state);
  if (dbln.final_state)
    write_state_snapshot(joinp(rc.out_dir, "final_state_doubleN.olbx"), *dbln.final_state);

  json metrics = {{"M_emp", base.M_emp},
                  {"M_emp_doubleN", dbln.M_emp},
                  {"sup_X", base.sup_X},
                  {"sup_X_halfdelta", half.sup_X},
                  {"X0", base.bt.X0},
                  {"max_mean_a", base.max_mean_a},
                  {"embed_const", base.bt.embed_const}};
  write_summary(rc, cl, metrics);
  return cl.all ? 0 : 1;
}

namespace {

int pr_token(const std::string& t) {
  if (t == "inf") return kInf;
  return std::stoi(t);
}

std::vector<std::string> split_spec(const std::string& s) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    const size_t c = s.find(':', pos);
    if (c == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, c - pos));
    pos = c + 1;
  }
}

Real eval_norm_spec(const DyadicFrame& fr, const SpectralField& f, const std::string& spec) {
  const std::vector<std::string> t = split_spec(spec);
  try {
    if (t[0] == "l2" && t.size() == 1) return l2_norm(f);
    if (t[0] == "besov" && t.size() >= 2 && t.size() <= 4) {
      BesovSpec sp;
      sp.s = std::stod(t[1]);
      if (t.size() > 2) sp.p = pr_token(t[2]);
      if (t.size() > 3) sp.r = pr_token(t[3]);
      return besov_norm(fr, f, sp);
    }
    if (t[0] == "hybrid" && t.size() == 4) {
      HybridSpec sp;
      sp.s = std::stod(t[1]);
      sp.t = std::stod(t[2]);
      sp.q0 = std::stoi(t[3]);
      return hybrid_norm(fr, f, sp);
    }
  } catch (const std::logic_error&) {
    throw ConfigError("norms: bad number in spec \"" + spec + "\"");
  }
  throw ConfigError("norms: unknown spec \"" + spec +
                    "\" (use l2 | besov:s[:p[:r]] | hybrid:s:t:q0)");
}

} // namespace

int scenario_norms(const RunConfig& rc) {
  ensure_dir(rc.out_dir);
  CheckList cl("norms");
  if (rc.field_file.empty())
    throw ConfigError("norms: no input file (--file or config norms.file)");
  Grid g;
  const std::vector<NamedField> fields = read_snapshot(rc.field_file, &g);
  const DyadicFrame fr = build_frame(g);
  std::vector<std::string> specs = rc.norm_specs;
  if (specs.empty()) specs = {"l2", "besov:0", "besov:1"};

  Csv csv(joinp(rc.out_dir, "norms.csv"));
  csv_preamble(csv, rc);
  csv.comment("file " + rc.field_file);
  csv.row({"field", "spec", "value"});
  for (const NamedField& nf : fields)
    for (const std::string& s : specs) {
      const Real val = eval_norm_spec(fr, nf.f, s);
      csv.row({nf.name, s, fmt_real(val)});
      std::printf("[norms] %s %s = %s\n", nf.name.c_str(), s.c_str(), fmt_real(val).c_str());
    }
  csv.close();
  cl.add("report", true,
         fmt_int((long long)fields.size()) + " fields x " +
             fmt_int((long long)specs.size()) + " specs");
  write_summary(rc, cl, json::object());
  return 0;
}

} // namespace olb
