#include "olb/scenarios.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

namespace {

// raw flag values; applied over the config file only when actually given
struct Cli {
  std::string config, out, v, sources, file, scheme;
  double T = 0, h = 0, L = 0, delta = 0, cfl = 0, blowup = 0;
  double Re = 0, We = 0, omega = 0, alpha = 0, gamma = 0;
  std::uint64_t seed = 0;
  int N = 0, samples = 0, stride = 0, d = 0, qlo = 0, qhi = 0;
  std::vector<std::string> specs;
};

void add_opts(CLI::App* s, Cli& c) {
  s->add_option("--config", c.config, "JSON config file, applied before flags")
      ->check(CLI::ExistingFile);
  s->add_option("--seed", c.seed, "RNG seed");
  s->add_option("--out", c.out, "output directory");
  s->add_option("--T", c.T, "final time");
  s->add_option("--h", c.h, "time step");
  s->add_option("--N", c.N, "grid points per axis");
  s->add_option("--L", c.L, "box scale (period 2*pi*L)");
  s->add_option("--d", c.d, "space dimension (2 or 3)");
  s->add_option("--delta", c.delta, "initial data amplitude");
  s->add_option("--samples", c.samples, "random samples");
  s->add_option("--stride", c.stride, "record every this many steps");
  s->add_option("--qlo", c.qlo, "lowest band for random data");
  s->add_option("--qhi", c.qhi, "highest band for random data");
  s->add_option("--Re", c.Re, "Reynolds number");
  s->add_option("--We", c.We, "Weissenberg number");
  s->add_option("--omega", c.omega, "coupling parameter in (0,1)");
  s->add_option("--alpha", c.alpha, "objective-derivative parameter in [-1,1]");
  s->add_option("--gamma", c.gamma, "pressure-law exponent");
  s->add_option("--cfl", c.cfl, "advective CFL limit");
  s->add_option("--blowup", c.blowup, "spectral amplitude declared a blow-up");
  s->add_option("--scheme", c.scheme, "if_rk2 | if_euler");
  s->add_option("--v", c.v, "frozen transport field: zero | shear | random");
  s->add_option("--sources", c.sources, "forcing recipe: zero | single | random");
  s->add_option("--file", c.file, "snapshot to measure");
  s->add_option("--spec", c.specs, "norm spec, repeatable");
}

olb::RunConfig resolve(const CLI::App* s, const Cli& c) {
  olb::RunConfig rc;
  if (s->count("--config")) olb::merge_config_file(rc, c.config);
  if (s->count("--seed")) rc.seed = c.seed;
  if (s->count("--out")) rc.out_dir = c.out;
  if (s->count("--T")) rc.T = c.T;
  if (s->count("--h")) rc.h = c.h;
  if (s->count("--N")) rc.N = c.N;
  if (s->count("--L")) rc.L = c.L;
  if (s->count("--d")) rc.params.d = c.d;
  if (s->count("--delta")) rc.delta = c.delta;
  if (s->count("--samples")) rc.samples = c.samples;
  if (s->count("--stride")) rc.stride = c.stride;
  if (s->count("--qlo")) rc.qlo = c.qlo;
  if (s->count("--qhi")) rc.qhi = c.qhi;
  if (s->count("--Re")) rc.params.Re = c.Re;
  if (s->count("--We")) rc.params.We = c.We;
  if (s->count("--omega")) rc.params.omega = c.omega;
  if (s->count("--alpha")) rc.params.alpha = c.alpha;
  if (s->count("--gamma")) rc.params.gamma = c.gamma;
  if (s->count("--cfl")) rc.cfl = c.cfl;
  if (s->count("--blowup")) rc.blowup = c.blowup;
  if (s->count("--scheme")) {
    if (c.scheme == "if_rk2")
      rc.scheme = olb::Scheme::if_rk2;
    else if (c.scheme == "if_euler")
      rc.scheme = olb::Scheme::if_euler;
    else
      throw olb::ConfigError("unknown scheme \"" + c.scheme + "\"");
  }
  if (s->count("--v")) rc.v_recipe = c.v;
  if (s->count("--sources")) rc.source_recipe = c.sources;
  if (s->count("--file")) rc.field_file = c.file;
  if (!c.specs.empty()) rc.norm_specs = c.specs;
  return rc;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral runs and band-resolved audits for a compressible "
               "viscoelastic flow model"};
  app.require_subcommand(1);
  Cli cli;

  CLI::App* c_const = app.add_subcommand(
      "constants-audit", "derived thresholds and coefficient inequality margins");
  CLI::App* c_lp = app.add_subcommand(
      "lp-audit", "dyadic decomposition exactness, product splitting, commutator bounds");
  CLI::App* c_lin = app.add_subcommand(
      "linear-decay", "band-energy decay rates of the linearized system");
  CLI::App* c_prop = app.add_subcommand(
      "prop31-audit", "a-priori estimate ratio for the paralinearized system");
  CLI::App* c_small = app.add_subcommand(
      "small-data-global", "global bound and scaling checks for small initial data");
  CLI::App* c_norms = app.add_subcommand("norms", "norm report for a stored snapshot");
  app.set_help_flag("--help", "print help and exit");
  for (CLI::App* s : {c_const, c_lp, c_lin, c_prop, c_small, c_norms}) {
    s->set_help_flag("--help", "print help and exit");
    add_opts(s, cli);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const CLI::App* sub = app.get_subcommands().front();
    const olb::RunConfig rc = resolve(sub, cli);
    if (sub == c_const) return olb::scenario_constants_audit(rc);
    if (sub == c_lp) return olb::scenario_lp_audit(rc);
    if (sub == c_lin) return olb::scenario_linear_decay(rc);
    if (sub == c_prop) return olb::scenario_prop31_audit(rc);
    if (sub == c_small) return olb::scenario_small_data_global(rc);
    if (sub == c_norms) return olb::scenario_norms(rc);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
