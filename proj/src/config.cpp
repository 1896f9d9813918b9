#include "olb/config.hpp"

#include <json.hpp>

#include <fstream>

namespace olb {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok) throw ConfigError("config: unknown key \"" + it.key() + "\" in " + where);
  }
}

Scheme scheme_of(const std::string& s) {
  if (s == "if_rk2") return Scheme::if_rk2;
  if (s == "if_euler") return Scheme::if_euler;
  throw ConfigError("config: unknown scheme \"" + s + "\"");
}

const char* scheme_name(Scheme s) {
  return s == Scheme::if_rk2 ? "if_rk2" : "if_euler";
}

} // namespace

void merge_config_file(RunConfig& rc, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
  try {
    reject_unknown(j, {"grid", "params", "step", "recorder", "seed", "delta", "samples",
                       "bands", "prop31", "out", "norms"},
                   path);
    if (j.contains("grid")) {
      const json& g = j["grid"];
      reject_unknown(g, {"d", "N", "L"}, "grid");
      if (g.contains("d")) rc.params.d = g["d"].get<int>();
      if (g.contains("N")) rc.N = g["N"].get<int>();
      if (g.contains("L")) rc.L = g["L"].get<Real>();
    }
    if (j.contains("params")) {
      const json& p = j["params"];
      reject_unknown(p, {"Re", "We", "omega", "alpha", "gamma"}, "params");
      if (p.contains("Re")) rc.params.Re = p["Re"].get<Real>();
      if (p.contains("We")) rc.params.We = p["We"].get<Real>();
      if (p.contains("omega")) rc.params.omega = p["omega"].get<Real>();
      if (p.contains("alpha")) rc.params.alpha = p["alpha"].get<Real>();
      if (p.contains("gamma")) rc.params.gamma = p["gamma"].get<Real>();
    }
    if (j.contains("step")) {
      const json& s = j["step"];
      reject_unknown(s, {"h", "T", "scheme", "cfl", "blowup"}, "step");
      if (s.contains("h")) rc.h = s["h"].get<Real>();
      if (s.contains("T")) rc.T = s["T"].get<Real>();
      if (s.contains("scheme")) rc.scheme = scheme_of(s["scheme"].get<std::string>());
      if (s.contains("cfl")) rc.cfl = s["cfl"].get<Real>();
      if (s.contains("blowup")) rc.blowup = s["blowup"].get<Real>();
    }
    if (j.contains("recorder")) {
      const json& r = j["recorder"];
      reject_unknown(r, {"stride"}, "recorder");
      if (r.contains("stride")) rc.stride = r["stride"].get<int>();
    }
    if (j.contains("seed")) rc.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("delta")) rc.delta = j["delta"].get<Real>();
    if (j.contains("samples")) rc.samples = j["samples"].get<int>();
    if (j.contains("bands")) {
      const json& b = j["bands"];
      reject_unknown(b, {"qlo", "qhi"}, "bands");
      if (b.contains("qlo")) rc.qlo = b["qlo"].get<int>();
      if (b.contains("qhi")) rc.qhi = b["qhi"].get<int>();
    }
    if (j.contains("prop31")) {
      const json& p = j["prop31"];
      reject_unknown(p, {"v", "sources"}, "prop31");
      if (p.contains("v")) rc.v_recipe = p["v"].get<std::string>();
      if (p.contains("sources")) rc.source_recipe = p["sources"].get<std::string>();
    }
    if (j.contains("out")) rc.out_dir = j["out"].get<std::string>();
    if (j.contains("norms")) {
      const json& n = j["norms"];
      reject_unknown(n, {"file", "specs"}, "norms");
      if (n.contains("file")) rc.field_file = n["file"].get<std::string>();
      if (n.contains("specs")) rc.norm_specs = n["specs"].get<std::vector<std::string>>();
    }
  } catch (const json::exception& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
}

std::string config_summary(const RunConfig& rc) {
  json j;
  j["grid"] = {{"d", rc.params.d}, {"N", rc.N}, {"L", rc.L}};
  j["params"] = {{"Re", rc.params.Re},
                 {"We", rc.params.We},
                 {"omega", rc.params.omega},
                 {"alpha", rc.params.alpha},
                 {"gamma", rc.params.gamma}};
  j["step"] = {{"h", rc.h}, {"T", rc.T}, {"scheme", scheme_name(rc.scheme)},
               {"cfl", rc.cfl}, {"blowup", rc.blowup}};
  j["recorder"] = {{"stride", rc.stride}};
  j["seed"] = rc.seed;
  j["delta"] = rc.delta;
  j["samples"] = rc.samples;
  j["bands"] = {{"qlo", rc.qlo}, {"qhi", rc.qhi}};
  j["prop31"] = {{"v", rc.v_recipe}, {"sources", rc.source_recipe}};
  return j.dump();
}

} // namespace olb
