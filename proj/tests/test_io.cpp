#include <doctest.h>

#include "olb/config.hpp"
#include "olb/csv.hpp"
#include "olb/random_state.hpp"
#include "olb/snapshot.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace olb;
namespace fs = std::filesystem;

namespace {

std::string tmp_path(const std::string& name) {
  return (fs::temp_directory_path() / ("olbx_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

void put_u32(std::ofstream& o, std::uint32_t v) {
  o.write(reinterpret_cast<const char*>(&v), 4);
}
void put_f64(std::ofstream& o, double v) {
  o.write(reinterpret_cast<const char*>(&v), 8);
}

// header for a container with the given field count, valid up to that point
std::ofstream begin_container(const std::string& path, std::uint32_t nfields) {
  std::ofstream o(path, std::ios::binary);
  o.write("OLBXFLD1", 8);
  put_u32(o, 2);
  put_u32(o, 16);
  put_f64(o, 1.0);
  put_u32(o, nfields);
  return o;
}

} // namespace

TEST_CASE("state snapshots round-trip every coefficient") {
  const Grid g = Grid::make(2, 16, 2.5);
  Gaussian rng(31);
  State s = State::zero(g);
  s.a = random_field(g, Rank::scalar, rng);
  s.u = random_field(g, Rank::vector, rng);
  s.tau = random_field(g, Rank::sym, rng);
  s.a.c[0][0] = Cmplx(0.125, 0.0);

  const std::string path = tmp_path("roundtrip.olbx");
  write_state_snapshot(path, s);
  const State r = read_state_snapshot(path);

  CHECK(r.grid().d == 2);
  CHECK(r.grid().N == 16);
  CHECK(r.grid().L == 2.5);
  Real worst = 0;
  auto cmp = [&](const SpectralField& x, const SpectralField& y) {
    REQUIRE(x.nc == y.nc);
    for (int c = 0; c < x.nc; ++c)
      for (long m = 0; m < g.modes; ++m)
        worst = std::max(worst, std::abs(x.c[c][m] - y.c[c][m]));
  };
  cmp(s.a, r.a);
  cmp(s.u, r.u);
  cmp(s.tau, r.tau);
  CHECK(worst == 0.0);
  fs::remove(path);
}

TEST_CASE("named containers keep names, ranks, and order") {
  const Grid g = Grid::make(2, 16, 1.0);
  Gaussian rng(7);
  const SpectralField f0 = random_field(g, Rank::scalar, rng);
  const SpectralField f1 = random_field(g, Rank::vector, rng);
  const std::string path = tmp_path("named.olbx");
  write_snapshot(path, g, {{"vorticity", f0}, {"drift", f1}});

  Grid g2;
  const auto fields = read_snapshot(path, &g2);
  REQUIRE(fields.size() == 2);
  CHECK(fields[0].name == "vorticity");
  CHECK(fields[1].name == "drift");
  CHECK(fields[0].f.rank == Rank::scalar);
  CHECK(fields[1].f.rank == Rank::vector);
  CHECK(g2.same(g));
  fs::remove(path);
}

TEST_CASE("writing a field from another grid is refused") {
  const Grid g = Grid::make(2, 16, 1.0);
  const Grid other = Grid::make(2, 32, 1.0);
  const std::string path = tmp_path("mismatch.olbx");
  CHECK_THROWS_AS(
      write_snapshot(path, g, {{"x", SpectralField::zero(other, Rank::scalar)}}),
      Error);
  fs::remove(path);
}

TEST_CASE("reader defects carry the byte offset") {
  const std::string path = tmp_path("defect.olbx");

  SUBCASE("missing file") {
    try {
      read_snapshot(tmp_path("no_such_file.olbx"));
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset == 0);
    }
  }
  SUBCASE("bad magic") {
    spit(path, "NOTAFLD0 some trailing junk");
    try {
      read_snapshot(path);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset == 0);
      CHECK(std::string(e.what()).find("magic") != std::string::npos);
    }
  }
  SUBCASE("bad dimension at offset 8") {
    {
      std::ofstream o(path, std::ios::binary);
      o.write("OLBXFLD1", 8);
      put_u32(o, 5);
      put_u32(o, 16);
      put_f64(o, 1.0);
      put_u32(o, 0);
    }
    try {
      read_snapshot(path);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset == 8);
    }
  }
  SUBCASE("odd N at offset 12") {
    {
      std::ofstream o(path, std::ios::binary);
      o.write("OLBXFLD1", 8);
      put_u32(o, 2);
      put_u32(o, 17);
      put_f64(o, 1.0);
      put_u32(o, 0);
    }
    try {
      read_snapshot(path);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset == 12);
    }
  }
  SUBCASE("nonpositive L at offset 16") {
    {
      std::ofstream o(path, std::ios::binary);
      o.write("OLBXFLD1", 8);
      put_u32(o, 2);
      put_u32(o, 16);
      put_f64(o, -1.0);
      put_u32(o, 0);
    }
    try {
      read_snapshot(path);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset == 16);
    }
  }
  SUBCASE("absurd field count at offset 24") {
    {
      auto o = begin_container(path, 1000);
    }
    try {
      read_snapshot(path);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset == 24);
    }
  }
  SUBCASE("unknown rank tag after the name") {
    {
      auto o = begin_container(path, 1);
      put_u32(o, 1);
      o.write("x", 1);
      put_u32(o, 7); // no such rank
      put_u32(o, 1);
    }
    try {
      read_snapshot(path);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset == 33); // 28 header + 4 name length + 1 name byte
    }
  }
  SUBCASE("component count contradicting the rank") {
    {
      auto o = begin_container(path, 1);
      put_u32(o, 1);
      o.write("x", 1);
      put_u32(o, 1); // vector
      put_u32(o, 5); // d = 2 expects 2 components
    }
    try {
      read_snapshot(path);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset == 37);
    }
  }
  SUBCASE("truncation points at the end of the readable bytes") {
    const Grid g = Grid::make(2, 16, 1.0);
    write_state_snapshot(path, State::zero(g));
    const auto full = fs::file_size(path);
    fs::resize_file(path, full / 2);
    try {
      read_snapshot(path);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset == (long long)(full / 2));
      CHECK(std::string(e.what()).find("truncated") != std::string::npos);
    }
  }
  SUBCASE("a container without the three state fields") {
    const Grid g = Grid::make(2, 16, 1.0);
    write_snapshot(path, g, {{"a", SpectralField::zero(g, Rank::scalar)}});
    try {
      read_state_snapshot(path);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset == 8);
    }
  }
  fs::remove(path);
}

TEST_CASE("csv output is byte-stable and comment-prefixed") {
  const std::string path = tmp_path("table.csv");
  {
    Csv csv(path);
    csv.comment("config {}");
    csv.row({"t", "x"});
    csv.row({fmt_real(0.1), fmt_int(42)});
    csv.close();
  }
  CHECK(slurp(path) == "# config {}\nt,x\n0.10000000000000001,42\n");
  fs::remove(path);
}

TEST_CASE("formatted reals parse back to the same bits") {
  const Real vals[] = {0.1,    1.0 / 3.0,  1e-300, 1e300,     12345.678901234567,
                       -2.5e7, 0x1.0p-52,  7.0,    1e17,      3.141592653589793,
                       0.0,    -0.25};
  for (Real v : vals) {
    const std::string s = fmt_real(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(!std::signbit(std::strtod(fmt_real(0.0).c_str(), nullptr)));
  CHECK(std::signbit(std::strtod(fmt_real(-0.0).c_str(), nullptr)));
  CHECK(fmt_int(-9007199254740993LL) == "-9007199254740993");
}

TEST_CASE("config files overlay every section and reject strangers") {
  const std::string path = tmp_path("conf.json");
  spit(path, R"({
    "grid": {"d": 3, "N": 32, "L": 2.0},
    "params": {"Re": 2.0, "We": 0.5, "omega": 0.25, "alpha": -0.5, "gamma": 1.0},
    "step": {"h": 0.02, "T": 4.0, "scheme": "if_euler", "cfl": 0.4, "blowup": 1e9},
    "recorder": {"stride": 7},
    "seed": 99,
    "delta": 0.01,
    "samples": 12,
    "bands": {"qlo": -2, "qhi": 3},
    "prop31": {"v": "shear", "sources": "random"},
    "out": "outdir",
    "norms": {"file": "f.olbx", "specs": ["l2", "besov:1"]}
  })");

  RunConfig rc;
  merge_config_file(rc, path);
  CHECK(rc.params.d == 3);
  CHECK(rc.N == 32);
  CHECK(rc.L == 2.0);
  CHECK(rc.params.Re == 2.0);
  CHECK(rc.params.We == 0.5);
  CHECK(rc.params.omega == 0.25);
  CHECK(rc.params.alpha == -0.5);
  CHECK(rc.params.gamma == 1.0);
  CHECK(rc.h == 0.02);
  CHECK(rc.T == 4.0);
  CHECK(rc.scheme == Scheme::if_euler);
  CHECK(rc.cfl == 0.4);
  CHECK(rc.blowup == 1e9);
  CHECK(rc.stride == 7);
  CHECK(rc.seed == 99);
  CHECK(rc.delta == 0.01);
  CHECK(rc.samples == 12);
  CHECK(rc.qlo == -2);
  CHECK(rc.qhi == 3);
  CHECK(rc.v_recipe == "shear");
  CHECK(rc.source_recipe == "random");
  CHECK(rc.out_dir == "outdir");
  CHECK(rc.field_file == "f.olbx");
  REQUIRE(rc.norm_specs.size() == 2);
  CHECK(rc.norm_specs[1] == "besov:1");

  SUBCASE("unknown top-level key") {
    spit(path, R"({"grids": {}})");
    RunConfig c;
    CHECK_THROWS_AS(merge_config_file(c, path), ConfigError);
  }
  SUBCASE("unknown nested key") {
    spit(path, R"({"grid": {"M": 3}})");
    RunConfig c;
    CHECK_THROWS_AS(merge_config_file(c, path), ConfigError);
  }
  SUBCASE("wrong value type") {
    spit(path, R"({"grid": {"N": "big"}})");
    RunConfig c;
    CHECK_THROWS_AS(merge_config_file(c, path), ConfigError);
  }
  SUBCASE("unknown scheme") {
    spit(path, R"({"step": {"scheme": "leapfrog"}})");
    RunConfig c;
    CHECK_THROWS_AS(merge_config_file(c, path), ConfigError);
  }
  SUBCASE("malformed json") {
    spit(path, "{\"grid\": ");
    RunConfig c;
    CHECK_THROWS_AS(merge_config_file(c, path), ConfigError);
  }
  SUBCASE("missing file") {
    RunConfig c;
    CHECK_THROWS_AS(merge_config_file(c, tmp_path("gone.json")), ConfigError);
  }
  fs::remove(path);
}

TEST_CASE("the config summary is sorted, complete, and free of paths") {
  RunConfig rc;
  rc.N = 48;
  rc.seed = 1234;
  rc.v_recipe = "random";
  rc.out_dir = "/somewhere/volatile";
  rc.field_file = "input.olbx";

  const std::string s = config_summary(rc);
  CHECK(s == config_summary(rc));
  CHECK(s.rfind("{\"bands\"", 0) == 0); // keys are emitted sorted

  const nlohmann::json j = nlohmann::json::parse(s);
  CHECK(j.at("grid").at("N").get<int>() == 48);
  CHECK(j.at("seed").get<std::uint64_t>() == 1234);
  CHECK(j.at("prop31").at("v").get<std::string>() == "random");
  CHECK(j.at("step").at("scheme").get<std::string>() == "if_rk2");
  CHECK(!j.contains("out"));
  CHECK(!j.contains("norms"));
}
