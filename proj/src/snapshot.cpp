#include "olb/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

namespace olb {

namespace {

constexpr char kMagic[8] = {'O', 'L', 'B', 'X', 'F', 'L', 'D', '1'};

struct Reader {
  std::ifstream in;
  long long off = 0;

  explicit Reader(const std::string& path) : in(path, std::ios::binary) {
    if (!in) throw ParseError("cannot open " + path, 0);
  }
  void bytes(void* p, size_t n, const char* what) {
    in.read(reinterpret_cast<char*>(p), (std::streamsize)n);
    if ((size_t)in.gcount() != n)
      throw ParseError(std::string("truncated while reading ") + what, off + in.gcount());
    off += (long long)n;
  }
  std::uint32_t u32(const char* what) {
    std::uint32_t v;
    bytes(&v, 4, what);
    return v;
  }
  double f64(const char* what) {
    double v;
    bytes(&v, 8, what);
    return v;
  }
};

struct Writer {
  std::ofstream out;

  explicit Writer(const std::string& path) : out(path, std::ios::binary) {
    if (!out) throw Error("cannot write " + path);
  }
  void bytes(const void* p, size_t n) { out.write(reinterpret_cast<const char*>(p), (std::streamsize)n); }
  void u32(std::uint32_t v) { bytes(&v, 4); }
  void f64(double v) { bytes(&v, 8); }
};

} // namespace

void write_snapshot(const std::string& path, const Grid& g,
                    const std::vector<NamedField>& fields) {
  Writer w(path);
  w.bytes(kMagic, 8);
  w.u32((std::uint32_t)g.d);
  w.u32((std::uint32_t)g.N);
  w.f64(g.L);
  w.u32((std::uint32_t)fields.size());
  for (const NamedField& nf : fields) {
    if (!nf.f.g.same(g)) throw Error("snapshot: field grid mismatch");
    w.u32((std::uint32_t)nf.name.size());
    w.bytes(nf.name.data(), nf.name.size());
    w.u32((std::uint32_t)nf.f.rank);
    w.u32((std::uint32_t)nf.f.nc);
    for (int c = 0; c < nf.f.nc; ++c)
      w.bytes(nf.f.c[c].data(), sizeof(Cmplx) * (size_t)g.modes);
  }
  w.out.flush();
  if (!w.out) throw Error("snapshot: write failed for " + path);
}

std::vector<NamedField> read_snapshot(const std::string& path, Grid* g_out) {
  Reader r(path);
  char magic[8];
  r.bytes(magic, 8, "magic");
  if (std::memcmp(magic, kMagic, 8) != 0)
    throw ParseError("bad magic, not a field container", 0);

  const long long header_off = r.off;
  const int d = (int)r.u32("d");
  if (d < 2 || d > 3) throw ParseError("dimension must be 2 or 3", header_off);
  const long long n_off = r.off;
  const int N = (int)r.u32("N");
  if (N < 16 || N % 2 != 0 || N > 4096)
    throw ParseError("N must be even and in [16, 4096]", n_off);
  const long long l_off = r.off;
  const Real L = r.f64("L");
  if (!(L > 0) || !std::isfinite(L)) throw ParseError("L must be positive", l_off);
  const Grid g = Grid::make(d, N, L);
  if (g_out) *g_out = g;

  const long long count_off = r.off;
  const std::uint32_t nf = r.u32("field count");
  if (nf > 64) throw ParseError("unreasonable field count", count_off);

  std::vector<NamedField> out;
  for (std::uint32_t i = 0; i < nf; ++i) {
    const long long name_off = r.off;
    const std::uint32_t nl = r.u32("name length");
    if (nl == 0 || nl > 256) throw ParseError("unreasonable field name length", name_off);
    std::string name(nl, '\0');
    r.bytes(name.data(), nl, "name");
    const long long rank_off = r.off;
    const std::uint32_t rk = r.u32("rank");
    if (rk > 3) throw ParseError("unknown rank tag", rank_off);
    const Rank rank = (Rank)rk;
    const long long nc_off = r.off;
    const std::uint32_t nc = r.u32("component count");
    if ((int)nc != rank_comps(rank, d))
      throw ParseError("component count disagrees with rank", nc_off);
    NamedField nfld{std::move(name), SpectralField::zero(g, rank)};
    for (std::uint32_t c = 0; c < nc; ++c)
      r.bytes(nfld.f.c[c].data(), sizeof(Cmplx) * (size_t)g.modes, "coefficients");
    out.push_back(std::move(nfld));
  }
  return out;
}

void write_state_snapshot(const std::string& path, const State& s) {
  write_snapshot(path, s.grid(), {{"a", s.a}, {"u", s.u}, {"tau", s.tau}});
}

State read_state_snapshot(const std::string& path) {
  Grid g;
  std::vector<NamedField> fields = read_snapshot(path, &g);
  State s = State::zero(g);
  int seen = 0;
  for (NamedField& nf : fields) {
    if (nf.name == "a" && nf.f.rank == Rank::scalar) {
      s.a = std::move(nf.f);
      seen |= 1;
    } else if (nf.name == "u" && nf.f.rank == Rank::vector) {
      s.u = std::move(nf.f);
      seen |= 2;
    } else if (nf.name == "tau" && nf.f.rank == Rank::sym) {
      s.tau = std::move(nf.f);
      seen |= 4;
    }
  }
  if (seen != 7) throw ParseError("container does not hold fields a, u, tau", 8);
  return s;
}

} // namespace olb
