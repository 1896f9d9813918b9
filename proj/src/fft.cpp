#include "olb/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace olb {
namespace fft {

namespace {

struct PlanKey {
  int d, N, sign;
  bool operator<(const PlanKey& o) const {
    if (d != o.d) return d < o.d;
    if (N != o.N) return N < o.N;
    return sign < o.sign;
  }
};

std::map<PlanKey, fftw_plan>& plan_cache() {
  static std::map<PlanKey, fftw_plan> cache;
  return cache;
}

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan get_plan(const Grid& g, int sign) {
  PlanKey key{g.d, g.N, sign};
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto& cache = plan_cache();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  // plan on a scratch buffer; FFTW_UNALIGNED lets us execute on any array
  std::vector<fftw_complex> scratch(g.modes);
  int n[3] = {g.N, g.N, g.N};
  fftw_plan p = fftw_plan_dft(g.d, n, scratch.data(), scratch.data(), sign,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw Error("fftw plan creation failed");
  cache.emplace(key, p);
  return p;
}

}  // namespace

void forward(const Grid& g, Cmplx* data) {
  fftw_plan p = get_plan(g, FFTW_FORWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
  Real s = 1.0 / (Real)g.modes;
  long n = g.modes;
#pragma omp parallel for schedule(static)
  for (long m = 0; m < n; ++m) data[m] *= s;
}

void backward(const Grid& g, Cmplx* data) {
  fftw_plan p = get_plan(g, FFTW_BACKWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

}  // namespace fft
}  // namespace olb
