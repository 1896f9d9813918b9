#include "olb/grid.hpp"

namespace olb {

Grid Grid::make(int d, int N, Real L) {
  if (d != 2 && d != 3) throw ConfigError("grid: d must be 2 or 3");
  if (N < 16 || N % 2 != 0) throw ConfigError("grid: N must be even and >= 16");
  if (L < 1.0) throw ConfigError("grid: L must be >= 1");
  Grid g;
  g.d = d;
  g.N = N;
  g.L = L;
  g.modes = 1;
  for (int a = 0; a < d; ++a) g.modes *= N;
  g.kalias = N / 3;
  g.vol = std::pow(2.0 * M_PI * L, d);
  g.dx = 2.0 * M_PI * L / N;
  return g;
}

}  // namespace olb
