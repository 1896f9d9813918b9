#pragma once

#include "olb/grid.hpp"

namespace olb {

enum class Rank { scalar, vector, sym, tensor };

int rank_comps(Rank r, int d);
const char* rank_name(Rank r);

// index of (i,j) in the packed symmetric component list, e.g. d=3:
// (00,01,02,11,12,22)
int sym_index(int i, int j, int d);

// multiplicity of each packed symmetric component in Frobenius sums
Real sym_weight(int c, int d);

// Complex Fourier coefficients of a real field on the box.  One contiguous
// array per component.  Hermitian symmetry c(-k) = conj(c(k)) is maintained
// by every operation in this library; to_real checks it.
struct SpectralField {
  Grid g;
  Rank rank = Rank::scalar;
  int nc = 0;
  std::vector<std::vector<Cmplx>> c;

  static SpectralField zero(const Grid& g, Rank r);

  Cmplx& at(int comp, long m) { return c[comp][m]; }
  const Cmplx& at(int comp, long m) const { return c[comp][m]; }
};

struct RealField {
  Grid g;
  Rank rank = Rank::scalar;
  int nc = 0;
  std::vector<std::vector<Real>> v;

  static RealField zero(const Grid& g, Rank r);
};

// forward: samples -> coefficients (normalized so a plane wave e^{i xi.x}
// has unit coefficient); backward: coefficients -> samples.
SpectralField to_spectral(const RealField& f);
RealField to_real(const SpectralField& f);

// field algebra
SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(Real s, const SpectralField& a);
void axpy(SpectralField& y, Real a, const SpectralField& x);  // y += a*x

// L2 norm over the box, sqrt(sum_comp w_c * vol * sum_k |c|^2); packed
// symmetric off-diagonals count twice.
Real l2_norm(const SpectralField& f);
// real L2 inner product, component-contracted with the same weights
Real inner_l2(const SpectralField& f, const SpectralField& g);
// max over grid points of the pointwise component norm
Real linf_norm(const SpectralField& f);
// largest |coefficient| over comps and modes
Real max_abs(const SpectralField& f);

Real mean_value(const SpectralField& f, int comp = 0);  // zero-mode coefficient (real part)

// one component as a standalone scalar field
SpectralField component_field(const SpectralField& f, int comp);

}  // namespace olb
