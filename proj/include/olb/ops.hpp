#pragma once

#include "olb/field.hpp"

namespace olb {

// Multiply every coefficient by a precomputed per-mode real weight.
SpectralField apply_table(const SpectralField& f, const std::vector<Real>& w);

// Zero all coefficients with any |k_i| > N/3 (2/3-rule dealiasing).
SpectralField dealias(const SpectralField& f);
void dealias_inplace(SpectralField& f);

// d_i of every component: scalar -> vector; for higher ranks use the
// component-wise helpers below.
SpectralField gradient(const SpectralField& f);            // scalar -> vector
SpectralField jacobian(const SpectralField& u);            // vector -> tensor, (i,j) = d_j u_i
SpectralField divergence(const SpectralField& u);          // vector -> scalar
SpectralField div_sym(const SpectralField& tau);           // sym -> vector, (div tau)_k = d_j tau_jk
SpectralField laplacian(const SpectralField& f);           // any rank
SpectralField partial(const SpectralField& f, int axis);   // any rank, component-wise d_axis

// |xi|^sigma with the zero mode mapped to zero; sigma < 0 requires a
// mean-free field and throws otherwise.
SpectralField lambda_power(const SpectralField& f, Real sigma);

// Leray decomposition of vector fields: leray_P keeps the divergence-free
// part (and the zero mode), leray_Pperp the curl-free rest.
SpectralField leray_P(const SpectralField& u);
SpectralField leray_Pperp(const SpectralField& u);

// (1-omega)(Delta + grad div) u
SpectralField a_op(const SpectralField& u, Real omega);

SpectralField deformation(const SpectralField& u);  // vector -> sym, (d_j u_i + d_i u_j)/2
SpectralField vorticity(const SpectralField& u);    // vector -> tensor, (d_j u_i - d_i u_j)/2

void strip_mean(SpectralField& f);

// raw per-component transforms for real-space product pipelines; no
// Hermitian check (use to_real for validated conversions)
std::vector<Real> real_samples(const Grid& g, const std::vector<Cmplx>& c);
std::vector<Cmplx> spectrum_of(const Grid& g, const std::vector<Real>& v);

// embed coefficients into a finer grid with the same box size L
SpectralField embed(const SpectralField& f, const Grid& fine);

}  // namespace olb
