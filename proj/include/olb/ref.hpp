#pragma once

#include "olb/field.hpp"

namespace olb {

// Serial reference implementations.  These are the plain single-threaded
// versions of the hot kernels (plus a naive DFT), kept as oracles for the
// OpenMP paths and as the baseline in bench_kernels.
namespace ref {

// direct O(modes^2) transforms, same normalization as fft::forward/backward
SpectralField dft_forward(const RealField& f);
RealField dft_backward(const SpectralField& f);

SpectralField apply_table(const SpectralField& f, const std::vector<Real>& w);
Real l2_norm(const SpectralField& f);
Real inner_l2(const SpectralField& f, const SpectralField& g);

// pointwise d x d matrix evaluation of tau*W - W*tau - alpha*(D*tau + tau*D)
// from sample values; oracle for the spectral assembly in the model
void g_alpha_point(int d, const Real* tau_packed, const Real* gradu_rowmajor,
                   Real alpha, Real* out_packed);

}  // namespace ref
}  // namespace olb
