#pragma once

#include "olb/frame.hpp"

namespace olb {

// Bony decomposition operators.  All pointwise products are formed on the
// grid and dealiased, so for mean-free band-limited inputs
//   paraproduct(f,g) + paraproduct(g,f) + remainder(f,g) = dealias(f*g)
// up to roundoff.  f is scalar; g may have any rank (acts component-wise).
SpectralField paraproduct(const DyadicFrame& fr, const SpectralField& f,
                          const SpectralField& g);
SpectralField remainder(const DyadicFrame& fr, const SpectralField& f,
                        const SpectralField& g);

// sum_j T_{v_j} (d_j w): the paraproduct transport operator of the
// linearized system; v vector, w any rank.
SpectralField para_transport(const DyadicFrame& fr, const SpectralField& v,
                             const SpectralField& w);

// [Lambda^{-1}, S_{q-1}v . grad] Delta_q u, component-wise over u
SpectralField commutator_lambda_inv(const DyadicFrame& fr, const SpectralField& v,
                                    const SpectralField& u, int q);

}  // namespace olb
