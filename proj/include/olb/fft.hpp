#pragma once

#include "olb/grid.hpp"

namespace olb {

// In-place complex-to-complex transforms on one component buffer.
// Plans are cached per (d, N, direction) and created with FFTW_ESTIMATE so
// repeated runs are bit-reproducible.
namespace fft {

// samples -> coefficients, scales by 1/N^d
void forward(const Grid& g, Cmplx* data);
// coefficients -> samples, unscaled sum
void backward(const Grid& g, Cmplx* data);

}  // namespace fft
}  // namespace olb
