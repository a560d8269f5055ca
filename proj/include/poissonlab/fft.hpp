#pragma once

// Thin wrapper over FFTW for complex transforms of arbitrary length.

#include <vector>

#include "poissonlab/kernelmath.hpp"

namespace poissonlab {

/// out[k] = sum_j in[j] exp(-2 pi i j k / n)
std::vector<cplx> fft_forward(const std::vector<cplx>& in);

/// out[k] = sum_j in[j] exp(+2 pi i j k / n)   (unnormalised)
std::vector<cplx> fft_backward(const std::vector<cplx>& in);

}  // namespace poissonlab
