// fft.hpp — in-place radix-2 complex FFT (power-of-two lengths only).

#pragma once

#include <complex>
#include <vector>

namespace mblab {

// sign = -1: forward (e^{-2πi jk/n}); sign = +1: backward. Unnormalized.
void fft_inplace(std::vector<std::complex<double>>& a, int sign);

}  // namespace mblab
