#pragma once

#include <complex>
#include <span>

namespace nlsfilt::fft {

// In-place unnormalized multidimensional DFTs of an n^dim array (row-major).
// forward: X_k = sum_j x_j exp(-2*pi*i*<j,k>/n); backward uses the + sign.
//
// Plans are cached process-wide and created with FFTW_ESTIMATE, so results
// do not depend on timing or on the thread that calls them.
void forward(std::span<std::complex<double>> data, int dim, int n);
void backward(std::span<std::complex<double>> data, int dim, int n);

}  // namespace nlsfilt::fft
