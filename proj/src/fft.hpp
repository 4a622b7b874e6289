#pragma once

#include <complex>
#include <span>

namespace gaborheat::detail {

// Unnormalized in-place DFT over a d-dimensional cube of side n.
// sign = -1 computes sum_j e^{-2 pi i j k / n} x_j; sign = +1 the conjugate sum.
void fft_inplace(std::span<std::complex<double>> data, int dim, int n, int sign);

}  // namespace gaborheat::detail
