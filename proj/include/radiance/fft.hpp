#pragma once

#include <complex>
#include <vector>

namespace radiance {

/// Forward DFT: X[k] = sum_n x[n] exp(-2 pi i k n / N), via FFTW.
/// Deterministic (FFTW_ESTIMATE planning) and thread-safe through an
/// internal planner lock.
std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& x);

/// In-place variant writing into `out` (resized to x.size()).
void fft_forward(const std::vector<std::complex<double>>& x,
                 std::vector<std::complex<double>>& out);

/// Inverse DFT without normalization: x[n] = sum_k X[k] exp(+2 pi i k n / N).
std::vector<std::complex<double>> fft_inverse(const std::vector<std::complex<double>>& x);

}  // namespace radiance
