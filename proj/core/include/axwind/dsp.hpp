/**
 * @file dsp.hpp
 * @brief FFT (FFTW3 backed) and window functions shared by the spectral code.
 */
#pragma once

#include <complex>
#include <span>
#include <vector>

namespace axwind::dsp {

enum class Window { Rectangular, Hann };

std::vector<double> window(Window kind, std::size_t n);

/// Forward DFT X_k = sum_n x_n exp(-2 pi i k n / N), unnormalized.
std::vector<std::complex<double>> fft(std::span<const std::complex<double>> x);
std::vector<std::complex<double>> ifft(std::span<const std::complex<double>> x);  ///< includes 1/N
/// Real-input DFT, bins 0..N/2.
std::vector<std::complex<double>> rfft(std::span<const double> x);

/// Analytic signal x + i H[x] via the FFT (periodic extension).
std::vector<std::complex<double>> analytic_signal(std::span<const double> x);

}  // namespace axwind::dsp
