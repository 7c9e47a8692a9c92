#pragma once

#include <complex>
#include <span>
#include <vector>

namespace dcyc {

/// Unnormalised forward DFT of real data, X_k = Σ x_j e^{-2πijk/M}, k = 0..M/2.
std::vector<std::complex<double>> real_dft(std::span<const double> x);

/// Unnormalised complex DFT; sign = -1 forward, +1 backward.
std::vector<std::complex<double>> complex_dft(std::span<const std::complex<double>> x, int sign);

}  // namespace dcyc
