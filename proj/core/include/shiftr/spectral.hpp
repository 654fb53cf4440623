#pragma once

// Unitary discrete Fourier transform. Row a of F holds
// (1/√n) e^{-2πj·a·b/n}; F^H F = I. Any n ≥ 1 is supported.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

#include "shiftr/types.hpp"

namespace shiftr {

ComplexVec dft(std::span<const double> x);
ComplexVec dft(std::span<const Complex> x);

/// Inverse of dft: conjugate kernel, same 1/√n scale.
ComplexVec idft(std::span<const Complex> X);

/// Column q (1-based, 1 ≤ q ≤ n) of F, i.e. dft(e_q).
ComplexVec fourier_column(std::size_t n, std::size_t q);

/// e^{-2πj·k/n}, with k reduced modulo n before the angle is formed.
Complex unit_root(std::size_t n, std::uint64_t k);

/// Single entry `bin` of dft(x) in O(n), without a full transform.
Complex dft_bin(std::span<const double> x, std::size_t bin);

/// Entry `bin` of dft(x) and dft(y), sharing one pass over the phasors.
std::pair<Complex, Complex> dft_bin_pair(std::span<const double> x,
                                         std::span<const double> y,
                                         std::size_t bin);

}  // namespace shiftr
