#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "shiftr/types.hpp"

namespace shiftr {

/// Relative factor for "x̃_i ≠ 0" decisions.
inline constexpr double kZeroRelTol = 1e-12;

/// 1e-12 · max_i |a_i|; entries at or below it are treated as zero.
double zero_threshold(std::span<const Complex> a);

/// Index of the first maximum; smallest index wins ties.
std::size_t argmax_first(std::span<const double> a);

/// Index of the first minimum; smallest index wins ties.
std::size_t argmin_first(std::span<const double> a);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

/// Inverse of a modulo n. Throws DimensionError when gcd(a, n) != 1.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t n);

/// (a · b) mod n without overflow.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n);

double norm2(std::span<const double> a);
double norm2(std::span<const Complex> a);
double norm_inf(std::span<const Complex> a);

}  // namespace shiftr
