#include "shiftr/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <utility>

namespace shiftr {

double zero_threshold(std::span<const Complex> a) {
  return kZeroRelTol * norm_inf(a);
}

std::size_t argmax_first(std::span<const double> a) {
  if (a.empty()) throw DimensionError("argmax of an empty sequence");
  std::size_t best = 0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (a[i] > a[best]) best = i;
  }
  return best;
}

std::size_t argmin_first(std::span<const double> a) {
  if (a.empty()) throw DimensionError("argmin of an empty sequence");
  std::size_t best = 0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (a[i] < a[best]) best = i;
  }
  return best;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  __extension__ using u128 = unsigned __int128;
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % n);
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t n) {
  if (n == 0) throw DimensionError("mod_inverse: modulus must be positive");
  if (n > static_cast<std::uint64_t>(INT64_MAX)) {
    throw DimensionError("mod_inverse: modulus too large");
  }
  if (n == 1) return 0;
  std::int64_t r0 = static_cast<std::int64_t>(n);
  std::int64_t r1 = static_cast<std::int64_t>(a % n);
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (r0 != 1) {
    throw DimensionError("mod_inverse: " + std::to_string(a) +
                         " is not invertible modulo " + std::to_string(n));
  }
  if (t0 < 0) t0 += static_cast<std::int64_t>(n);
  return static_cast<std::uint64_t>(t0);
}

double norm2(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

double norm2(std::span<const Complex> a) {
  double s = 0.0;
  for (const Complex& v : a) s += std::norm(v);
  return std::sqrt(s);
}

double norm_inf(std::span<const Complex> a) {
  double m = 0.0;
  for (const Complex& v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace shiftr
