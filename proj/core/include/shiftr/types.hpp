#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftr {

using Complex = std::complex<double>;

/// Real-valued samples in the time domain.
using Signal = std::vector<double>;

/// Complex workspace; spectra are always under the unitary DFT convention.
using ComplexVec = std::vector<Complex>;

/// Mismatched lengths, out-of-range indices, malformed shapes.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The data do not determine the shift (no usable bin, ambiguous sensing).
class IdentifiabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace shiftr
