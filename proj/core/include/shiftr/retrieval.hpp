#pragma once

// Full-signal shift retrieval. Every estimator answers the same question:
// for which s ∈ {0,…,n−1} is y (approximately) x delayed cyclically by s?

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shiftr/estimate.hpp"
#include "shiftr/types.hpp"

namespace shiftr {

/// Classic estimator. scores[s] = (P^s x)^T y, computed as
/// √n · idft(conj(x̃) ⊙ ỹ); the peak at the true shift equals ‖x‖₂².
ShiftEstimate shift_by_crosscorr(std::span<const double> x,
                                 std::span<const double> y);

/// ρ_i = ỹ_i / x̃_i on bins with |x̃_i| above the zero threshold, 0 elsewhere.
/// `excluded`, when given, receives the number of zeroed bins.
ComplexVec ratio_spectrum(std::span<const Complex> xspec,
                          std::span<const Complex> yspec,
                          std::size_t* excluded = nullptr);

/// Ratio estimator. scores = d = Re idft(ρ)/√n, which is exactly e_{s+1}
/// for an exact shift with no excluded bins. Throws IdentifiabilityError
/// when every bin of x̃ vanishes.
ShiftEstimate shift_by_ratio(std::span<const double> x,
                             std::span<const double> y);

/// Largest-magnitude bin i with gcd(i, n) = 1 and |x̃_i| above the zero
/// threshold. Such a bin alone determines every shift. Throws
/// IdentifiabilityError when none exists.
std::size_t select_bin(std::span<const Complex> xspec);

bool is_disambiguating_bin(std::size_t bin, std::size_t n);

struct SingleBinOptions {
  /// Bin to use; chosen by select_bin(dft(x)) when absent.
  std::optional<std::size_t> bin;
  /// |ρ| further than this from 1 raises flags::modulus_misfit.
  double modulus_tolerance = 1e-6;
  /// Match ρ against row `bin` of √n·F by linear scan instead of
  /// inverting the phase modulo n. Same answer; kept for debugging.
  bool column_scan = false;
};

/// Shift from one frequency ratio ρ = ỹ_i/x̃_i = e^{-2πj·i·s/n}. With an
/// explicit bin only the two needed DFT entries are evaluated (O(n)).
ShiftEstimate shift_single_bin(std::span<const double> x,
                               std::span<const double> y,
                               const SingleBinOptions& options = {});

/// y ≈ alpha · (x delayed by shift) + beta · 1.
struct AffineShiftModel {
  std::size_t shift = 0;
  double alpha = 0.0;
  double beta = 0.0;
};

struct AffineFit {
  AffineShiftModel model;
  /// ‖y − α·P^s x − β·1‖₂.
  double residual = 0.0;
  std::vector<std::string> flags;
};

/// Gain/offset-tolerant ratio estimator. The inverse ratio spectrum is
/// α·e_{s+1} + (β/Σx)·1, so the peak is located relative to the mean.
AffineFit shift_affine(std::span<const double> x, std::span<const double> y);

}  // namespace shiftr
