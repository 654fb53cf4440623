#pragma once

// Compressive shift retrieval from partial-Fourier measurements. The
// sensing matrix A is the row subset K of the unitary Fourier matrix; it
// is never materialized outside argmax_identity_check.

#include <cstddef>
#include <span>
#include <vector>

#include "shiftr/estimate.hpp"
#include "shiftr/types.hpp"

namespace shiftr {

/// Strictly increasing frequency indices k_1 < … < k_m in {0,…,n−1}.
class SensingSet {
 public:
  /// Indices may be given in any order; duplicates and out-of-range
  /// values throw DimensionError.
  SensingSet(std::size_t n, std::vector<std::size_t> indices);

  static SensingSet full(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

  friend bool operator==(const SensingSet&, const SensingSet&) = default;

 private:
  std::size_t n_;
  std::vector<std::size_t> indices_;
};

/// Compressed measurement: values[i] is bin K[i] of the unitary DFT.
class Measurement {
 public:
  Measurement(ComplexVec values, SensingSet sensing);

  const ComplexVec& values() const noexcept { return values_; }
  const SensingSet& sensing() const noexcept { return sensing_; }

 private:
  ComplexVec values_;
  SensingSet sensing_;
};

Measurement measure(std::span<const double> x, const SensingSet& K);

/// (a)_K: length-n vector holding a at positions K and zeros elsewhere.
ComplexVec embed(std::span<const Complex> a, const SensingSet& K);

struct SensingReport {
  /// Retained k_p with |x̃_{k_p}| above the zero threshold and gcd(k_p, n) = 1.
  std::vector<std::size_t> qualifying_bins;
  bool recovery_guaranteed = false;
  /// αAA^H = I; always α = 1 for rows of a unitary F.
  double alpha = 1.0;
  bool alpha_condition = true;
  /// All n columns measure(P^s x, K) pairwise distinct.
  bool columns_distinct = true;
  /// Lags d ∈ {1,…,n−1} with column s and s+d indistinguishable for all s.
  std::vector<std::size_t> ambiguous_lags;
};

SensingReport check_sensing_conditions(std::span<const double> x,
                                       const SensingSet& K);

/// Same report computed from v = measure(x, K) alone. Column s of the
/// shifted measurements is v ⊙ e^{-2πj·k·s/n}, so duplicates depend only
/// on the lag between two shifts.
SensingReport check_measurement_conditions(const Measurement& v);

/// argmax_s Re{Σ_i conj(z_i) v_i e^{-2πj·k_i·s/n}}.
ShiftEstimate shift_by_compressive_argmax(const Measurement& z,
                                          const Measurement& v);

/// Matches ρ = z ⊘ v against the unit-modulus rows K of √n·F e_{s+1}.
/// scores[s] = (1/n) Re Σ ρ_i e^{+2πj·k_i·s/n}; score = ‖ρ − ω_s‖₂ at the
/// best s. Bins with |v_i| at the zero threshold are dropped.
ShiftEstimate shift_by_compressive_ratio(const Measurement& z,
                                         const Measurement& v);

struct IdentityCheck {
  double lhs;
  double rhs;
};

inline constexpr std::size_t kIdentityCheckMaxN = 64;

/// lhs = Re{z^H (A P^s A^H) v} with A and P^s materialized;
/// rhs = Re{(r)_K^T · √n f_{s+1}} with (r)_K = conj(z) ⊙ v.
IdentityCheck argmax_identity_check(const Measurement& z, const Measurement& v,
                                    std::size_t s);

}  // namespace shiftr
