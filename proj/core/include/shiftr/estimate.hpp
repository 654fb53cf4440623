#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shiftr {

enum class Method {
  crosscorr,
  ratio,
  single_bin,
  compressive_argmax,
  compressive_ratio,
  brute_force,
};

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view name);

/// Diagnostic flags attached to estimates.
namespace flags {
inline constexpr std::string_view excluded_bins = "excluded_bins";
inline constexpr std::string_view modulus_misfit = "modulus_misfit";
inline constexpr std::string_view ambiguous = "ambiguous";
inline constexpr std::string_view no_recovery_guarantee = "no_recovery_guarantee";
inline constexpr std::string_view gain_unidentifiable = "gain_unidentifiable";
}  // namespace flags

/// Recovered cyclic delay s ∈ {0,…,n−1}: y ≈ x delayed by s.
struct ShiftEstimate {
  std::size_t shift = 0;
  /// Method-specific peak value (correlation peak, |ρ|, match distance).
  double score = 0.0;
  /// Per-shift scores; `shift` is their first argmax.
  std::optional<std::vector<double>> scores;
  Method method = Method::crosscorr;
  std::vector<std::string> flags;

  bool has_flag(std::string_view f) const;
  void add_flag(std::string_view f);
};

}  // namespace shiftr
