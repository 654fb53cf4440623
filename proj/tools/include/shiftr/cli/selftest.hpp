#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "shiftr/types.hpp"

namespace shiftr::cli {

using Transform = std::function<ComplexVec(std::span<const Complex>)>;

struct SelftestOptions {
  /// Forward transform under test in the spectral group; defaults to dft.
  Transform forward;
  /// Negative control: swap in a DFT with the exponent sign flipped.
  bool corrupt_dft_sign = false;
  std::uint64_t seed = 2024;
};

struct GroupResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool passed() const { return failures == 0; }
};

/// Oracle-equivalence and identity checks at n ≤ 16.
std::vector<GroupResult> run_selftest(const SelftestOptions& options = {});

/// Prints one line per group; returns 0 iff every group passed.
int report_selftest(const std::vector<GroupResult>& groups, std::ostream& out);

}  // namespace shiftr::cli
