#pragma once

// Subcommand implementations behind the `shiftr` executable. Each returns
// the process exit code: 0 success, 1 usage/parse error, 2 the data do not
// identify the shift.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "shiftr/cli/bench.hpp"
#include "shiftr/cli/selftest.hpp"
#include "shiftr/types.hpp"

namespace shiftr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitUnidentifiable = 2;

struct GenOptions {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string kind = "gaussian";  // gaussian | uniform | impulse-train
  std::optional<std::size_t> period;  // impulse-train; default max(1, n/2)
  std::size_t delay = 0;
  /// Write measure(signal, K) instead of the signal.
  std::optional<std::vector<std::size_t>> sensing;
  std::filesystem::path out;
};

/// Deterministic per (seed, kind, n): gaussian N(0,1), uniform U[−1,1),
/// impulse-train ones every `period` samples starting at 0.
Signal generate_signal(const GenOptions& options);

int cmd_gen(const GenOptions& options, std::ostream& err);

struct RetrieveOptions {
  std::filesystem::path x_path;
  std::filesystem::path y_path;
  std::string method = "crosscorr";
  std::optional<std::size_t> bin;
  std::optional<std::vector<std::size_t>> sensing;
  bool column_scan = false;
};

/// Prints {method, n, shift, score, flags, elapsed_microseconds} as JSON.
int cmd_retrieve(const RetrieveOptions& options, std::ostream& out,
                 std::ostream& err);

int cmd_bench(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Prints the sensing report as JSON; exit 2 when measurement columns
/// collide.
int cmd_check_sensing(const std::filesystem::path& x_path,
                      const std::vector<std::size_t>& sensing, std::ostream& out,
                      std::ostream& err);

int cmd_selftest(const SelftestOptions& options, std::ostream& out);

}  // namespace shiftr::cli
