#pragma once

// Monte-Carlo success-rate harness. Each trial draws a fresh Gaussian x,
// a planted shift s uniform on {0,…,n−1}, and white Gaussian noise on
// y = P^s x at the requested SNR = ‖y‖²/(n·σ²). A trial succeeds when the
// estimate equals s exactly.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "shiftr/estimate.hpp"

namespace shiftr::cli {

enum class OutputFormat { csv, json };

struct ExperimentConfig {
  std::size_t n = 64;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  /// dB; +infinity means noiseless.
  std::vector<double> snr_db_grid{std::numeric_limits<double>::infinity()};
  std::vector<Method> methods{Method::crosscorr, Method::ratio,
                              Method::single_bin};
  std::optional<std::vector<std::size_t>> sensing;
  std::filesystem::path output;
  OutputFormat format = OutputFormat::csv;
  /// Record wall-clock time per trial; when false the column is 0 and
  /// output bytes depend only on the seed.
  bool timing = true;
  /// 0 selects std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

/// Throws ParseError on unknown keys, bad values or (when `check` is set)
/// failed validation.
ExperimentConfig parse_config(const std::string& text, bool check = true);

/// Sets one key as it would appear in a key=value config.
void apply_setting(ExperimentConfig& config, const std::string& key,
                   const std::string& value);
ExperimentConfig load_config(const std::filesystem::path& path);
void validate(const ExperimentConfig& config);

std::vector<double> parse_snr_list(const std::string& text);
std::vector<Method> parse_method_list(const std::string& text);

struct BenchRow {
  double snr_db;
  Method method;
  std::size_t n;
  std::size_t m;
  std::size_t trials;
  double success_rate;
  double mean_elapsed_us;
};

std::vector<BenchRow> run_bench(const ExperimentConfig& config);

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);
void write_json(std::ostream& out, const std::vector<BenchRow>& rows);

/// Independent stream index for trial `trial` of SNR cell `snr_index`.
std::uint64_t trial_stream(std::size_t snr_index, std::size_t trial);

}  // namespace shiftr::cli
