#pragma once

// Text file formats. Signals: one value per line, optional `# n=<n>`
// header. Complex vectors: `re,im` per line. Measurements additionally
// carry `# K=<comma-separated>` and require `# n=<n>`.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shiftr/compressive.hpp"
#include "shiftr/types.hpp"

namespace shiftr::cli {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal representation.
std::string format_double(double v);

std::vector<std::size_t> parse_index_list(std::string_view text);
std::string format_index_list(const std::vector<std::size_t>& indices);

Signal parse_signal(std::istream& in);
Signal read_signal(const std::filesystem::path& path);
void write_signal(std::ostream& out, const Signal& x);
void write_signal(const std::filesystem::path& path, const Signal& x);

Measurement parse_measurement(std::istream& in);
Measurement read_measurement(const std::filesystem::path& path);
void write_measurement(std::ostream& out, const Measurement& m);
void write_measurement(const std::filesystem::path& path, const Measurement& m);

/// True when the file carries a `# K=` header.
bool is_measurement_file(const std::filesystem::path& path);

}  // namespace shiftr::cli
