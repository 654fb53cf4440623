#include "shiftr/cli/signal_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace shiftr::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::size_t line) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("line " + std::to_string(line) + ": cannot parse number '" +
                     std::string(text) + "'");
  }
  if (!std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line) + ": non-finite value");
  }
  return v;
}

std::size_t parse_size(std::string_view text) {
  text = trim(text);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("cannot parse index '" + std::string(text) + "'");
  }
  return v;
}

struct RawFile {
  std::optional<std::size_t> n;
  std::optional<std::vector<std::size_t>> K;
  std::vector<std::string> rows;
  std::vector<std::size_t> row_lines;
};

RawFile parse_raw(std::istream& in) {
  RawFile raw;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const std::string_view body = trim(t.substr(1));
      if (body.starts_with("n=")) {
        raw.n = parse_size(body.substr(2));
      } else if (body.starts_with("K=")) {
        raw.K = parse_index_list(body.substr(2));
      }
      continue;
    }
    raw.rows.emplace_back(t);
    raw.row_lines.push_back(number);
  }
  if (raw.rows.empty()) throw ParseError("file contains no values");
  if (raw.n && *raw.n != raw.rows.size() && !raw.K) {
    throw ParseError("header says n=" + std::to_string(*raw.n) + " but file has " +
                     std::to_string(raw.rows.size()) + " values");
  }
  return raw;
}

Complex parse_complex(std::string_view row, std::size_t line) {
  const auto comma = row.find(',');
  if (comma == std::string_view::npos) return {parse_double(row, line), 0.0};
  return {parse_double(row.substr(0, comma), line),
          parse_double(row.substr(comma + 1), line)};
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<std::size_t> parse_index_list(std::string_view text) {
  std::vector<std::size_t> out;
  text = trim(text);
  if (text.empty()) throw ParseError("empty index list");
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_size(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_index_list(const std::vector<std::size_t>& indices) {
  std::string out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(indices[i]);
  }
  return out;
}

Signal parse_signal(std::istream& in) {
  const RawFile raw = parse_raw(in);
  if (raw.K) throw ParseError("expected a real signal, found a measurement");
  Signal x;
  x.reserve(raw.rows.size());
  for (std::size_t i = 0; i < raw.rows.size(); ++i) {
    if (raw.rows[i].find(',') != std::string::npos) {
      throw ParseError("line " + std::to_string(raw.row_lines[i]) +
                       ": expected a real value");
    }
    x.push_back(parse_double(raw.rows[i], raw.row_lines[i]));
  }
  return x;
}

Signal read_signal(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_signal(in);
}

void write_signal(std::ostream& out, const Signal& x) {
  out << "# n=" << x.size() << '\n';
  for (double v : x) out << format_double(v) << '\n';
}

void write_signal(const std::filesystem::path& path, const Signal& x) {
  auto out = open_output(path);
  write_signal(out, x);
}

Measurement parse_measurement(std::istream& in) {
  const RawFile raw = parse_raw(in);
  if (!raw.K) throw ParseError("measurement file lacks a '# K=' header");
  if (!raw.n) throw ParseError("measurement file lacks a '# n=' header");
  ComplexVec values;
  values.reserve(raw.rows.size());
  for (std::size_t i = 0; i < raw.rows.size(); ++i) {
    values.push_back(parse_complex(raw.rows[i], raw.row_lines[i]));
  }
  try {
    return Measurement(std::move(values), SensingSet(*raw.n, *raw.K));
  } catch (const DimensionError& e) {
    throw ParseError(e.what());
  }
}

Measurement read_measurement(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_measurement(in);
}

void write_measurement(std::ostream& out, const Measurement& m) {
  out << "# n=" << m.sensing().n() << '\n';
  out << "# K=" << format_index_list(m.sensing().indices()) << '\n';
  for (const Complex& v : m.values()) {
    out << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
  }
}

void write_measurement(const std::filesystem::path& path, const Measurement& m) {
  auto out = open_output(path);
  write_measurement(out, m);
}

bool is_measurement_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view t = trim(line);
    if (t.empty()) continue;
    if (t.front() != '#') return false;
    if (trim(t.substr(1)).starts_with("K=")) return true;
  }
  return false;
}

}  // namespace shiftr::cli
