#include "shiftr/cli/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "shiftr/circulant.hpp"
#include "shiftr/cli/rng.hpp"
#include "shiftr/cli/signal_io.hpp"
#include "shiftr/compressive.hpp"
#include "shiftr/oracle.hpp"
#include "shiftr/retrieval.hpp"

namespace shiftr::cli {
namespace {

using json = nlohmann::json;

std::string trim_copy(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim_copy(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_snr(const std::string& text) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad SNR value '" + text + "' (use a number or 'inf')");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  try {
    std::size_t pos = 0;
    if (!text.empty() && text.front() == '-') throw std::invalid_argument(text);
    const auto v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad value for '" + key + "': '" + text + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ParseError("bad boolean for '" + key + "': '" + text + "'");
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ParseError("unknown format '" + text + "' (csv or json)");
}

}  // namespace

void apply_setting(ExperimentConfig& c, const std::string& key,
                   const std::string& value) {
  if (key == "n") {
    c.n = parse_u64(key, value);
  } else if (key == "trials") {
    c.trials = parse_u64(key, value);
  } else if (key == "seed") {
    c.seed = parse_u64(key, value);
  } else if (key == "snr_db" || key == "snr_db_grid") {
    c.snr_db_grid = parse_snr_list(value);
  } else if (key == "methods" || key == "method") {
    c.methods = parse_method_list(value);
  } else if (key == "sensing") {
    try {
      c.sensing = parse_index_list(value);
    } catch (const ParseError& e) {
      throw ParseError(std::string("sensing: ") + e.what());
    }
  } else if (key == "output" || key == "out") {
    c.output = value;
  } else if (key == "format") {
    c.format = parse_format(value);
  } else if (key == "timing") {
    c.timing = parse_bool(key, value);
  } else if (key == "threads") {
    c.threads = parse_u64(key, value);
  } else {
    throw ParseError("unknown config key '" + key + "'");
  }
}

namespace {

// JSON values are flattened to the same textual form as key=value files.
std::string json_to_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) out += ',';
      out += json_to_text(v[i]);
    }
    return out;
  }
  throw ParseError("unsupported JSON value " + v.dump());
}

bool is_compressive(Method m) {
  return m == Method::compressive_argmax || m == Method::compressive_ratio;
}

struct TrialOutcome {
  bool success = false;
  double elapsed_us = 0.0;
};

ShiftEstimate run_method(Method m, const Signal& x, const Signal& y,
                         const std::optional<SensingSet>& K) {
  switch (m) {
    case Method::crosscorr: return shift_by_crosscorr(x, y);
    case Method::ratio: return shift_by_ratio(x, y);
    case Method::single_bin: return shift_single_bin(x, y);
    case Method::compressive_argmax:
      return shift_by_compressive_argmax(measure(y, *K), measure(x, *K));
    case Method::compressive_ratio:
      return shift_by_compressive_ratio(measure(y, *K), measure(x, *K));
    case Method::brute_force: return oracle::brute_force_shift(x, y);
  }
  throw std::logic_error("bench: method not supported");
}

}  // namespace

std::vector<double> parse_snr_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_snr(item));
  if (out.empty()) throw ParseError("empty SNR list");
  return out;
}

std::vector<Method> parse_method_list(const std::string& text) {
  std::vector<Method> out;
  for (const auto& item : split(text, ',')) {
    const auto m = parse_method(item);
    if (!m || *m == Method::brute_force) {
      throw ParseError("unknown method '" + item + "'");
    }
    out.push_back(*m);
  }
  if (out.empty()) throw ParseError("empty method list");
  return out;
}

ExperimentConfig parse_config(const std::string& text, bool check) {
  ExperimentConfig c;
  const std::string body = trim_copy(text);
  if (!body.empty() && body.front() == '{') {
    json j;
    try {
      j = json::parse(body);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("config JSON: ") + e.what());
    }
    for (const auto& [key, value] : j.items()) apply_setting(c, key, json_to_text(value));
  } else {
    std::stringstream ss(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(ss, line)) {
      ++number;
      const std::string t = trim_copy(line.substr(0, line.find('#')));
      if (t.empty()) continue;
      const auto eq = t.find('=');
      if (eq == std::string::npos) {
        throw ParseError("config line " + std::to_string(number) +
                         ": expected key=value");
      }
      apply_setting(c, trim_copy(t.substr(0, eq)), trim_copy(t.substr(eq + 1)));
    }
  }
  if (check) validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const ExperimentConfig& c) {
  if (c.n < 2) throw ParseError("config: n must be >= 2");
  if (c.trials < 1) throw ParseError("config: trials must be >= 1");
  if (c.methods.empty()) throw ParseError("config: no methods selected");
  if (c.snr_db_grid.empty()) throw ParseError("config: empty SNR grid");
  const bool needs_sensing =
      std::any_of(c.methods.begin(), c.methods.end(), is_compressive);
  if (needs_sensing) {
    if (!c.sensing) throw ParseError("config: compressive methods need 'sensing'");
    try {
      SensingSet(c.n, *c.sensing);
    } catch (const DimensionError& e) {
      throw ParseError(std::string("config: invalid sensing set: ") + e.what());
    }
  }
}

std::uint64_t trial_stream(std::size_t snr_index, std::size_t trial) {
  return (static_cast<std::uint64_t>(snr_index) << 32) ^
         static_cast<std::uint64_t>(trial);
}

std::vector<BenchRow> run_bench(const ExperimentConfig& config) {
  validate(config);
  const std::size_t n = config.n;
  std::optional<SensingSet> K;
  if (config.sensing) K.emplace(n, *config.sensing);

  const std::size_t n_methods = config.methods.size();
  std::size_t threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, config.trials);

  std::vector<BenchRow> rows;
  for (std::size_t si = 0; si < config.snr_db_grid.size(); ++si) {
    const double snr_db = config.snr_db_grid[si];
    // outcomes[trial * n_methods + method]
    std::vector<TrialOutcome> outcomes(config.trials * n_methods);

    auto run_block = [&](std::size_t begin, std::size_t end) {
      for (std::size_t t = begin; t < end; ++t) {
        Rng rng = Rng::stream(config.seed, trial_stream(si, t));
        Signal x(n);
        for (auto& v : x) v = rng.normal();
        const auto planted = static_cast<std::size_t>(rng.below(n));
        Signal y = delay(x, planted);
        if (std::isfinite(snr_db)) {
          double energy = 0.0;
          for (double v : y) energy += v * v;
          const double sigma =
              std::sqrt(energy / (double(n) * std::pow(10.0, snr_db / 10.0)));
          for (auto& v : y) v += sigma * rng.normal();
        }
        for (std::size_t mi = 0; mi < n_methods; ++mi) {
          TrialOutcome& o = outcomes[t * n_methods + mi];
          const auto start = std::chrono::steady_clock::now();
          try {
            o.success = run_method(config.methods[mi], x, y, K).shift == planted;
          } catch (const IdentifiabilityError&) {
            o.success = false;
          }
          const auto stop = std::chrono::steady_clock::now();
          if (config.timing) {
            o.elapsed_us =
                std::chrono::duration<double, std::micro>(stop - start).count();
          }
        }
      }
    };

    if (threads <= 1) {
      run_block(0, config.trials);
    } else {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (config.trials + threads - 1) / threads;
      for (std::size_t b = 0; b < config.trials; b += chunk) {
        pool.emplace_back(run_block, b, std::min(config.trials, b + chunk));
      }
    }

    for (std::size_t mi = 0; mi < n_methods; ++mi) {
      std::size_t hits = 0;
      double elapsed = 0.0;
      for (std::size_t t = 0; t < config.trials; ++t) {
        hits += outcomes[t * n_methods + mi].success ? 1 : 0;
        elapsed += outcomes[t * n_methods + mi].elapsed_us;
      }
      const Method m = config.methods[mi];
      std::size_t used = n;
      if (m == Method::single_bin) used = 1;
      if (is_compressive(m)) used = K->size();
      rows.push_back({snr_db, m, n, used, config.trials,
                      double(hits) / double(config.trials),
                      elapsed / double(config.trials)});
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "snr_db,method,n,m,trials,success_rate,mean_elapsed_us\n";
  for (const auto& r : rows) {
    out << (std::isinf(r.snr_db) ? std::string("inf") : format_double(r.snr_db))
        << ',' << to_string(r.method) << ',' << r.n << ',' << r.m << ','
        << r.trials << ',' << format_double(r.success_rate) << ','
        << format_double(r.mean_elapsed_us) << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<BenchRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({
        {"snr_db", std::isinf(r.snr_db) ? json("inf") : json(r.snr_db)},
        {"method", std::string(to_string(r.method))},
        {"n", r.n},
        {"m", r.m},
        {"trials", r.trials},
        {"success_rate", r.success_rate},
        {"mean_elapsed_us", r.mean_elapsed_us},
    });
  }
  out << arr.dump(2) << '\n';
}

}  // namespace shiftr::cli
