#include "shiftr/cli/commands.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

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

struct Operands {
  std::optional<Signal> x, y;
  std::optional<Measurement> v, z;
};

// Compressive methods accept either measurement files or signals plus
// --sensing; everything else needs signals.
Operands load_operands(const RetrieveOptions& o, bool compressive) {
  Operands ops;
  if (compressive && is_measurement_file(o.x_path)) {
    ops.v = read_measurement(o.x_path);
    ops.z = read_measurement(o.y_path);
    return ops;
  }
  ops.x = read_signal(o.x_path);
  ops.y = read_signal(o.y_path);
  if (ops.x->size() != ops.y->size()) {
    throw ParseError("x has " + std::to_string(ops.x->size()) + " samples, y has " +
                     std::to_string(ops.y->size()));
  }
  if (compressive) {
    if (!o.sensing) throw ParseError("compressive methods need --sensing");
    const SensingSet K(ops.x->size(), *o.sensing);
    ops.v = measure(*ops.x, K);
    ops.z = measure(*ops.y, K);
  }
  return ops;
}

}  // namespace

Signal generate_signal(const GenOptions& o) {
  if (o.n < 1) throw ParseError("gen: n must be >= 1");
  Signal x(o.n, 0.0);
  Rng rng(o.seed);
  if (o.kind == "gaussian") {
    for (auto& v : x) v = rng.normal();
  } else if (o.kind == "uniform") {
    for (auto& v : x) v = rng.uniform(-1.0, 1.0);
  } else if (o.kind == "impulse-train") {
    const std::size_t period = o.period.value_or(std::max<std::size_t>(1, o.n / 2));
    if (period == 0) throw ParseError("gen: period must be >= 1");
    for (std::size_t t = 0; t < o.n; t += period) x[t] = 1.0;
  } else {
    throw ParseError("gen: unknown kind '" + o.kind +
                     "' (gaussian, uniform, impulse-train)");
  }
  if (o.delay >= o.n) throw ParseError("gen: delay must be < n");
  return delay(x, o.delay);
}

int cmd_gen(const GenOptions& o, std::ostream& err) {
  try {
    const Signal x = generate_signal(o);
    if (o.sensing) {
      write_measurement(o.out, measure(x, SensingSet(o.n, *o.sensing)));
    } else {
      write_signal(o.out, x);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "gen: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_retrieve(const RetrieveOptions& o, std::ostream& out, std::ostream& err) {
  const auto method = parse_method(o.method);
  if (!method) {
    err << "retrieve: unknown method '" << o.method << "'\n";
    return kExitUsage;
  }
  const bool compressive = *method == Method::compressive_argmax ||
                           *method == Method::compressive_ratio;
  Operands ops;
  try {
    ops = load_operands(o, compressive);
  } catch (const std::exception& e) {
    err << "retrieve: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    ShiftEstimate est;
    switch (*method) {
      case Method::crosscorr: est = shift_by_crosscorr(*ops.x, *ops.y); break;
      case Method::ratio: est = shift_by_ratio(*ops.x, *ops.y); break;
      case Method::single_bin: {
        SingleBinOptions sb;
        sb.bin = o.bin;
        sb.column_scan = o.column_scan;
        est = shift_single_bin(*ops.x, *ops.y, sb);
        break;
      }
      case Method::compressive_argmax:
        est = shift_by_compressive_argmax(*ops.z, *ops.v);
        break;
      case Method::compressive_ratio:
        est = shift_by_compressive_ratio(*ops.z, *ops.v);
        break;
      case Method::brute_force: est = oracle::brute_force_shift(*ops.x, *ops.y); break;
    }
    const auto stop = std::chrono::steady_clock::now();
    const std::size_t n = ops.x ? ops.x->size() : ops.v->sensing().n();
    const json report = {
        {"method", std::string(to_string(est.method))},
        {"n", n},
        {"shift", est.shift},
        {"score", est.score},
        {"flags", est.flags},
        {"elapsed_microseconds",
         std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count()},
    };
    out << report.dump() << '\n';
    return est.has_flag(flags::ambiguous) ? kExitUnidentifiable : kExitOk;
  } catch (const IdentifiabilityError& e) {
    err << "retrieve: " << e.what() << '\n';
    return kExitUnidentifiable;
  } catch (const std::exception& e) {
    err << "retrieve: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_bench(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<BenchRow> rows;
  try {
    rows = run_bench(config);
  } catch (const std::exception& e) {
    err << "bench: " << e.what() << '\n';
    return kExitUsage;
  }
  auto write = [&](std::ostream& os) {
    if (config.format == OutputFormat::json) {
      write_json(os, rows);
    } else {
      write_csv(os, rows);
    }
  };
  if (config.output.empty()) {
    write(out);
    return kExitOk;
  }
  std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "bench: cannot write '" << config.output.string() << "'\n";
    return kExitUsage;
  }
  write(file);
  return file ? kExitOk : kExitUsage;
}

int cmd_check_sensing(const std::filesystem::path& x_path,
                      const std::vector<std::size_t>& sensing, std::ostream& out,
                      std::ostream& err) {
  try {
    const Signal x = read_signal(x_path);
    const SensingSet K(x.size(), sensing);
    const SensingReport r = check_sensing_conditions(x, K);
    const json report = {
        {"n", K.n()},
        {"sensing", K.indices()},
        {"qualifying_bins", r.qualifying_bins},
        {"recovery_guaranteed", r.recovery_guaranteed},
        {"alpha", r.alpha},
        {"alpha_condition", r.alpha_condition},
        {"columns_distinct", r.columns_distinct},
        {"ambiguous_lags", r.ambiguous_lags},
    };
    out << report.dump() << '\n';
    return r.columns_distinct ? kExitOk : kExitUnidentifiable;
  } catch (const std::exception& e) {
    err << "check-sensing: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_selftest(const SelftestOptions& options, std::ostream& out) {
  return report_selftest(run_selftest(options), out);
}

}  // namespace shiftr::cli
