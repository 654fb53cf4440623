#include <fstream>
#include <iostream>
#include <iterator>
#include <utility>
#include <string>

#include <CLI11.hpp>

#include "shiftr/cli/bench.hpp"
#include "shiftr/cli/commands.hpp"
#include "shiftr/cli/signal_io.hpp"

namespace {

using namespace shiftr::cli;

std::vector<std::size_t> indices_or_throw(const std::string& text) {
  try {
    return parse_index_list(text);
  } catch (const ParseError& e) {
    throw CLI::ValidationError("--sensing", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyclic shift retrieval: estimators, sensing checks, benchmarks"};
  app.require_subcommand(1);

  GenOptions gen;
  std::string gen_sensing;
  auto* gen_cmd = app.add_subcommand("gen", "Write a deterministic test signal");
  gen_cmd->add_option("--n", gen.n, "Signal length")->required();
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--kind", gen.kind, "gaussian | uniform | impulse-train");
  gen_cmd->add_option("--period", gen.period, "impulse-train period (default n/2)");
  gen_cmd->add_option("--delay", gen.delay, "Cyclic delay applied to the signal");
  gen_cmd->add_option("--sensing", gen_sensing,
                      "Write the measurement at these bins, e.g. 1,3,5");
  gen_cmd->add_option("--out", gen.out, "Output path")->required();

  RetrieveOptions retrieve;
  std::string retrieve_sensing;
  auto* retrieve_cmd = app.add_subcommand("retrieve", "Estimate the shift from x to y");
  retrieve_cmd->add_option("--x,x", retrieve.x_path, "Reference signal or measurement")
      ->required();
  retrieve_cmd->add_option("--y,y", retrieve.y_path, "Shifted signal or measurement")
      ->required();
  retrieve_cmd->add_option("--method", retrieve.method,
                           "crosscorr | ratio | single_bin | compressive_argmax | "
                           "compressive_ratio | brute_force");
  retrieve_cmd->add_option("--bin", retrieve.bin, "Bin for single_bin");
  retrieve_cmd->add_option("--sensing", retrieve_sensing,
                           "Sensing set for compressive methods on signal inputs");
  retrieve_cmd->add_flag("--column-scan", retrieve.column_scan,
                         "single_bin: match by scanning the Fourier row");

  std::string config_path, bench_n, bench_seed, bench_trials, bench_snr, bench_methods,
      bench_sensing, bench_out, bench_format, bench_threads;
  bool no_timing = false;
  auto* bench_cmd = app.add_subcommand("bench", "Monte-Carlo success rates as CSV");
  bench_cmd->add_option("--config,config", config_path,
                        "key=value or JSON experiment config");
  bench_cmd->add_option("--n", bench_n);
  bench_cmd->add_option("--seed", bench_seed);
  bench_cmd->add_option("--trials", bench_trials);
  bench_cmd->add_option("--snr-db", bench_snr, "Comma list; 'inf' = noiseless");
  bench_cmd->add_option("--method", bench_methods, "Comma list of methods");
  bench_cmd->add_option("--sensing", bench_sensing);
  bench_cmd->add_option("--out", bench_out);
  bench_cmd->add_option("--format", bench_format, "csv | json");
  bench_cmd->add_option("--threads", bench_threads);
  bench_cmd->add_flag("--no-timing", no_timing, "Write 0 for elapsed time");

  std::string check_x, check_sensing;
  auto* check_cmd = app.add_subcommand("check-sensing",
                                       "Report recovery conditions for a sensing set");
  check_cmd->add_option("--x,x", check_x, "Reference signal")->required();
  check_cmd->add_option("--sensing", check_sensing)->required();

  SelftestOptions selftest;
  auto* selftest_cmd = app.add_subcommand("selftest", "Oracle and identity checks");
  selftest_cmd->add_flag("--corrupt-dft-sign", selftest.corrupt_dft_sign,
                         "Negative control: flip the DFT exponent sign");
  selftest_cmd->add_option("--seed", selftest.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen_cmd) {
      if (!gen_sensing.empty()) gen.sensing = indices_or_throw(gen_sensing);
      return cmd_gen(gen, std::cerr);
    }
    if (*retrieve_cmd) {
      if (!retrieve_sensing.empty()) retrieve.sensing = indices_or_throw(retrieve_sensing);
      return cmd_retrieve(retrieve, std::cout, std::cerr);
    }
    if (*bench_cmd) {
      std::string base;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ParseError("cannot open config '" + config_path + "'");
        base.assign(std::istreambuf_iterator<char>(in), {});
      }
      ExperimentConfig config = parse_config(base, false);
      // Flags override the file.
      const std::pair<const char*, const std::string*> overrides[] = {
          {"n", &bench_n},           {"seed", &bench_seed},
          {"trials", &bench_trials}, {"snr_db", &bench_snr},
          {"methods", &bench_methods}, {"sensing", &bench_sensing},
          {"output", &bench_out},    {"format", &bench_format},
          {"threads", &bench_threads}};
      for (const auto& [key, value] : overrides) {
        if (!value->empty()) apply_setting(config, key, *value);
      }
      if (no_timing) config.timing = false;
      validate(config);
      return cmd_bench(config, std::cout, std::cerr);
    }
    if (*check_cmd) {
      return cmd_check_sensing(check_x, indices_or_throw(check_sensing), std::cout,
                               std::cerr);
    }
    if (*selftest_cmd) return cmd_selftest(selftest, std::cout);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
