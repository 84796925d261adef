#include <cstdio>
#include <filesystem>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <yaml-cpp/exceptions.h>

#include "cli/config.hpp"
#include "cli/runners.hpp"
#include "ringpairs/error.hpp"

namespace {

enum Exit { ok = 0, config_error = 2, no_convergence = 3, io_error = 4 };

int report(const char* kind, const std::exception& e, int code) {
  std::fprintf(stderr, "ringpairs-cli: %s: %s\n", kind, e.what());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon-pair rates and squeezing statistics for lossy microrings"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, out_dir;
  int threads = 1;
  double tolerance = 0.0;
  for (const auto& name : ringpairs::cli::commands()) app.add_subcommand(name);
  app.get_subcommand("resonances")->description("list resonances and matched triples per geometry");
  app.get_subcommand("rate-cw")->description("CW pair rates and efficiencies per geometry");
  app.get_subcommand("spectrum")->description("actual-channel signal spectrum over each signal bin");
  app.get_subcommand("coupling-sweep")->description("rate relative to critical coupling and heralding vs eta");
  app.get_subcommand("jsa")->description("pulsed joint spectral amplitudes and pair-regime |beta|^2");
  app.get_subcommand("squeeze")->description("Schmidt/Takagi decomposition per pulse duration, energy sweep");
  app.get_subcommand("sweep-grid")->description("CW efficiency over a geometry grid, log10 maps");
  app.add_option("--config", config_path, "run configuration (YAML)")->required();
  app.add_option("--out", out_dir, "output directory (overrides output.directory)");
  app.add_option("--threads", threads, "worker threads for sweep cells")->check(CLI::Range(1, 1024));
  app.add_option("--tolerance", tolerance, "grid refinement tolerance (relative)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  try {
    auto config = ringpairs::cli::load_config(config_path);
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (tolerance > 0.0) config.grid.tolerance = tolerance;
    const std::string command = app.get_subcommands().front()->get_name();
    for (const auto& path : ringpairs::cli::execute(command, config, threads)) std::printf("%s\n", path.c_str());
    return ok;
  } catch (const ringpairs::cli::ConfigError& e) {
    return report("config error", e, config_error);
  } catch (const YAML::Exception& e) {
    return report("config error", e, config_error);
  } catch (const ringpairs::ConvergenceError& e) {
    return report("no convergence", e, no_convergence);
  } catch (const ringpairs::IoError& e) {
    return report("i/o error", e, io_error);
  } catch (const std::filesystem::filesystem_error& e) {
    return report("i/o error", e, io_error);
  } catch (const ringpairs::DomainError& e) {
    return report("invalid input", e, config_error);
  } catch (const ringpairs::RangeError& e) {
    return report("out of range", e, config_error);
  } catch (const std::exception& e) {
    return report("error", e, 1);
  }
}
