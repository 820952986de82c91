// schrolab: run one experiment from a JSON config and write its report.
//
//   schrolab <kind> --config PATH [--out DIR] [--seed U64] [--format json|csv] [--threads N]
//
// Exit codes: 0 success, 2 invalid config or parameters, 3 resolution or
// coverage failure, 4 I/O failure, 1 anything else.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "schrolab/error.hpp"
#include "schrolab/parallel.hpp"
#include "schrolab/runner/runner.hpp"

namespace fs = std::filesystem;
using schrolab::runner::Json;

namespace {

int exit_code_for(std::string_view category) {
  if (category == "resolution" || category == "coverage") return 3;
  if (category == "io") return 4;
  if (category == "validation" || category == "spec" || category == "input" || category == "contract" ||
      category == "degenerate" || category == "fit")
    return 2;
  return 1;
}

// Error record on stderr, and as <out>/error.json when the directory is usable.
int report_error(const std::string& kind, std::string_view category, const std::string& message,
                 const std::optional<fs::path>& out_dir) {
  const int code = exit_code_for(category);
  const Json record{{"error", {{"kind", kind}, {"category", category}, {"message", message}, {"exit_code", code}}}};
  std::cerr << record.dump() << '\n';
  if (out_dir && category != "io") {
    std::error_code ec;
    fs::create_directories(*out_dir, ec);
    std::ofstream f(*out_dir / "error.json");
    if (f) f << record.dump(2) << '\n';
  }
  return code;
}

struct Options {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::size_t threads = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free Schrodinger flow experiments"};
  app.set_version_flag("--version", std::string(schrolab::runner::tool_version()));
  app.require_subcommand(1);

  Options opt;
  for (auto kind : schrolab::runner::kKinds) {
    auto* sub = app.add_subcommand(std::string(kind), "run a " + std::string(kind) + " experiment");
    sub->add_option("--config", opt.config, "experiment config (JSON)")->required();
    sub->add_option("--out", opt.out, "output directory (overrides output.dir)");
    sub->add_option("--seed", opt.seed, "seed override");
    sub->add_option("--format", opt.format, "report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string kind = app.get_subcommands().front()->get_name();
  std::optional<fs::path> out_dir;
  if (opt.out) out_dir = *opt.out;
  try {
    schrolab::set_thread_count(opt.threads > 0 ? opt.threads : std::max(1U, std::thread::hardware_concurrency()));
    auto cfg = schrolab::runner::parse_config(schrolab::runner::load_config_file(opt.config), kind, opt.seed);
    if (out_dir)
      cfg.output_dir = *out_dir;
    else
      out_dir = cfg.output_dir;
    const auto report = schrolab::runner::run(cfg);
    for (const auto& p : schrolab::runner::emit(report, schrolab::runner::format_from_string(opt.format), cfg.output_dir))
      std::cout << p.string() << '\n';
    return 0;
  } catch (const schrolab::Error& e) {
    return report_error(kind, e.category(), e.what(), out_dir);
  } catch (const std::exception& e) {
    return report_error(kind, "internal", e.what(), out_dir);
  }
}
