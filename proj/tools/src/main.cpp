/// @file main.cpp
/// @brief ns2d: simulate, verify, classify and export.

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "ns2d/classify.hpp"
#include "ns2d/error.hpp"
#include "ns2d/field_io.hpp"

namespace {

struct CommonOptions {
  std::string config;
  std::vector<std::string> overrides;
  std::string out;
  long long seed = -1;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "flat key = value config file");
  cmd->add_option("--set", o.overrides, "override key=value (repeatable)");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--seed", o.seed, "seed for randomised corpora");
}

ns2d::cli::RunConfig resolve(const CommonOptions& o) {
  ns2d::cli::RunConfig c;
  if (!o.config.empty()) c.load_file(o.config);
  for (const auto& s : o.overrides) c.apply_override(s);
  if (!o.out.empty()) c.set("out", o.out);
  if (o.seed >= 0) c.set("seed", std::to_string(o.seed));
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ns2d::cli;
  CLI::App app{"Vorticity dynamics in self-similar variables"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string suite = "all";
  std::string format;
  std::string trajectory;

  auto* simulate = app.add_subcommand("simulate", "run a simulation from a recipe");
  add_common(simulate, common);
  auto* verify = app.add_subcommand("verify", "run the verification battery");
  add_common(verify, common);
  verify->add_option("--suite", suite, "constants|spectrum|semigroup|conservation|asymptotics|all");
  verify->add_option("--format", format, "table|json|csv");
  auto* classify = app.add_subcommand("classify", "classify data by optimal decay");
  add_common(classify, common);
  auto* exporter = app.add_subcommand("export", "export a trajectory with unscaled columns");
  add_common(exporter, common);
  exporter->add_option("trajectory", trajectory, "trajectory CSV")->required();
  exporter->add_option("--format", format, "csv|json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kIoError;
  }

  try {
    const RunConfig config = resolve(common);
    if (*simulate) return cmd_simulate(config, std::cout, std::cerr);
    if (*verify) return cmd_verify(config, suite, format.empty() ? "table" : format, std::cout, std::cerr);
    if (*classify) return cmd_classify(config, std::cout, std::cerr);
    return cmd_export(config, trajectory, format.empty() ? "csv" : format, std::cout, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kIoError;
  } catch (const ns2d::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const ns2d::PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return kPrecondition;
  } catch (const ns2d::BlowupError& e) {
    std::cerr << "blow-up guard: " << e.what() << '\n';
    return kCheckFailure;
  } catch (const ns2d::ClassificationError& e) {
    std::cerr << "classification refused: " << e.what() << '\n';
    return kCheckFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoError;
  }
}
