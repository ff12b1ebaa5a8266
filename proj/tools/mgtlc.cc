// Command-line driver: check, compile, run and trace `.mgtlc` programs.
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "mgtlc/driver.h"

int main(int argc, char **argv) {
  CLI::App app{"Gradually typed multi-stage programs: type check, compile to the cast calculus, metaevaluate."};
  app.require_subcommand(1);

  std::string file;
  mgtlc::DriverOptions opts;
  const std::map<std::string, mgtlc::OutputFormat> formats{{"text", mgtlc::OutputFormat::Text},
                                                           {"json", mgtlc::OutputFormat::Json}};

  auto common = [&](CLI::App *cmd) {
    cmd->add_option("file", file, "Source file (.mgtlc)")->required();
    cmd->add_option("--format", opts.format, "Output format: text or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };
  auto with_fuel = [&](CLI::App *cmd) {
    cmd->add_option("--fuel", opts.fuel, "Maximum number of evaluation steps; 0 means unlimited")
        ->capture_default_str();
  };

  CLI::App *check = app.add_subcommand("check", "Type check and print the program's type");
  common(check);
  CLI::App *compile = app.add_subcommand("compile", "Insert casts and report the cast-calculus term");
  common(compile);
  compile->add_flag("--emit-cc", opts.emit_cc, "Print the cast-calculus term");
  CLI::App *run = app.add_subcommand("run", "Metaevaluate and print the generated object program");
  common(run);
  with_fuel(run);
  CLI::App *trace = app.add_subcommand("trace", "Metaevaluate, printing every step with its validated type");
  common(trace);
  with_fuel(trace);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : mgtlc::kExitStaticError;
  }

  if (check->parsed()) return mgtlc::cmd_check(file, opts, std::cout, std::cerr);
  if (compile->parsed()) return mgtlc::cmd_compile(file, opts, std::cout, std::cerr);
  if (run->parsed()) return mgtlc::cmd_run(file, opts, std::cout, std::cerr);
  return mgtlc::cmd_trace(file, opts, std::cout, std::cerr);
}
