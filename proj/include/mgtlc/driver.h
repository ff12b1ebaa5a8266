#ifndef MGTLC_DRIVER_H
#define MGTLC_DRIVER_H

#include <cstdint>
#include <ostream>
#include <string>

#include "mgtlc/eval.h"

namespace mgtlc {

/// Process exit statuses of the command-line tool.
enum ExitStatus : int {
  kExitOk = 0,
  kExitStaticError = 1,
  kExitBlame = 2,
  kExitTimeout = 3,
  kExitInternal = 4,
  /// A builtin failed while running (unreadable file, malformed integer).
  kExitRuntimeError = 5,
};

enum class OutputFormat { Text, Json };

struct DriverOptions {
  std::uint64_t fuel = kDefaultFuel;
  OutputFormat format = OutputFormat::Text;
  bool emit_cc = false;
};

/// Each command reads `path`, writes results to `out` and diagnostics to
/// `err`, and returns the exit status.
int cmd_check(const std::string &path, const DriverOptions &opts, std::ostream &out, std::ostream &err);
int cmd_compile(const std::string &path, const DriverOptions &opts, std::ostream &out, std::ostream &err);
int cmd_run(const std::string &path, const DriverOptions &opts, std::ostream &out, std::ostream &err);
int cmd_trace(const std::string &path, const DriverOptions &opts, std::ostream &out, std::ostream &err);

}  // namespace mgtlc

#endif  // MGTLC_DRIVER_H
