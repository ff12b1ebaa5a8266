#ifndef MGTLC_DIAGNOSTIC_H
#define MGTLC_DIAGNOSTIC_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mgtlc/desugar.h"
#include "mgtlc/syntax.h"

namespace mgtlc {

enum class Severity { StaticError, Blame, RuntimeError, InternalError, Warning };

std::string to_string(Severity s);

struct Diagnostic {
  Severity severity = Severity::StaticError;
  /// Short machine-readable kind, e.g. `inconsistent-types` or `blame`.
  std::string code;
  SourceSpan span;
  std::optional<std::uint32_t> blame_ordinal;
  std::string expected_type;
  std::string actual_type;
  std::string message;
};

/// `file:line:col: severity: message`, then the source line with a caret
/// underline and, when known, the expected and actual types.
std::string render_text(const Diagnostic &d, const SourceMap &sources);

/// One JSON object on a single line.
std::string render_json(const Diagnostic &d);

}  // namespace mgtlc

#endif  // MGTLC_DIAGNOSTIC_H
