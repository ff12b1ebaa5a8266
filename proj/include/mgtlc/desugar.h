#ifndef MGTLC_DESUGAR_H
#define MGTLC_DESUGAR_H

#include <cstdint>
#include <map>
#include <string>

#include "mgtlc/parser.h"
#include "mgtlc/surface.h"
#include "mgtlc/syntax.h"

namespace mgtlc {

/// File contents by the name used in spans, for diagnostic excerpts.
using SourceMap = std::map<std::string, std::string>;

struct LoadedProgram {
  MetaPtr term;
  SourceMap sources;
  /// Number of blame labels minted across all files.
  std::uint32_t label_count = 0;
};

/// Lowers a surface expression to a core metaterm. `base_dir` is where
/// builtins named in it resolve relative paths. Free names that match a
/// builtin and are not shadowed become builtin references.
MetaPtr desugar_expr(const SurfaceExpr &expr, const std::string &base_dir,
                     const TypingContext &ctx = TypingContext{});
/// Lowers a closed surface object term.
ObjPtr desugar_object(const SurfaceObj &obj);

/// Reads `path` and every file it imports (transitively, each once, cycles
/// rejected), then desugars everything into one closed metaterm: the
/// imported definitions in dependency order, then the main file's. Throws
/// FrontendError.
LoadedProgram load_program(const std::string &path);

/// As load_program, for a main file given as text. Imports resolve
/// relative to the directory of `file`.
LoadedProgram load_source(const std::string &source, const std::string &file);

/// Parses and desugars a single object term such as `(λx. x : Int -> Int)`.
ObjPtr parse_object_term(const std::string &source);

}  // namespace mgtlc

#endif  // MGTLC_DESUGAR_H
