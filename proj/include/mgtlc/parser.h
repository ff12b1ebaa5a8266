#ifndef MGTLC_PARSER_H
#define MGTLC_PARSER_H

#include <cstdint>
#include <string>

#include "mgtlc/surface.h"
#include "mgtlc/syntax.h"

namespace mgtlc {

/// Hands out blame labels with ordinals unique across every file of one
/// compilation unit.
class LabelMinter {
 public:
  BlameLabel mint(const SourceSpan &span) { return BlameLabel{span, next_++}; }
  std::uint32_t minted() const { return next_ - 1; }

 private:
  std::uint32_t next_ = 1;
};

/// Parses a whole file: imports, top-level lets, and an optional final
/// expression. A top-level item starts at a token in column 1, so
/// continuation lines of a definition must be indented. Throws FrontendError.
SurfaceProgram parse_program(const std::string &source, const std::string &file, LabelMinter &labels);

/// Parses a single metalanguage expression spanning the whole input.
SurfaceExprPtr parse_expression(const std::string &source, const std::string &file, LabelMinter &labels);

/// Parses a single object-language expression (the contents of a quote).
SurfaceObjPtr parse_object(const std::string &source, const std::string &file, LabelMinter &labels);

/// Parses a type such as `Code (Int -> Int) -> ★`.
MetaType parse_type(const std::string &source, const std::string &file = "<type>");

}  // namespace mgtlc

#endif  // MGTLC_PARSER_H
