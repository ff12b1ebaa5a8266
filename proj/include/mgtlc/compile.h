#ifndef MGTLC_COMPILE_H
#define MGTLC_COMPILE_H

#include <optional>
#include <utility>

#include "mgtlc/cc.h"
#include "mgtlc/syntax.h"
#include "mgtlc/types.h"

namespace mgtlc {

/// Cast insertion for metaterms. Requires `term` to typecheck under
/// type_meta; returns the cast-calculus term and its type.
std::pair<CCMetaPtr, MetaType> compile_meta(const TypingContext &ctx, const MetaTerm &term);

/// Cast insertion for code terms, in synthesis mode (no expected type) or
/// checking mode.
std::pair<CCCodePtr, ObjType> compile_obj(const TypingContext &ctx, const ObjTerm &term,
                                          const std::optional<ObjType> &expected = std::nullopt);

/// compile_meta followed by re-validation of the output at the source type.
/// Throws ValidationError if the two disagree.
std::pair<CCMetaPtr, MetaType> compile_validated(const TypingContext &ctx, const MetaTerm &term);

/// Number of Cast nodes in a compiled term.
std::size_t count_casts(const CCMeta &term);

}  // namespace mgtlc

#endif  // MGTLC_COMPILE_H
