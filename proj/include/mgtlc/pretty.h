#ifndef MGTLC_PRETTY_H
#define MGTLC_PRETTY_H

#include <string>

#include "mgtlc/cc.h"
#include "mgtlc/syntax.h"

namespace mgtlc {

/// Renders a splice-free object term in surface syntax that the parser
/// accepts back, e.g. `(λx. x : Int -> Int)` or `(x * 3)`. Throws
/// InternalError if the term contains a splice.
std::string pretty_obj(const ObjTerm &term);

/// Converts between the two splice-free code representations. Conversion
/// from CCCode throws InternalError on a splice.
ObjPtr to_obj_term(const CCCode &code);
CCCodePtr to_cc_code(const ObjTerm &term);

/// Alpha-equivalence of splice-free object terms.
bool alpha_equiv(const ObjTerm &a, const ObjTerm &b);

/// Debug rendering of source terms in the core notation (`λx:A.`, `≺ ≻`,
/// `~^ℓ`); not meant to be parsed.
std::string to_string(const MetaTerm &term);
std::string to_string(const ObjTerm &term);

}  // namespace mgtlc

#endif  // MGTLC_PRETTY_H
