#ifndef MGTLC_TYPECHECK_H
#define MGTLC_TYPECHECK_H

#include <optional>
#include <stdexcept>
#include <string>

#include "mgtlc/cc.h"
#include "mgtlc/coercion.h"
#include "mgtlc/syntax.h"
#include "mgtlc/types.h"

namespace mgtlc {

enum class TypeErrorKind {
  InconsistentTypes,
  NotAFunction,
  UnboundVariable,
  WrongStageVariable,
  AnnotationMismatch,
  CannotSynthesize,
};

std::string to_string(TypeErrorKind kind);

/// A static type error in a source program. Checking stops at the first one.
class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind kind, SourceSpan span, const std::string &message,
            std::string expected = {}, std::string actual = {});

  TypeErrorKind kind() const { return kind_; }
  const SourceSpan &span() const { return span_; }
  const std::string &expected() const { return expected_; }
  const std::string &actual() const { return actual_; }

 private:
  TypeErrorKind kind_;
  SourceSpan span_;
  std::string expected_;
  std::string actual_;
};

/// A cast-calculus term failed validation: the compiler or the evaluator
/// produced an ill-typed term.
class ValidationError : public InternalError {
 public:
  using InternalError::InternalError;
};

/// Type consistency `A ~ B`.
bool consistent(const MetaType &a, const MetaType &b);

/// `Γ ⊢o M ⇒ T`.
ObjType synth_obj(const TypingContext &ctx, const ObjTerm &term);
/// `Γ ⊢o M ⇐ T`; object types compare by equality.
void check_obj(const TypingContext &ctx, const ObjTerm &term, const ObjType &expected);
/// `Γ ⊢m M : A`.
MetaType type_meta(const TypingContext &ctx, const MetaTerm &term);

/// Validators for the cast calculus. Types compare by equality; consistency
/// plays no role once every cast is explicit. A blame term has every type,
/// so synthesis returns nullopt when the type is left unconstrained by blame.
std::optional<MetaType> type_cc_meta(const TypingContext &ctx, const CCMeta &term);
void check_cc_meta(const TypingContext &ctx, const CCMeta &term, const MetaType &expected);
std::optional<ObjType> type_cc_code(const TypingContext &ctx, const CCCode &term);
void check_cc_code(const TypingContext &ctx, const CCCode &term, const ObjType &expected);

}  // namespace mgtlc

#endif  // MGTLC_TYPECHECK_H
