#include "mgtlc/typecheck.h"

#include <fmt/format.h>

namespace mgtlc {

std::string to_string(TypeErrorKind kind) {
  switch (kind) {
    case TypeErrorKind::InconsistentTypes:
      return "inconsistent-types";
    case TypeErrorKind::NotAFunction:
      return "not-a-function";
    case TypeErrorKind::UnboundVariable:
      return "unbound-variable";
    case TypeErrorKind::WrongStageVariable:
      return "wrong-stage-variable";
    case TypeErrorKind::AnnotationMismatch:
      return "annotation-mismatch";
    case TypeErrorKind::CannotSynthesize:
      return "cannot-synthesize";
  }
  return "type-error";
}

TypeError::TypeError(TypeErrorKind kind, SourceSpan span, const std::string &message,
                     std::string expected, std::string actual)
    : std::runtime_error(message),
      kind_(kind),
      span_(std::move(span)),
      expected_(std::move(expected)),
      actual_(std::move(actual)) {}

bool consistent(const MetaType &a, const MetaType &b) {
  using K = MetaType::Kind;
  if (a.is_star() || b.is_star()) return true;
  switch (a.kind()) {
    case K::Base:
      return b.is_base() && a.base_type() == b.base_type();
    case K::Fun:
      return b.is_fun() && consistent(a.param(), b.param()) && consistent(a.result(), b.result());
    case K::Code:
      return (b.is_code() && a.code_type() == b.code_type()) || b.is_code_star();
    case K::CodeStar:
      return b.is_code() || b.is_code_star();
    case K::Star:
      return true;
  }
  return false;
}

namespace {

ObjType lookup_object_var(const TypingContext &ctx, const std::string &name, const SourceSpan &span) {
  const Binding *b = ctx.lookup(name);
  if (!b) throw TypeError(TypeErrorKind::UnboundVariable, span, fmt::format("unbound variable `{}`", name));
  if (!b->is_object())
    throw TypeError(TypeErrorKind::WrongStageVariable, span,
                    fmt::format("`{}` is a metalanguage variable; splice it to use it in object code",
                                name));
  return *b->otype;
}

MetaType lookup_meta_var(const TypingContext &ctx, const std::string &name, const SourceSpan &span) {
  const Binding *b = ctx.lookup(name);
  if (!b) throw TypeError(TypeErrorKind::UnboundVariable, span, fmt::format("unbound variable `{}`", name));
  if (!b->is_meta())
    throw TypeError(TypeErrorKind::WrongStageVariable, span,
                    fmt::format("`{}` is an object-language variable; quote it to use it in the "
                                "metalanguage",
                                name));
  return *b->mtype;
}

void require_consistent(const MetaType &expected, const MetaType &actual, const SourceSpan &span,
                        const std::string &what) {
  if (!consistent(expected, actual))
    throw TypeError(TypeErrorKind::InconsistentTypes, span,
                    fmt::format("{}: expected a value consistent with {}, but this has type {}",
                                what, to_string(expected), to_string(actual)),
                    to_string(expected), to_string(actual));
}

}  // namespace

ObjType synth_obj(const TypingContext &ctx, const ObjTerm &term) {
  return std::visit(
      overloaded{
          [&](const ObjTerm::Var &n) { return lookup_object_var(ctx, n.name, term.span); },
          [&](const ObjTerm::Const &n) { return ObjType::base(n.value.type()); },
          [&](const ObjTerm::Lam &) -> ObjType {
            throw TypeError(TypeErrorKind::CannotSynthesize, term.span,
                            "cannot infer the type of an object lambda; annotate it, e.g. "
                            "`(lam x -> e : Int -> Int)` or `lam (x : Int) -> e`");
          },
          [&](const ObjTerm::Splice &) -> ObjType {
            throw TypeError(TypeErrorKind::CannotSynthesize, term.span,
                            "a splice needs its expected type from context; annotate it, e.g. "
                            "`(~e : Int)`");
          },
          [&](const ObjTerm::App &n) {
            ObjType fn = synth_obj(ctx, *n.fn);
            if (!fn.is_fun())
              throw TypeError(TypeErrorKind::NotAFunction, n.fn->span,
                              fmt::format("applying a value of type {} which is not a function",
                                          to_string(fn)),
                              "a function type", to_string(fn));
            check_obj(ctx, *n.arg, fn.param());
            return fn.result();
          },
          [&](const ObjTerm::Ann &n) {
            check_obj(ctx, *n.term, n.type);
            return n.type;
          },
          [&](const ObjTerm::Prim &n) {
            for (const auto &a : n.args) check_obj(ctx, *a, ObjType::int_());
            return prim_result(n.op);
          },
      },
      term.node);
}

void check_obj(const TypingContext &ctx, const ObjTerm &term, const ObjType &expected) {
  if (const auto *lam = std::get_if<ObjTerm::Lam>(&term.node)) {
    if (!expected.is_fun())
      throw TypeError(TypeErrorKind::AnnotationMismatch, term.span,
                      fmt::format("a lambda cannot have non-function type {}", to_string(expected)),
                      to_string(expected), "a function");
    check_obj(ctx.with_object(lam->param, expected.param()), *lam->body, expected.result());
    return;
  }
  if (const auto *splice = std::get_if<ObjTerm::Splice>(&term.node)) {
    MetaType payload = type_meta(ctx, *splice->term);
    MetaType want = MetaType::code(expected);
    if (!consistent(payload, want))
      throw TypeError(TypeErrorKind::InconsistentTypes, term.span,
                      fmt::format("spliced term has type {}, which is not consistent with {}",
                                  to_string(payload), to_string(want)),
                      to_string(want), to_string(payload));
    return;
  }
  ObjType actual = synth_obj(ctx, term);
  if (!(actual == expected))
    throw TypeError(TypeErrorKind::AnnotationMismatch, term.span,
                    fmt::format("expected object code of type {}, but this has type {}",
                                to_string(expected), to_string(actual)),
                    to_string(expected), to_string(actual));
}

MetaType type_meta(const TypingContext &ctx, const MetaTerm &term) {
  return std::visit(
      overloaded{
          [&](const MetaTerm::Var &n) { return lookup_meta_var(ctx, n.name, term.span); },
          [&](const MetaTerm::Const &n) { return MetaType::base(n.value.type()); },
          [&](const MetaTerm::Lam &n) {
            return MetaType::fun(n.annot, type_meta(ctx.with_meta(n.param, n.annot), *n.body));
          },
          [&](const MetaTerm::App &n) {
            MetaType fn = type_meta(ctx, *n.fn);
            MetaType arg = type_meta(ctx, *n.arg);
            if (fn.is_star()) return MetaType::star();
            if (!fn.is_fun())
              throw TypeError(TypeErrorKind::NotAFunction, n.fn->span,
                              fmt::format("applying a value of type {} which is not a function",
                                          to_string(fn)),
                              "a function type", to_string(fn));
            require_consistent(fn.param(), arg, n.arg->span, "argument type mismatch");
            return fn.result();
          },
          [&](const MetaTerm::Quote &n) { return MetaType::code(synth_obj(ctx, *n.body)); },
          [&](const MetaTerm::Prim &n) {
            for (const auto &a : n.args)
              require_consistent(MetaType::int_(), type_meta(ctx, *a), a->span,
                                 fmt::format("operand of `{}`", to_string(n.op)));
            return lift(prim_result(n.op));
          },
          [&](const MetaTerm::If &n) {
            require_consistent(MetaType::boolean(), type_meta(ctx, *n.cond), n.cond->span,
                               "condition of `if`");
            MetaType a = type_meta(ctx, *n.then_branch);
            MetaType b = type_meta(ctx, *n.else_branch);
            return a == b ? a : MetaType::star();
          },
          [&](const MetaTerm::Builtin &n) -> MetaType {
            auto info = find_builtin(n.name);
            if (!info)
              throw TypeError(TypeErrorKind::UnboundVariable, term.span,
                              fmt::format("unknown builtin `{}`", n.name));
            return info->type;
          },
      },
      term.node);
}

namespace {

[[noreturn]] void invalid(const std::string &what) { throw ValidationError("ill-typed cast-calculus term: " + what); }

void expect_same(const MetaType &expected, const std::optional<MetaType> &actual, const char *where) {
  if (actual && !(*actual == expected))
    invalid(fmt::format("{}: expected {}, found {}", where, to_string(expected), to_string(*actual)));
}

void expect_same(const ObjType &expected, const std::optional<ObjType> &actual, const char *where) {
  if (actual && !(*actual == expected))
    invalid(fmt::format("{}: expected {}, found {}", where, to_string(expected), to_string(*actual)));
}

MetaType cc_lookup_meta(const TypingContext &ctx, const std::string &name) {
  const Binding *b = ctx.lookup(name);
  if (!b || !b->is_meta()) invalid(fmt::format("`{}` is not a bound metalanguage variable", name));
  return *b->mtype;
}

ObjType cc_lookup_object(const TypingContext &ctx, const std::string &name) {
  const Binding *b = ctx.lookup(name);
  if (!b || !b->is_object()) invalid(fmt::format("`{}` is not a bound object variable", name));
  return *b->otype;
}

// The argument of an application whose head is a propagating blame has no
// expected type to check against. It is validated if it synthesizes; a bare
// lambda there is accepted as is.
void validate_orphan_argument(const TypingContext &ctx, const CCCode &arg) {
  if (std::holds_alternative<CCCode::Lam>(arg.node)) return;
  type_cc_code(ctx, arg);
}

}  // namespace

std::optional<MetaType> type_cc_meta(const TypingContext &ctx, const CCMeta &term) {
  return std::visit(
      overloaded{
          [&](const CCMeta::Var &n) -> std::optional<MetaType> { return cc_lookup_meta(ctx, n.name); },
          [&](const CCMeta::Const &n) -> std::optional<MetaType> {
            return MetaType::base(n.value.type());
          },
          [&](const CCMeta::Lam &n) -> std::optional<MetaType> {
            auto body = type_cc_meta(ctx.with_meta(n.param, n.annot), *n.body);
            if (!body) invalid("lambda body with unconstrained type");
            return MetaType::fun(n.annot, *body);
          },
          [&](const CCMeta::App &n) -> std::optional<MetaType> {
            auto fn = type_cc_meta(ctx, *n.fn);
            if (!fn) {
              type_cc_meta(ctx, *n.arg);
              return std::nullopt;
            }
            if (!fn->is_fun()) invalid("application of a non-function of type " + to_string(*fn));
            check_cc_meta(ctx, *n.arg, fn->param());
            return fn->result();
          },
          [&](const CCMeta::Quote &n) -> std::optional<MetaType> {
            auto body = type_cc_code(ctx, *n.body);
            if (!body) return std::nullopt;
            return MetaType::code(*body);
          },
          [&](const CCMeta::Cast &n) -> std::optional<MetaType> {
            CoercionType ct = coercion_type(*n.coercion);
            check_cc_meta(ctx, *n.term, ct.source);
            return ct.target;
          },
          [&](const CCMeta::Blame &) -> std::optional<MetaType> { return std::nullopt; },
          [&](const CCMeta::Prim &n) -> std::optional<MetaType> {
            for (const auto &a : n.args) check_cc_meta(ctx, *a, MetaType::int_());
            return lift(prim_result(n.op));
          },
          [&](const CCMeta::If &n) -> std::optional<MetaType> {
            check_cc_meta(ctx, *n.cond, MetaType::boolean());
            auto a = type_cc_meta(ctx, *n.then_branch);
            auto b = type_cc_meta(ctx, *n.else_branch);
            if (a && b && !(*a == *b)) invalid("branches of `if` have different types");
            return a ? a : b;
          },
          [&](const CCMeta::Builtin &n) -> std::optional<MetaType> {
            auto info = find_builtin(n.name);
            if (!info) invalid("unknown builtin " + n.name);
            return info->type;
          },
      },
      term.node);
}

void check_cc_meta(const TypingContext &ctx, const CCMeta &term, const MetaType &expected) {
  if (std::holds_alternative<CCMeta::Blame>(term.node)) return;
  if (const auto *lam = std::get_if<CCMeta::Lam>(&term.node)) {
    if (!expected.is_fun() || !(expected.param() == lam->annot))
      invalid(fmt::format("lambda with parameter type {} checked against {}", to_string(lam->annot),
                          to_string(expected)));
    check_cc_meta(ctx.with_meta(lam->param, lam->annot), *lam->body, expected.result());
    return;
  }
  if (const auto *q = std::get_if<CCMeta::Quote>(&term.node)) {
    if (!expected.is_code()) invalid("quote checked against non-code type " + to_string(expected));
    check_cc_code(ctx, *q->body, expected.code_type());
    return;
  }
  if (const auto *i = std::get_if<CCMeta::If>(&term.node)) {
    check_cc_meta(ctx, *i->cond, MetaType::boolean());
    check_cc_meta(ctx, *i->then_branch, expected);
    check_cc_meta(ctx, *i->else_branch, expected);
    return;
  }
  expect_same(expected, type_cc_meta(ctx, term), "metaterm");
}

std::optional<ObjType> type_cc_code(const TypingContext &ctx, const CCCode &term) {
  return std::visit(
      overloaded{
          [&](const CCCode::Var &n) -> std::optional<ObjType> { return cc_lookup_object(ctx, n.name); },
          [&](const CCCode::Const &n) -> std::optional<ObjType> {
            return ObjType::base(n.value.type());
          },
          [&](const CCCode::Lam &) -> std::optional<ObjType> {
            invalid("object lambda in a position without an expected type");
          },
          [&](const CCCode::App &n) -> std::optional<ObjType> {
            auto fn = type_cc_code(ctx, *n.fn);
            if (!fn) {
              validate_orphan_argument(ctx, *n.arg);
              return std::nullopt;
            }
            if (!fn->is_fun()) invalid("object application of non-function " + to_string(*fn));
            check_cc_code(ctx, *n.arg, fn->param());
            return fn->result();
          },
          [&](const CCCode::Ann &n) -> std::optional<ObjType> {
            check_cc_code(ctx, *n.term, n.type);
            return n.type;
          },
          [&](const CCCode::Splice &n) -> std::optional<ObjType> {
            auto inner = type_cc_meta(ctx, *n.term);
            if (!inner) return std::nullopt;
            if (!inner->is_code()) invalid("splice of a term of type " + to_string(*inner));
            return inner->code_type();
          },
          [&](const CCCode::Prim &n) -> std::optional<ObjType> {
            for (const auto &a : n.args) check_cc_code(ctx, *a, ObjType::int_());
            return prim_result(n.op);
          },
      },
      term.node);
}

void check_cc_code(const TypingContext &ctx, const CCCode &term, const ObjType &expected) {
  if (const auto *lam = std::get_if<CCCode::Lam>(&term.node)) {
    if (!expected.is_fun()) invalid("object lambda checked against " + to_string(expected));
    check_cc_code(ctx.with_object(lam->param, expected.param()), *lam->body, expected.result());
    return;
  }
  if (const auto *s = std::get_if<CCCode::Splice>(&term.node)) {
    check_cc_meta(ctx, *s->term, MetaType::code(expected));
    return;
  }
  expect_same(expected, type_cc_code(ctx, term), "code term");
}

}  // namespace mgtlc
