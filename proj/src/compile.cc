#include "mgtlc/compile.h"

#include <functional>

#include <fmt/format.h>

#include "mgtlc/coercion.h"
#include "mgtlc/typecheck.h"

namespace mgtlc {

namespace {

CCMetaPtr cast_to(CCMetaPtr term, const MetaType &from, const MetaType &to, const BlameLabel &label) {
  return cc::cast(std::move(term), coerce(from, to, label));
}

}  // namespace

std::pair<CCMetaPtr, MetaType> compile_meta(const TypingContext &ctx, const MetaTerm &term) {
  return std::visit(
      overloaded{
          [&](const MetaTerm::Var &n) -> std::pair<CCMetaPtr, MetaType> {
            return {cc::var(n.name), type_meta(ctx, term)};
          },
          [&](const MetaTerm::Const &n) -> std::pair<CCMetaPtr, MetaType> {
            return {cc::constant(n.value), MetaType::base(n.value.type())};
          },
          [&](const MetaTerm::Lam &n) -> std::pair<CCMetaPtr, MetaType> {
            auto [body, result] = compile_meta(ctx.with_meta(n.param, n.annot), *n.body);
            return {cc::lam(n.param, n.annot, std::move(body)), MetaType::fun(n.annot, result)};
          },
          [&](const MetaTerm::App &n) -> std::pair<CCMetaPtr, MetaType> {
            auto [fn, fn_type] = compile_meta(ctx, *n.fn);
            auto [arg, arg_type] = compile_meta(ctx, *n.arg);
            if (fn_type.is_star()) {
              auto head = cast_to(std::move(fn), fn_type,
                                  MetaType::fun(MetaType::star(), MetaType::star()), n.label);
              return {cc::app(std::move(head), cast_to(std::move(arg), arg_type, MetaType::star(), n.label)),
                      MetaType::star()};
            }
            if (!fn_type.is_fun()) throw InternalError("compile: application head is not a function");
            return {cc::app(std::move(fn), cast_to(std::move(arg), arg_type, fn_type.param(), n.label)),
                    fn_type.result()};
          },
          [&](const MetaTerm::Quote &n) -> std::pair<CCMetaPtr, MetaType> {
            auto [body, type] = compile_obj(ctx, *n.body);
            return {cc::quote(std::move(body)), MetaType::code(type)};
          },
          [&](const MetaTerm::Prim &n) -> std::pair<CCMetaPtr, MetaType> {
            std::vector<CCMetaPtr> args;
            for (const auto &a : n.args) {
              auto [c, t] = compile_meta(ctx, *a);
              args.push_back(cast_to(std::move(c), t, MetaType::int_(), n.label));
            }
            return {cc::prim(n.op, std::move(args)), lift(prim_result(n.op))};
          },
          [&](const MetaTerm::If &n) -> std::pair<CCMetaPtr, MetaType> {
            auto [cond, cond_type] = compile_meta(ctx, *n.cond);
            auto [then_c, then_type] = compile_meta(ctx, *n.then_branch);
            auto [else_c, else_type] = compile_meta(ctx, *n.else_branch);
            MetaType result = then_type == else_type ? then_type : MetaType::star();
            return {cc::if_(cast_to(std::move(cond), cond_type, MetaType::boolean(), n.label),
                            cast_to(std::move(then_c), then_type, result, n.label),
                            cast_to(std::move(else_c), else_type, result, n.label)),
                    result};
          },
          [&](const MetaTerm::Builtin &n) -> std::pair<CCMetaPtr, MetaType> {
            return {cc::builtin(n.name, n.base_dir), type_meta(ctx, term)};
          },
      },
      term.node);
}

std::pair<CCCodePtr, ObjType> compile_obj(const TypingContext &ctx, const ObjTerm &term,
                                          const std::optional<ObjType> &expected) {
  if (expected) {
    if (const auto *lam = std::get_if<ObjTerm::Lam>(&term.node)) {
      if (!expected->is_fun()) throw InternalError("compile: lambda checked at a non-function type");
      auto [body, _] =
          compile_obj(ctx.with_object(lam->param, expected->param()), *lam->body, expected->result());
      return {cc::olam(lam->param, std::move(body)), *expected};
    }
    if (const auto *splice = std::get_if<ObjTerm::Splice>(&term.node)) {
      auto [payload, payload_type] = compile_meta(ctx, *splice->term);
      return {cc::splice(cast_to(std::move(payload), payload_type, MetaType::code(*expected), splice->label)),
              *expected};
    }
    auto [code, type] = compile_obj(ctx, term);
    if (!(type == *expected)) throw InternalError("compile: check-infer type mismatch");
    return {std::move(code), type};
  }
  return std::visit(
      overloaded{
          [&](const ObjTerm::Var &) -> std::pair<CCCodePtr, ObjType> {
            const auto &name = std::get<ObjTerm::Var>(term.node).name;
            return {cc::ovar(name), synth_obj(ctx, term)};
          },
          [&](const ObjTerm::Const &n) -> std::pair<CCCodePtr, ObjType> {
            return {cc::oconstant(n.value), ObjType::base(n.value.type())};
          },
          [&](const ObjTerm::Lam &) -> std::pair<CCCodePtr, ObjType> {
            throw InternalError("compile: object lambda in synthesis position");
          },
          [&](const ObjTerm::Splice &) -> std::pair<CCCodePtr, ObjType> {
            throw InternalError("compile: splice in synthesis position");
          },
          [&](const ObjTerm::App &n) -> std::pair<CCCodePtr, ObjType> {
            auto [fn, fn_type] = compile_obj(ctx, *n.fn);
            if (!fn_type.is_fun()) throw InternalError("compile: object application of a non-function");
            auto [arg, _] = compile_obj(ctx, *n.arg, fn_type.param());
            return {cc::oapp(std::move(fn), std::move(arg)), fn_type.result()};
          },
          [&](const ObjTerm::Ann &n) -> std::pair<CCCodePtr, ObjType> {
            auto [inner, _] = compile_obj(ctx, *n.term, n.type);
            return {cc::oann(std::move(inner), n.type), n.type};
          },
          [&](const ObjTerm::Prim &n) -> std::pair<CCCodePtr, ObjType> {
            std::vector<CCCodePtr> args;
            for (const auto &a : n.args) args.push_back(compile_obj(ctx, *a, ObjType::int_()).first);
            return {cc::oprim(n.op, std::move(args)), prim_result(n.op)};
          },
      },
      term.node);
}

std::pair<CCMetaPtr, MetaType> compile_validated(const TypingContext &ctx, const MetaTerm &term) {
  auto result = compile_meta(ctx, term);
  auto validated = type_cc_meta(ctx, *result.first);
  if (validated) {
    if (!(*validated == result.second))
      throw ValidationError(fmt::format("compiled term has type {} but the source has type {}",
                                        to_string(*validated), to_string(result.second)));
  } else {
    check_cc_meta(ctx, *result.first, result.second);
  }
  return result;
}

std::size_t count_casts(const CCMeta &term) {
  std::size_t n = 0;
  std::function<void(const CCMeta &)> meta;
  std::function<void(const CCCode &)> code;
  meta = [&](const CCMeta &t) {
    std::visit(overloaded{
                   [&](const CCMeta::Lam &x) { meta(*x.body); },
                   [&](const CCMeta::App &x) {
                     meta(*x.fn);
                     meta(*x.arg);
                   },
                   [&](const CCMeta::Quote &x) { code(*x.body); },
                   [&](const CCMeta::Cast &x) {
                     ++n;
                     meta(*x.term);
                   },
                   [&](const CCMeta::Prim &x) {
                     for (const auto &a : x.args) meta(*a);
                   },
                   [&](const CCMeta::If &x) {
                     meta(*x.cond);
                     meta(*x.then_branch);
                     meta(*x.else_branch);
                   },
                   [](const auto &) {},
               },
               t.node);
  };
  code = [&](const CCCode &t) {
    std::visit(overloaded{
                   [&](const CCCode::Lam &x) { code(*x.body); },
                   [&](const CCCode::App &x) {
                     code(*x.fn);
                     code(*x.arg);
                   },
                   [&](const CCCode::Ann &x) { code(*x.term); },
                   [&](const CCCode::Splice &x) { meta(*x.term); },
                   [&](const CCCode::Prim &x) {
                     for (const auto &a : x.args) code(*a);
                   },
                   [](const auto &) {},
               },
               t.node);
  };
  meta(term);
  return n;
}

}  // namespace mgtlc
