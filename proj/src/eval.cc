#include "mgtlc/eval.h"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "mgtlc/compile.h"
#include "mgtlc/typecheck.h"

namespace mgtlc {

std::string to_string(ValueKind kind) {
  switch (kind) {
    case ValueKind::Const:
      return "constant";
    case ValueKind::Lam:
      return "lambda";
    case ValueKind::Builtin:
      return "builtin";
    case ValueKind::Wrapped:
      return "wrapped";
    case ValueKind::QuotedCode:
      return "quoted code";
  }
  return "value";
}

std::optional<ValueKind> is_value(const CCMeta &term) {
  return std::visit(overloaded{
                        [](const CCMeta::Const &) -> std::optional<ValueKind> { return ValueKind::Const; },
                        [](const CCMeta::Lam &) -> std::optional<ValueKind> { return ValueKind::Lam; },
                        [](const CCMeta::Builtin &) -> std::optional<ValueKind> {
                          return ValueKind::Builtin;
                        },
                        [](const CCMeta::Quote &q) -> std::optional<ValueKind> {
                          if (q.body->has_splice) return std::nullopt;
                          return ValueKind::QuotedCode;
                        },
                        [](const CCMeta::Cast &c) -> std::optional<ValueKind> {
                          if (c.coercion->is_inert() && is_value(*c.term)) return ValueKind::Wrapped;
                          return std::nullopt;
                        },
                        [](const auto &) -> std::optional<ValueKind> { return std::nullopt; },
                    },
                    term.node);
}

namespace {

MetaStep stepped(CCMetaPtr next) { return {MetaStep::Kind::Stepped, std::move(next), {}}; }
MetaStep stuck(const std::string &why) { return {MetaStep::Kind::Stuck, nullptr, why}; }
MetaStep failed(const std::string &why) { return {MetaStep::Kind::Failed, nullptr, why}; }

CodeStep code_stepped(CCCodePtr next) { return {CodeStep::Kind::Stepped, std::move(next), {}}; }

std::optional<std::string> read_file(const std::string &base_dir, const std::string &path) {
  std::filesystem::path p(path);
  if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string trim(const std::string &s) {
  auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

MetaStep apply_builtin(const CCMeta::Builtin &fn, const CCMeta &arg) {
  const auto *c = arg.as<CCMeta::Const>();
  if (!c || c->value.type() != BaseType::String) return stuck("builtin applied to a non-string");
  const std::string &path = c->value.as_string();
  auto contents = read_file(fn.base_dir, path);
  if (!contents) return failed(fmt::format("{}: cannot read file \"{}\"", fn.name, path));
  if (fn.name == "read_and_quote") {
    std::string text = *contents;
    if (!text.empty() && text.back() == '\n') text.pop_back();
    if (!text.empty() && text.back() == '\r') text.pop_back();
    return stepped(cc::quote(cc::oconstant(Literal::string(std::move(text)))));
  }
  if (fn.name == "read_int") {
    std::string text = trim(*contents);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
      return failed(fmt::format("read_int: \"{}\" does not contain an integer", path));
    return stepped(cc::constant(Literal::integer(v)));
  }
  return stuck("unknown builtin " + fn.name);
}

std::int64_t wrap(std::uint64_t v) { return static_cast<std::int64_t>(v); }

MetaStep apply_prim(PrimOp op, const CCMeta &a, const CCMeta &b) {
  const auto *x = a.as<CCMeta::Const>();
  const auto *y = b.as<CCMeta::Const>();
  if (!x || !y || x->value.type() != BaseType::Int || y->value.type() != BaseType::Int)
    return stuck("primitive applied to non-integers");
  auto l = static_cast<std::uint64_t>(x->value.as_int());
  auto r = static_cast<std::uint64_t>(y->value.as_int());
  switch (op) {
    case PrimOp::Add:
      return stepped(cc::constant(Literal::integer(wrap(l + r))));
    case PrimOp::Sub:
      return stepped(cc::constant(Literal::integer(wrap(l - r))));
    case PrimOp::Mul:
      return stepped(cc::constant(Literal::integer(wrap(l * r))));
    case PrimOp::Lt:
      return stepped(cc::constant(Literal::boolean(x->value.as_int() < y->value.as_int())));
    case PrimOp::Gt:
      return stepped(cc::constant(Literal::boolean(x->value.as_int() > y->value.as_int())));
  }
  return stuck("unknown primitive");
}

// Applies a cast whose subject is already a value and whose coercion is not
// inert.
MetaStep apply_cast(const CCMetaPtr &value, const Coercion &c) {
  return std::visit(
      overloaded{
          [&](const Coercion::Id &) { return stepped(value); },
          [&](const Coercion::CodeIdStar &) { return stepped(value); },
          [&](const Coercion::CodeIdT &) { return stepped(value); },
          [&](const Coercion::Seq &s) { return stepped(cc::cast(cc::cast(value, s.first), s.second)); },
          [&](const Coercion::Proj &p) {
            const auto *inner = value->as<CCMeta::Cast>();
            const Coercion::Inj *inj = inner ? inner->coercion->as<Coercion::Inj>() : nullptr;
            if (!inj) return stuck("projection from a value that is not an injection");
            if (inj->ground == p.ground) return stepped(inner->term);
            return stepped(cc::blame(p.label, BlameCause{p.ground, inj->ground}));
          },
          [&](const Coercion::CodeProj &p) {
            const auto *inner = value->as<CCMeta::Cast>();
            const Coercion::CodeInj *inj = inner ? inner->coercion->as<Coercion::CodeInj>() : nullptr;
            if (!inj) return stuck("code projection from a value that is not a code injection");
            if (inj->type == p.type) return stepped(inner->term);
            return stepped(cc::blame(p.label, BlameCause{MetaType::code(p.type), MetaType::code(inj->type)}));
          },
          [&](const auto &) { return stuck("inert coercion treated as a redex"); },
      },
      c.node);
}

// Steps the subterm in an evaluation frame. Returns nullopt if the subterm
// is already a value; otherwise the step of the whole term, with `rebuild`
// plugging the reduct back into the frame and blame escaping it.
template <class Rebuild>
std::optional<MetaStep> step_in_frame(const CCMetaPtr &sub, Rebuild rebuild) {
  if (sub->as<CCMeta::Blame>()) return stepped(sub);
  if (is_value(*sub)) return std::nullopt;
  MetaStep r = step_meta(sub);
  if (r.kind == MetaStep::Kind::Stepped) return stepped(rebuild(std::move(r.next)));
  if (r.kind == MetaStep::Kind::IsValue) return std::nullopt;
  return r;
}

}  // namespace

MetaStep step_meta(const CCMetaPtr &term) {
  if (is_value(*term)) return {MetaStep::Kind::IsValue, term, {}};
  return std::visit(
      overloaded{
          [&](const CCMeta::Blame &) -> MetaStep { return {MetaStep::Kind::IsBlame, term, {}}; },
          [&](const CCMeta::Var &v) { return stuck("free variable " + v.name); },
          [&](const CCMeta::App &n) -> MetaStep {
            if (auto r = step_in_frame(n.fn, [&](CCMetaPtr f) { return cc::app(std::move(f), n.arg); }))
              return *r;
            if (auto r = step_in_frame(n.arg, [&](CCMetaPtr a) { return cc::app(n.fn, std::move(a)); }))
              return *r;
            if (const auto *lam = n.fn->as<CCMeta::Lam>()) return stepped(subst_meta(lam->body, lam->param, n.arg));
            if (const auto *c = n.fn->as<CCMeta::Cast>()) {
              if (const auto *f = c->coercion->as<Coercion::Fun>())
                return stepped(cc::cast(cc::app(c->term, cc::cast(n.arg, f->arg)), f->res));
            }
            if (const auto *b = n.fn->as<CCMeta::Builtin>()) return apply_builtin(*b, *n.arg);
            return stuck("application of a non-function value");
          },
          [&](const CCMeta::Cast &n) -> MetaStep {
            if (auto r = step_in_frame(n.term, [&](CCMetaPtr t) { return cc::cast(std::move(t), n.coercion); }))
              return *r;
            return apply_cast(n.term, *n.coercion);
          },
          [&](const CCMeta::Quote &n) -> MetaStep {
            if (const auto *s = n.body->as<CCCode::Splice>()) {
              if (s->term->as<CCMeta::Blame>()) return stepped(s->term);
            }
            CodeStep r = step_code(n.body);
            switch (r.kind) {
              case CodeStep::Kind::Stepped:
                return stepped(cc::quote(std::move(r.next)));
              case CodeStep::Kind::Failed:
                return failed(r.message);
              case CodeStep::Kind::Stuck:
                return stuck(r.message);
              case CodeStep::Kind::IsSpliceFree:
              case CodeStep::Kind::SplicedBlame:
                break;
            }
            return stuck("quote body neither steps nor is splice-free");
          },
          [&](const CCMeta::Prim &n) -> MetaStep {
            for (std::size_t i = 0; i < n.args.size(); ++i) {
              auto r = step_in_frame(n.args[i], [&](CCMetaPtr a) {
                auto args = n.args;
                args[i] = std::move(a);
                return cc::prim(n.op, std::move(args));
              });
              if (r) return *r;
            }
            if (n.args.size() != 2) return stuck("primitive with wrong arity");
            return apply_prim(n.op, *n.args[0], *n.args[1]);
          },
          [&](const CCMeta::If &n) -> MetaStep {
            if (auto r = step_in_frame(
                    n.cond, [&](CCMetaPtr c) { return cc::if_(std::move(c), n.then_branch, n.else_branch); }))
              return *r;
            const auto *c = n.cond->as<CCMeta::Const>();
            if (!c || c->value.type() != BaseType::Bool) return stuck("if on a non-boolean");
            return stepped(c->value.as_bool() ? n.then_branch : n.else_branch);
          },
          [&](const auto &) { return stuck("no reduction rule applies"); },
      },
      term->node);
}

namespace {

// Steps the first child that contains a splice. `children` lists the
// children in evaluation order; `rebuild` replaces the i-th one.
template <class Rebuild>
CodeStep step_children(const std::vector<CCCodePtr> &children, Rebuild rebuild) {
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (!children[i]->has_splice) continue;
    CodeStep r = step_code(children[i]);
    switch (r.kind) {
      case CodeStep::Kind::Stepped:
        return code_stepped(rebuild(i, std::move(r.next)));
      case CodeStep::Kind::SplicedBlame:
        return code_stepped(children[i]);
      default:
        return r;
    }
  }
  return {CodeStep::Kind::IsSpliceFree, nullptr, {}};
}

}  // namespace

CodeStep step_code(const CCCodePtr &term) {
  if (!term->has_splice) return {CodeStep::Kind::IsSpliceFree, term, {}};
  return std::visit(
      overloaded{
          [&](const CCCode::Splice &n) -> CodeStep {
            if (n.term->as<CCMeta::Blame>()) return {CodeStep::Kind::SplicedBlame, term, {}};
            MetaStep r = step_meta(n.term);
            switch (r.kind) {
              case MetaStep::Kind::Stepped:
                return code_stepped(cc::splice(std::move(r.next)));
              case MetaStep::Kind::IsValue:
                if (const auto *q = n.term->as<CCMeta::Quote>()) return code_stepped(q->body);
                return {CodeStep::Kind::Stuck, nullptr, "splice of a value that is not quoted code"};
              case MetaStep::Kind::IsBlame:
                return {CodeStep::Kind::SplicedBlame, term, {}};
              case MetaStep::Kind::Stuck:
                return {CodeStep::Kind::Stuck, nullptr, r.message};
              case MetaStep::Kind::Failed:
                return {CodeStep::Kind::Failed, nullptr, r.message};
            }
            return {CodeStep::Kind::Stuck, nullptr, "unreachable"};
          },
          [&](const CCCode::Lam &n) {
            return step_children({n.body}, [&](std::size_t, CCCodePtr b) { return cc::olam(n.param, std::move(b)); });
          },
          [&](const CCCode::App &n) {
            return step_children({n.fn, n.arg}, [&](std::size_t i, CCCodePtr c) {
              return i == 0 ? cc::oapp(std::move(c), n.arg) : cc::oapp(n.fn, std::move(c));
            });
          },
          [&](const CCCode::Ann &n) {
            return step_children({n.term}, [&](std::size_t, CCCodePtr t) { return cc::oann(std::move(t), n.type); });
          },
          [&](const CCCode::Prim &n) {
            return step_children(n.args, [&](std::size_t i, CCCodePtr a) {
              auto args = n.args;
              args[i] = std::move(a);
              return cc::oprim(n.op, std::move(args));
            });
          },
          [&](const auto &) -> CodeStep { return {CodeStep::Kind::IsSpliceFree, term, {}}; },
      },
      term->node);
}

EvalResult run_compiled(const CCMetaPtr &term, const ObjType &type, std::uint64_t fuel,
                        const StepObserver &observer) {
  CCMetaPtr current = term;
  for (std::uint64_t steps = 0;; ++steps) {
    if (observer) observer(steps, current);
    if (const auto *b = current->as<CCMeta::Blame>()) return {EvalResult::Blame{b->label, b->cause}, steps};
    if (auto kind = is_value(*current)) {
      if (const auto *q = current->as<CCMeta::Quote>()) return {EvalResult::Code{q->body, type}, steps};
      return {EvalResult::Stuck{current, "value of type Code is not quoted code (" + to_string(*kind) + ")"},
              steps};
    }
    if (fuel != 0 && steps >= fuel) return {EvalResult::Timeout{}, steps};
    MetaStep r = step_meta(current);
    switch (r.kind) {
      case MetaStep::Kind::Stepped:
        current = std::move(r.next);
        break;
      case MetaStep::Kind::Failed:
        return {EvalResult::RuntimeError{r.message}, steps};
      default:
        return {EvalResult::Stuck{current, r.message}, steps};
    }
  }
}

namespace {

std::pair<CCMetaPtr, ObjType> compile_program(const MetaTerm &term) {
  MetaType type = type_meta(TypingContext{}, term);
  if (!type.is_code())
    throw TypeError(TypeErrorKind::AnnotationMismatch, term.span,
                    fmt::format("a program must produce code of a known type Code T, but this has type {}; "
                                "ascribe it, e.g. `(e : Code Int)`",
                                to_string(type)),
                    "Code T", to_string(type));
  auto [compiled, _] = compile_validated(TypingContext{}, term);
  return {compiled, type.code_type()};
}

}  // namespace

EvalResult meta_eval(const MetaTerm &term, std::uint64_t fuel) {
  auto [compiled, type] = compile_program(term);
  return run_compiled(compiled, type, fuel);
}

MetaType validate_snapshot(const CCMeta &term, const ObjType &type) {
  MetaType want = MetaType::code(type);
  auto got = type_cc_meta(TypingContext{}, term);
  if (got) {
    if (!(*got == want))
      throw ValidationError(fmt::format("snapshot has type {}, expected {}: {}", to_string(*got),
                                        to_string(want), to_string(term)));
    return *got;
  }
  check_cc_meta(TypingContext{}, term, want);
  return want;
}

Trace trace(const MetaTerm &term, std::uint64_t fuel) {
  auto [compiled, type] = compile_program(term);
  std::vector<TraceEntry> entries;
  auto observe = [&](std::uint64_t, const CCMetaPtr &t) {
    entries.push_back({t, validate_snapshot(*t, type)});
  };
  EvalResult result = run_compiled(compiled, type, fuel, observe);
  return {std::move(entries), std::move(result)};
}

}  // namespace mgtlc
