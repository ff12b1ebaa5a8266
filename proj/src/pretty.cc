#include "mgtlc/pretty.h"

#include <fmt/format.h>

namespace mgtlc {

namespace {

bool needs_parens_as_operand(const ObjTerm &t) {
  if (std::holds_alternative<ObjTerm::Lam>(t.node)) return true;
  if (const auto *c = std::get_if<ObjTerm::Const>(&t.node))
    return c->value.type() == BaseType::Int && c->value.as_int() < 0;
  return false;
}

std::string pretty(const ObjTerm &t);

std::string operand(const ObjTerm &t) {
  std::string s = pretty(t);
  return needs_parens_as_operand(t) ? "(" + s + ")" : s;
}

std::string pretty(const ObjTerm &t) {
  return std::visit(
      overloaded{
          [](const ObjTerm::Var &n) { return n.name; },
          [](const ObjTerm::Const &n) { return to_string(n.value); },
          [](const ObjTerm::Lam &n) { return fmt::format("λ{}. {}", n.param, pretty(*n.body)); },
          [](const ObjTerm::App &n) { return fmt::format("({} {})", operand(*n.fn), operand(*n.arg)); },
          [](const ObjTerm::Ann &n) {
            return fmt::format("({} : {})", pretty(*n.term), to_string(n.type));
          },
          [](const ObjTerm::Prim &n) -> std::string {
            if (n.args.size() != 2) throw InternalError("primitive with wrong arity");
            return fmt::format("({} {} {})", operand(*n.args[0]), to_string(n.op), operand(*n.args[1]));
          },
          [](const ObjTerm::Splice &) -> std::string {
            throw InternalError("pretty_obj called on a term containing a splice");
          },
      },
      t.node);
}

std::string meta_closed(const MetaTerm &t) {
  std::string s = to_string(t);
  bool open = std::holds_alternative<MetaTerm::Lam>(t.node) ||
              std::holds_alternative<MetaTerm::If>(t.node);
  return open ? "(" + s + ")" : s;
}

std::string obj_closed(const ObjTerm &t) {
  std::string s = to_string(t);
  return std::holds_alternative<ObjTerm::Lam>(t.node) ? "(" + s + ")" : s;
}

}  // namespace

std::string pretty_obj(const ObjTerm &term) { return pretty(term); }

ObjPtr to_obj_term(const CCCode &code) {
  return std::visit(
      overloaded{
          [](const CCCode::Var &n) { return obj::var(n.name); },
          [](const CCCode::Const &n) { return obj::constant(n.value); },
          [](const CCCode::Lam &n) { return obj::lam(n.param, to_obj_term(*n.body)); },
          [](const CCCode::App &n) { return obj::app(to_obj_term(*n.fn), to_obj_term(*n.arg)); },
          [](const CCCode::Ann &n) { return obj::ann(to_obj_term(*n.term), n.type); },
          [](const CCCode::Prim &n) {
            std::vector<ObjPtr> args;
            for (const auto &a : n.args) args.push_back(to_obj_term(*a));
            return obj::prim(n.op, std::move(args));
          },
          [](const CCCode::Splice &) -> ObjPtr {
            throw InternalError("to_obj_term called on code containing a splice");
          },
      },
      code.node);
}

CCCodePtr to_cc_code(const ObjTerm &term) {
  return std::visit(
      overloaded{
          [](const ObjTerm::Var &n) { return cc::ovar(n.name); },
          [](const ObjTerm::Const &n) { return cc::oconstant(n.value); },
          [](const ObjTerm::Lam &n) { return cc::olam(n.param, to_cc_code(*n.body)); },
          [](const ObjTerm::App &n) { return cc::oapp(to_cc_code(*n.fn), to_cc_code(*n.arg)); },
          [](const ObjTerm::Ann &n) { return cc::oann(to_cc_code(*n.term), n.type); },
          [](const ObjTerm::Prim &n) {
            std::vector<CCCodePtr> args;
            for (const auto &a : n.args) args.push_back(to_cc_code(*a));
            return cc::oprim(n.op, std::move(args));
          },
          [](const ObjTerm::Splice &) -> CCCodePtr {
            throw InternalError("to_cc_code called on a term containing a splice");
          },
      },
      term.node);
}

bool alpha_equiv(const ObjTerm &a, const ObjTerm &b) {
  return alpha_equiv(*to_cc_code(a), *to_cc_code(b));
}

std::string to_string(const MetaTerm &term) {
  return std::visit(
      overloaded{
          [](const MetaTerm::Var &n) { return n.name; },
          [](const MetaTerm::Const &n) { return to_string(n.value); },
          [](const MetaTerm::Lam &n) {
            return fmt::format("λ{}:{}. {}", n.param, to_string(n.annot), to_string(*n.body));
          },
          [](const MetaTerm::App &n) {
            return fmt::format("({} {})^{}", meta_closed(*n.fn), meta_closed(*n.arg),
                               label_name(n.label));
          },
          [](const MetaTerm::Quote &n) { return fmt::format("≺{}≻", to_string(*n.body)); },
          [](const MetaTerm::Prim &n) {
            if (n.args.size() != 2) return std::string("<bad prim>");
            return fmt::format("({} {} {})", meta_closed(*n.args[0]), to_string(n.op),
                               meta_closed(*n.args[1]));
          },
          [](const MetaTerm::If &n) {
            return fmt::format("if {} then {} else {}", meta_closed(*n.cond),
                               meta_closed(*n.then_branch), meta_closed(*n.else_branch));
          },
          [](const MetaTerm::Builtin &n) { return n.name; },
      },
      term.node);
}

std::string to_string(const ObjTerm &term) {
  return std::visit(
      overloaded{
          [](const ObjTerm::Var &n) { return n.name; },
          [](const ObjTerm::Const &n) { return to_string(n.value); },
          [](const ObjTerm::Lam &n) { return fmt::format("λ{}. {}", n.param, to_string(*n.body)); },
          [](const ObjTerm::App &n) {
            return fmt::format("({} {})", obj_closed(*n.fn), obj_closed(*n.arg));
          },
          [](const ObjTerm::Ann &n) {
            return fmt::format("({} : {})", to_string(*n.term), to_string(n.type));
          },
          [](const ObjTerm::Splice &n) {
            return fmt::format("~^{} {}", label_name(n.label), meta_closed(*n.term));
          },
          [](const ObjTerm::Prim &n) {
            if (n.args.size() != 2) return std::string("<bad prim>");
            return fmt::format("({} {} {})", obj_closed(*n.args[0]), to_string(n.op),
                               obj_closed(*n.args[1]));
          },
      },
      term.node);
}

}  // namespace mgtlc
