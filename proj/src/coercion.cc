#include "mgtlc/coercion.h"

#include <fmt/format.h>

namespace mgtlc {

namespace coercion {
CoercionPtr id(MetaType atomic) {
  if (!atomic.is_atomic()) throw InternalError("id coercion on non-atomic type " + to_string(atomic));
  return std::make_shared<const Coercion>(Coercion::Id{std::move(atomic)});
}
CoercionPtr inj(MetaType ground) {
  if (!ground.is_ground()) throw InternalError("injection from non-ground type " + to_string(ground));
  return std::make_shared<const Coercion>(Coercion::Inj{std::move(ground)});
}
CoercionPtr proj(MetaType ground, BlameLabel label) {
  if (!ground.is_ground()) throw InternalError("projection to non-ground type " + to_string(ground));
  return std::make_shared<const Coercion>(Coercion::Proj{std::move(ground), std::move(label)});
}
CoercionPtr fun(CoercionPtr arg, CoercionPtr res) {
  return std::make_shared<const Coercion>(Coercion::Fun{std::move(arg), std::move(res)});
}
CoercionPtr seq(CoercionPtr first, CoercionPtr second) {
  return std::make_shared<const Coercion>(Coercion::Seq{std::move(first), std::move(second)});
}
CoercionPtr code_id_star() { return std::make_shared<const Coercion>(Coercion::CodeIdStar{}); }
CoercionPtr code_id(ObjType t) { return std::make_shared<const Coercion>(Coercion::CodeIdT{std::move(t)}); }
CoercionPtr code_inj(ObjType t) { return std::make_shared<const Coercion>(Coercion::CodeInj{std::move(t)}); }
CoercionPtr code_proj(ObjType t, BlameLabel label) {
  return std::make_shared<const Coercion>(Coercion::CodeProj{std::move(t), std::move(label)});
}
}  // namespace coercion

CoercionType coercion_type(const Coercion &c) {
  return std::visit(
      overloaded{
          [](const Coercion::Id &n) { return CoercionType{n.atomic, n.atomic}; },
          [](const Coercion::Inj &n) { return CoercionType{n.ground, MetaType::star()}; },
          [](const Coercion::Proj &n) { return CoercionType{MetaType::star(), n.ground}; },
          [](const Coercion::Fun &n) {
            // The argument coercion runs backwards: c : B => A, d : A' => B'.
            CoercionType arg = coercion_type(*n.arg);
            CoercionType res = coercion_type(*n.res);
            return CoercionType{MetaType::fun(arg.target, res.source),
                                MetaType::fun(arg.source, res.target)};
          },
          [](const Coercion::Seq &n) {
            CoercionType first = coercion_type(*n.first);
            CoercionType second = coercion_type(*n.second);
            if (!(first.target == second.source))
              throw InternalError(fmt::format("ill-composed coercion sequence: {} then {}",
                                              to_string(first.target), to_string(second.source)));
            return CoercionType{first.source, second.target};
          },
          [](const Coercion::CodeIdStar &) {
            return CoercionType{MetaType::code_star(), MetaType::code_star()};
          },
          [](const Coercion::CodeIdT &n) {
            return CoercionType{MetaType::code(n.type), MetaType::code(n.type)};
          },
          [](const Coercion::CodeInj &n) {
            return CoercionType{MetaType::code(n.type), MetaType::code_star()};
          },
          [](const Coercion::CodeProj &n) {
            return CoercionType{MetaType::code_star(), MetaType::code(n.type)};
          },
      },
      c.node);
}

MetaType ground_of(const MetaType &a) {
  switch (a.kind()) {
    case MetaType::Kind::Base:
      return a;
    case MetaType::Kind::Fun:
      return MetaType::fun(MetaType::star(), MetaType::star());
    case MetaType::Kind::Code:
    case MetaType::Kind::CodeStar:
      return MetaType::code_star();
    case MetaType::Kind::Star:
      break;
  }
  throw InternalError("ground_of(★) is undefined");
}

CoercionPtr coerce(const MetaType &a, const MetaType &b, const BlameLabel &label) {
  using K = MetaType::Kind;
  if (a.is_base() && b.is_base() && a.base_type() == b.base_type()) return coercion::id(a);
  if (a.is_star() && b.is_star()) return coercion::id(a);
  if (a.is_star() && b.is_ground()) return coercion::proj(b, label);
  if (a.is_ground() && b.is_star()) return coercion::inj(a);
  if (a.is_star()) {
    MetaType g = ground_of(b);
    return coercion::seq(coerce(a, g, label), coerce(g, b, label));
  }
  if (b.is_star()) {
    MetaType g = ground_of(a);
    return coercion::seq(coerce(a, g, label), coerce(g, b, label));
  }
  if (a.is_fun() && b.is_fun())
    return coercion::fun(coerce(b.param(), a.param(), label), coerce(a.result(), b.result(), label));
  if (a.kind() == K::Code && b.kind() == K::Code && a.code_type() == b.code_type())
    return coercion::code_id(a.code_type());
  if (a.is_code_star() && b.is_code_star()) return coercion::code_id_star();
  if (a.is_code_star() && b.is_code()) return coercion::code_proj(b.code_type(), label);
  if (a.is_code() && b.is_code_star()) return coercion::code_inj(a.code_type());
  throw InternalError(fmt::format("coerce called on inconsistent types {} and {}", to_string(a),
                                  to_string(b)));
}

namespace {
void gather_labels(const Coercion &c, std::vector<BlameLabel> &out) {
  std::visit(overloaded{
                 [&](const Coercion::Proj &n) { out.push_back(n.label); },
                 [&](const Coercion::CodeProj &n) { out.push_back(n.label); },
                 [&](const Coercion::Fun &n) {
                   gather_labels(*n.arg, out);
                   gather_labels(*n.res, out);
                 },
                 [&](const Coercion::Seq &n) {
                   gather_labels(*n.first, out);
                   gather_labels(*n.second, out);
                 },
                 [](const auto &) {},
             },
             c.node);
}

std::string ground_name(const MetaType &g) {
  if (g.is_fun()) return "(★→★)";
  if (g.is_code_star()) return "Code★";
  return to_string(g);
}

std::string obj_name(const ObjType &t) { return t.is_fun() ? "(" + to_string(t) + ")" : to_string(t); }
}  // namespace

std::vector<BlameLabel> coercion_labels(const Coercion &c) {
  std::vector<BlameLabel> out;
  gather_labels(c, out);
  return out;
}

std::string to_string(const Coercion &c) {
  return std::visit(
      overloaded{
          [](const Coercion::Id &n) { return "id " + to_string(n.atomic); },
          [](const Coercion::Inj &n) { return ground_name(n.ground) + "!"; },
          [](const Coercion::Proj &n) { return ground_name(n.ground) + "?" + label_name(n.label); },
          [](const Coercion::Fun &n) {
            auto part = [](const Coercion &x) {
              return x.is<Coercion::Seq>() ? "(" + to_string(x) + ")" : to_string(x);
            };
            return "(" + part(*n.arg) + " → " + part(*n.res) + ")";
          },
          [](const Coercion::Seq &n) { return to_string(*n.first) + " ; " + to_string(*n.second); },
          [](const Coercion::CodeIdStar &) { return std::string("code-id★"); },
          [](const Coercion::CodeIdT &n) { return "code-id " + obj_name(n.type); },
          [](const Coercion::CodeInj &n) { return "code! " + obj_name(n.type); },
          [](const Coercion::CodeProj &n) {
            return "code?" + label_name(n.label) + " " + obj_name(n.type);
          },
      },
      c.node);
}

}  // namespace mgtlc
