#include "mgtlc/cc.h"

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

namespace mgtlc {

namespace cc {
namespace {
template <class T>
CCMetaPtr make_meta(T node, bool splice) {
  return std::make_shared<const CCMeta>(CCMeta::Node{std::move(node)}, splice);
}
template <class T>
CCCodePtr make_code(T node, bool splice) {
  return std::make_shared<const CCCode>(CCCode::Node{std::move(node)}, splice);
}
}  // namespace

CCMetaPtr var(std::string name) { return make_meta(CCMeta::Var{std::move(name)}, false); }
CCMetaPtr constant(Literal value) { return make_meta(CCMeta::Const{std::move(value)}, false); }
CCMetaPtr lam(std::string param, MetaType annot, CCMetaPtr body) {
  bool s = body->has_splice;
  return make_meta(CCMeta::Lam{std::move(param), std::move(annot), std::move(body)}, s);
}
CCMetaPtr app(CCMetaPtr fn, CCMetaPtr arg) {
  bool s = fn->has_splice || arg->has_splice;
  return make_meta(CCMeta::App{std::move(fn), std::move(arg)}, s);
}
CCMetaPtr quote(CCCodePtr body) {
  bool s = body->has_splice;
  return make_meta(CCMeta::Quote{std::move(body)}, s);
}
CCMetaPtr cast(CCMetaPtr term, CoercionPtr c) {
  bool s = term->has_splice;
  return make_meta(CCMeta::Cast{std::move(term), std::move(c)}, s);
}
CCMetaPtr blame(BlameLabel label, std::optional<BlameCause> cause) {
  return make_meta(CCMeta::Blame{std::move(label), std::move(cause)}, false);
}
CCMetaPtr prim(PrimOp op, std::vector<CCMetaPtr> args) {
  bool s = std::any_of(args.begin(), args.end(), [](const auto &a) { return a->has_splice; });
  return make_meta(CCMeta::Prim{op, std::move(args)}, s);
}
CCMetaPtr if_(CCMetaPtr cond, CCMetaPtr then_branch, CCMetaPtr else_branch) {
  bool s = cond->has_splice || then_branch->has_splice || else_branch->has_splice;
  return make_meta(CCMeta::If{std::move(cond), std::move(then_branch), std::move(else_branch)}, s);
}
CCMetaPtr builtin(std::string name, std::string base_dir) {
  return make_meta(CCMeta::Builtin{std::move(name), std::move(base_dir)}, false);
}

CCCodePtr ovar(std::string name) { return make_code(CCCode::Var{std::move(name)}, false); }
CCCodePtr oconstant(Literal value) { return make_code(CCCode::Const{std::move(value)}, false); }
CCCodePtr olam(std::string param, CCCodePtr body) {
  bool s = body->has_splice;
  return make_code(CCCode::Lam{std::move(param), std::move(body)}, s);
}
CCCodePtr oapp(CCCodePtr fn, CCCodePtr arg) {
  bool s = fn->has_splice || arg->has_splice;
  return make_code(CCCode::App{std::move(fn), std::move(arg)}, s);
}
CCCodePtr oann(CCCodePtr term, ObjType type) {
  bool s = term->has_splice;
  return make_code(CCCode::Ann{std::move(term), std::move(type)}, s);
}
CCCodePtr splice(CCMetaPtr term) { return make_code(CCCode::Splice{std::move(term)}, true); }
CCCodePtr oprim(PrimOp op, std::vector<CCCodePtr> args) {
  bool s = std::any_of(args.begin(), args.end(), [](const auto &a) { return a->has_splice; });
  return make_code(CCCode::Prim{op, std::move(args)}, s);
}
}  // namespace cc

namespace {

// Collects free names (bound = names bound on the path from the root) or,
// when `all` is set, every name mentioned anywhere including binders.
struct NameCollector {
  bool all = false;
  std::set<std::string> out;
  std::vector<std::string> bound;

  bool is_bound(const std::string &n) const {
    return std::find(bound.begin(), bound.end(), n) != bound.end();
  }
  void use(const std::string &n) {
    if (all || !is_bound(n)) out.insert(n);
  }
  void bind(const std::string &n) {
    if (all) out.insert(n);
    bound.push_back(n);
  }

  void meta(const CCMeta &t) {
    std::visit(overloaded{
                   [&](const CCMeta::Var &n) { use(n.name); },
                   [&](const CCMeta::Lam &n) {
                     bind(n.param);
                     meta(*n.body);
                     bound.pop_back();
                   },
                   [&](const CCMeta::App &n) {
                     meta(*n.fn);
                     meta(*n.arg);
                   },
                   [&](const CCMeta::Quote &n) { code(*n.body); },
                   [&](const CCMeta::Cast &n) { meta(*n.term); },
                   [&](const CCMeta::Prim &n) {
                     for (const auto &a : n.args) meta(*a);
                   },
                   [&](const CCMeta::If &n) {
                     meta(*n.cond);
                     meta(*n.then_branch);
                     meta(*n.else_branch);
                   },
                   [](const auto &) {},
               },
               t.node);
  }

  void code(const CCCode &t) {
    std::visit(overloaded{
                   [&](const CCCode::Var &n) { use(n.name); },
                   [&](const CCCode::Lam &n) {
                     bind(n.param);
                     code(*n.body);
                     bound.pop_back();
                   },
                   [&](const CCCode::App &n) {
                     code(*n.fn);
                     code(*n.arg);
                   },
                   [&](const CCCode::Ann &n) { code(*n.term); },
                   [&](const CCCode::Splice &n) { meta(*n.term); },
                   [&](const CCCode::Prim &n) {
                     for (const auto &a : n.args) code(*a);
                   },
                   [](const auto &) {},
               },
               t.node);
  }
};

std::set<std::string> all_names(const CCMeta &t) {
  NameCollector c;
  c.all = true;
  c.meta(t);
  return c.out;
}
std::set<std::string> all_names(const CCCode &t) {
  NameCollector c;
  c.all = true;
  c.code(t);
  return c.out;
}

std::string fresh_name(const std::string &base, const std::set<std::string> &avoid) {
  std::string stem = base;
  while (stem.size() > 1 && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  for (int i = 1;; ++i) {
    std::string candidate = fmt::format("{}{}", stem, i);
    if (!avoid.count(candidate)) return candidate;
  }
}

// Replaces free occurrences of `name`. In substitution mode only metalanguage
// variables are replaced by `value`; in rename mode variables of both stages
// become `rename_to`.
class Substituter {
 public:
  Substituter(std::string name, CCMetaPtr value)
      : name_(std::move(name)), value_(std::move(value)), value_fv_(free_vars(*value_)) {}
  Substituter(std::string from, std::string to)
      : name_(std::move(from)), rename_to_(std::move(to)), value_fv_{*rename_to_} {}

  CCMetaPtr meta(const CCMetaPtr &t) {
    return std::visit(
        overloaded{
            [&](const CCMeta::Var &n) -> CCMetaPtr {
              if (n.name != name_) return t;
              return rename_to_ ? cc::var(*rename_to_) : value_;
            },
            [&](const CCMeta::Lam &n) -> CCMetaPtr {
              if (n.param == name_) return t;
              auto [param, body] = under_binder(n.param, n.body);
              CCMetaPtr new_body = meta(body);
              if (new_body == n.body && param == n.param) return t;
              return cc::lam(param, n.annot, new_body);
            },
            [&](const CCMeta::App &n) -> CCMetaPtr {
              CCMetaPtr f = meta(n.fn), a = meta(n.arg);
              if (f == n.fn && a == n.arg) return t;
              return cc::app(f, a);
            },
            [&](const CCMeta::Quote &n) -> CCMetaPtr {
              CCCodePtr b = code(n.body);
              return b == n.body ? t : cc::quote(b);
            },
            [&](const CCMeta::Cast &n) -> CCMetaPtr {
              CCMetaPtr m = meta(n.term);
              return m == n.term ? t : cc::cast(m, n.coercion);
            },
            [&](const CCMeta::Prim &n) -> CCMetaPtr {
              std::vector<CCMetaPtr> args;
              bool changed = false;
              for (const auto &a : n.args) {
                args.push_back(meta(a));
                changed |= args.back() != a;
              }
              return changed ? cc::prim(n.op, std::move(args)) : t;
            },
            [&](const CCMeta::If &n) -> CCMetaPtr {
              CCMetaPtr c = meta(n.cond), a = meta(n.then_branch), b = meta(n.else_branch);
              if (c == n.cond && a == n.then_branch && b == n.else_branch) return t;
              return cc::if_(c, a, b);
            },
            [&](const auto &) -> CCMetaPtr { return t; },
        },
        t->node);
  }

  CCCodePtr code(const CCCodePtr &t) {
    return std::visit(
        overloaded{
            [&](const CCCode::Var &n) -> CCCodePtr {
              if (rename_to_ && n.name == name_) return cc::ovar(*rename_to_);
              return t;
            },
            [&](const CCCode::Lam &n) -> CCCodePtr {
              if (n.param == name_) return t;
              auto [param, body] = under_code_binder(n.param, n.body);
              CCCodePtr new_body = code(body);
              if (new_body == n.body && param == n.param) return t;
              return cc::olam(param, new_body);
            },
            [&](const CCCode::App &n) -> CCCodePtr {
              CCCodePtr f = code(n.fn), a = code(n.arg);
              if (f == n.fn && a == n.arg) return t;
              return cc::oapp(f, a);
            },
            [&](const CCCode::Ann &n) -> CCCodePtr {
              CCCodePtr m = code(n.term);
              return m == n.term ? t : cc::oann(m, n.type);
            },
            [&](const CCCode::Splice &n) -> CCCodePtr {
              CCMetaPtr m = meta(n.term);
              return m == n.term ? t : cc::splice(m);
            },
            [&](const CCCode::Prim &n) -> CCCodePtr {
              std::vector<CCCodePtr> args;
              bool changed = false;
              for (const auto &a : n.args) {
                args.push_back(code(a));
                changed |= args.back() != a;
              }
              return changed ? cc::oprim(n.op, std::move(args)) : t;
            },
            [&](const auto &) -> CCCodePtr { return t; },
        },
        t->node);
  }

 private:
  // A binder that would capture a free variable of the substituted value is
  // renamed first, provided the substitution can reach below it at all.
  std::pair<std::string, CCMetaPtr> under_binder(const std::string &param, const CCMetaPtr &body) {
    if (!value_fv_.count(param) || !free_vars(*body).count(name_)) return {param, body};
    std::set<std::string> avoid = all_names(*body);
    avoid.insert(value_fv_.begin(), value_fv_.end());
    avoid.insert(name_);
    std::string fresh = fresh_name(param, avoid);
    return {fresh, Substituter(param, fresh).meta(body)};
  }

  std::pair<std::string, CCCodePtr> under_code_binder(const std::string &param,
                                                      const CCCodePtr &body) {
    if (!value_fv_.count(param) || !free_vars(*body).count(name_)) return {param, body};
    std::set<std::string> avoid = all_names(*body);
    avoid.insert(value_fv_.begin(), value_fv_.end());
    avoid.insert(name_);
    std::string fresh = fresh_name(param, avoid);
    return {fresh, Substituter(param, fresh).code(body)};
  }

  std::string name_;
  CCMetaPtr value_;
  std::optional<std::string> rename_to_;
  std::set<std::string> value_fv_;
};

// Alpha-equivalence over a single shared binder stack for both stages.
struct AlphaEq {
  std::vector<std::string> left, right;

  bool same_var(const std::string &a, const std::string &b) const {
    auto ia = std::find(left.rbegin(), left.rend(), a);
    auto ib = std::find(right.rbegin(), right.rend(), b);
    bool fa = ia == left.rend(), fb = ib == right.rend();
    if (fa || fb) return fa && fb && a == b;
    return std::distance(left.rbegin(), ia) == std::distance(right.rbegin(), ib);
  }

  bool meta(const CCMeta &a, const CCMeta &b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        overloaded{
            [&](const CCMeta::Var &x) { return same_var(x.name, b.as<CCMeta::Var>()->name); },
            [&](const CCMeta::Const &x) { return x.value == b.as<CCMeta::Const>()->value; },
            [&](const CCMeta::Lam &x) {
              const auto &y = *b.as<CCMeta::Lam>();
              if (!(x.annot == y.annot)) return false;
              left.push_back(x.param);
              right.push_back(y.param);
              bool r = meta(*x.body, *y.body);
              left.pop_back();
              right.pop_back();
              return r;
            },
            [&](const CCMeta::App &x) {
              const auto &y = *b.as<CCMeta::App>();
              return meta(*x.fn, *y.fn) && meta(*x.arg, *y.arg);
            },
            [&](const CCMeta::Quote &x) { return code(*x.body, *b.as<CCMeta::Quote>()->body); },
            [&](const CCMeta::Cast &x) {
              const auto &y = *b.as<CCMeta::Cast>();
              return equal(*x.coercion, *y.coercion) && meta(*x.term, *y.term);
            },
            [&](const CCMeta::Blame &x) { return x.label == b.as<CCMeta::Blame>()->label; },
            [&](const CCMeta::Prim &x) {
              const auto &y = *b.as<CCMeta::Prim>();
              if (x.op != y.op || x.args.size() != y.args.size()) return false;
              for (std::size_t i = 0; i < x.args.size(); ++i)
                if (!meta(*x.args[i], *y.args[i])) return false;
              return true;
            },
            [&](const CCMeta::If &x) {
              const auto &y = *b.as<CCMeta::If>();
              return meta(*x.cond, *y.cond) && meta(*x.then_branch, *y.then_branch) &&
                     meta(*x.else_branch, *y.else_branch);
            },
            [&](const CCMeta::Builtin &x) {
              const auto &y = *b.as<CCMeta::Builtin>();
              return x.name == y.name && x.base_dir == y.base_dir;
            },
        },
        a.node);
  }

  bool code(const CCCode &a, const CCCode &b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        overloaded{
            [&](const CCCode::Var &x) { return same_var(x.name, b.as<CCCode::Var>()->name); },
            [&](const CCCode::Const &x) { return x.value == b.as<CCCode::Const>()->value; },
            [&](const CCCode::Lam &x) {
              const auto &y = *b.as<CCCode::Lam>();
              left.push_back(x.param);
              right.push_back(y.param);
              bool r = code(*x.body, *y.body);
              left.pop_back();
              right.pop_back();
              return r;
            },
            [&](const CCCode::App &x) {
              const auto &y = *b.as<CCCode::App>();
              return code(*x.fn, *y.fn) && code(*x.arg, *y.arg);
            },
            [&](const CCCode::Ann &x) {
              const auto &y = *b.as<CCCode::Ann>();
              return x.type == y.type && code(*x.term, *y.term);
            },
            [&](const CCCode::Splice &x) { return meta(*x.term, *b.as<CCCode::Splice>()->term); },
            [&](const CCCode::Prim &x) {
              const auto &y = *b.as<CCCode::Prim>();
              if (x.op != y.op || x.args.size() != y.args.size()) return false;
              for (std::size_t i = 0; i < x.args.size(); ++i)
                if (!code(*x.args[i], *y.args[i])) return false;
              return true;
            },
        },
        a.node);
  }
};

}  // namespace

std::set<std::string> free_vars(const CCMeta &term) {
  NameCollector c;
  c.meta(term);
  return c.out;
}

std::set<std::string> free_vars(const CCCode &term) {
  NameCollector c;
  c.code(term);
  return c.out;
}

CCMetaPtr subst_meta(const CCMetaPtr &body, const std::string &name, const CCMetaPtr &value) {
  return Substituter(name, value).meta(body);
}

CCMetaPtr rename_var(const CCMetaPtr &term, const std::string &from, const std::string &to) {
  if (from == to) return term;
  return Substituter(from, to).meta(term);
}

bool alpha_equiv(const CCMeta &a, const CCMeta &b) { return AlphaEq{}.meta(a, b); }
bool alpha_equiv(const CCCode &a, const CCCode &b) { return AlphaEq{}.code(a, b); }

bool equal(const Coercion &a, const Coercion &b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Coercion::Id &x) { return x.atomic == b.as<Coercion::Id>()->atomic; },
          [&](const Coercion::Inj &x) { return x.ground == b.as<Coercion::Inj>()->ground; },
          [&](const Coercion::Proj &x) {
            const auto &y = *b.as<Coercion::Proj>();
            return x.ground == y.ground && x.label == y.label;
          },
          [&](const Coercion::Fun &x) {
            const auto &y = *b.as<Coercion::Fun>();
            return equal(*x.arg, *y.arg) && equal(*x.res, *y.res);
          },
          [&](const Coercion::Seq &x) {
            const auto &y = *b.as<Coercion::Seq>();
            return equal(*x.first, *y.first) && equal(*x.second, *y.second);
          },
          [&](const Coercion::CodeIdStar &) { return true; },
          [&](const Coercion::CodeIdT &x) { return x.type == b.as<Coercion::CodeIdT>()->type; },
          [&](const Coercion::CodeInj &x) { return x.type == b.as<Coercion::CodeInj>()->type; },
          [&](const Coercion::CodeProj &x) {
            const auto &y = *b.as<Coercion::CodeProj>();
            return x.type == y.type && x.label == y.label;
          },
      },
      a.node);
}

std::size_t term_size(const CCMeta &term) {
  return std::visit(
      overloaded{
          [](const CCMeta::Lam &n) { return 1 + term_size(*n.body); },
          [](const CCMeta::App &n) { return 1 + term_size(*n.fn) + term_size(*n.arg); },
          [](const CCMeta::Quote &n) { return 1 + term_size(*n.body); },
          [](const CCMeta::Cast &n) { return 1 + term_size(*n.term); },
          [](const CCMeta::Prim &n) {
            std::size_t s = 1;
            for (const auto &a : n.args) s += term_size(*a);
            return s;
          },
          [](const CCMeta::If &n) {
            return 1 + term_size(*n.cond) + term_size(*n.then_branch) + term_size(*n.else_branch);
          },
          [](const auto &) -> std::size_t { return 1; },
      },
      term.node);
}

std::size_t term_size(const CCCode &term) {
  return std::visit(
      overloaded{
          [](const CCCode::Lam &n) { return 1 + term_size(*n.body); },
          [](const CCCode::App &n) { return 1 + term_size(*n.fn) + term_size(*n.arg); },
          [](const CCCode::Ann &n) { return 1 + term_size(*n.term); },
          [](const CCCode::Splice &n) { return 1 + term_size(*n.term); },
          [](const CCCode::Prim &n) {
            std::size_t s = 1;
            for (const auto &a : n.args) s += term_size(*a);
            return s;
          },
          [](const auto &) -> std::size_t { return 1; },
      },
      term.node);
}

namespace {
void labels_in(const CCMeta &t, std::vector<BlameLabel> &out);

void labels_in(const CCCode &t, std::vector<BlameLabel> &out) {
  std::visit(overloaded{
                 [&](const CCCode::Lam &n) { labels_in(*n.body, out); },
                 [&](const CCCode::App &n) {
                   labels_in(*n.fn, out);
                   labels_in(*n.arg, out);
                 },
                 [&](const CCCode::Ann &n) { labels_in(*n.term, out); },
                 [&](const CCCode::Splice &n) { labels_in(*n.term, out); },
                 [&](const CCCode::Prim &n) {
                   for (const auto &a : n.args) labels_in(*a, out);
                 },
                 [](const auto &) {},
             },
             t.node);
}

void labels_in(const CCMeta &t, std::vector<BlameLabel> &out) {
  std::visit(overloaded{
                 [&](const CCMeta::Lam &n) { labels_in(*n.body, out); },
                 [&](const CCMeta::App &n) {
                   labels_in(*n.fn, out);
                   labels_in(*n.arg, out);
                 },
                 [&](const CCMeta::Quote &n) { labels_in(*n.body, out); },
                 [&](const CCMeta::Cast &n) {
                   labels_in(*n.term, out);
                   auto ls = coercion_labels(*n.coercion);
                   out.insert(out.end(), ls.begin(), ls.end());
                 },
                 [&](const CCMeta::Blame &n) { out.push_back(n.label); },
                 [&](const CCMeta::Prim &n) {
                   for (const auto &a : n.args) labels_in(*a, out);
                 },
                 [&](const CCMeta::If &n) {
                   labels_in(*n.cond, out);
                   labels_in(*n.then_branch, out);
                   labels_in(*n.else_branch, out);
                 },
                 [](const auto &) {},
             },
             t.node);
}

// Printing. Applications and primitive operations are always parenthesised,
// so only lambdas, conditionals, and casts of compound terms need care.
bool meta_is_closed(const CCMeta &t) {
  return std::holds_alternative<CCMeta::Var>(t.node) ||
         std::holds_alternative<CCMeta::Const>(t.node) ||
         std::holds_alternative<CCMeta::App>(t.node) ||
         std::holds_alternative<CCMeta::Quote>(t.node) ||
         std::holds_alternative<CCMeta::Cast>(t.node) ||
         std::holds_alternative<CCMeta::Prim>(t.node) ||
         std::holds_alternative<CCMeta::Builtin>(t.node);
}

std::string meta_closed(const CCMeta &t) {
  std::string s = to_string(t);
  return meta_is_closed(t) ? s : "(" + s + ")";
}

std::string code_closed(const CCCode &t) {
  std::string s = to_string(t);
  return std::holds_alternative<CCCode::Lam>(t.node) ? "(" + s + ")" : s;
}
}  // namespace

std::vector<BlameLabel> cc_labels(const CCMeta &term) {
  std::vector<BlameLabel> out;
  labels_in(term, out);
  return out;
}

std::string to_string(const CCMeta &term) {
  return std::visit(
      overloaded{
          [](const CCMeta::Var &n) { return n.name; },
          [](const CCMeta::Const &n) { return to_string(n.value); },
          [](const CCMeta::Lam &n) {
            return fmt::format("λ{}:{}. {}", n.param, to_string(n.annot), to_string(*n.body));
          },
          [](const CCMeta::App &n) {
            return fmt::format("({} {})", meta_closed(*n.fn), meta_closed(*n.arg));
          },
          [](const CCMeta::Quote &n) { return fmt::format("≺{}≻", to_string(*n.body)); },
          [](const CCMeta::Cast &n) {
            return fmt::format("{}⟨{}⟩", meta_closed(*n.term), to_string(*n.coercion));
          },
          [](const CCMeta::Blame &n) { return "blame " + label_name(n.label); },
          [](const CCMeta::Prim &n) {
            if (n.args.size() != 2) return std::string("<bad prim>");
            return fmt::format("({} {} {})", meta_closed(*n.args[0]), to_string(n.op),
                               meta_closed(*n.args[1]));
          },
          [](const CCMeta::If &n) {
            return fmt::format("if {} then {} else {}", meta_closed(*n.cond),
                               meta_closed(*n.then_branch), meta_closed(*n.else_branch));
          },
          [](const CCMeta::Builtin &n) { return n.name; },
      },
      term.node);
}

std::string to_string(const CCCode &term) {
  return std::visit(
      overloaded{
          [](const CCCode::Var &n) { return n.name; },
          [](const CCCode::Const &n) { return to_string(n.value); },
          [](const CCCode::Lam &n) { return fmt::format("λ{}. {}", n.param, to_string(*n.body)); },
          [](const CCCode::App &n) {
            return fmt::format("({} {})", code_closed(*n.fn), code_closed(*n.arg));
          },
          [](const CCCode::Ann &n) {
            return fmt::format("({} : {})", to_string(*n.term), to_string(n.type));
          },
          [](const CCCode::Splice &n) { return "~" + meta_closed(*n.term); },
          [](const CCCode::Prim &n) {
            if (n.args.size() != 2) return std::string("<bad prim>");
            return fmt::format("({} {} {})", code_closed(*n.args[0]), to_string(n.op),
                               code_closed(*n.args[1]));
          },
      },
      term.node);
}

}  // namespace mgtlc
