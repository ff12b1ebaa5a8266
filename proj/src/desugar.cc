#include "mgtlc/desugar.h"

#include <algorithm>
#include <deque>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "mgtlc/lexer.h"
#include "mgtlc/typecheck.h"

namespace mgtlc {

namespace fs = std::filesystem;

namespace {

// The name bound by the lambda that an ascription `(e : A)` becomes. Its
// body is just this variable, so it cannot capture anything.
const char *const kAscribed = "v";

MetaPtr ascribe(MetaPtr term, const MetaType &type, const BlameLabel &label, const SourceSpan &span) {
  return meta::app(meta::lam(kAscribed, type, meta::var(kAscribed, span), span), std::move(term), label, span);
}

class Desugarer {
 public:
  explicit Desugarer(std::string base_dir) : base_dir_(std::move(base_dir)) {}

  MetaPtr expr(const SurfaceExpr &e, const TypingContext &ctx) {
    return std::visit(
        overloaded{
            [&](const SurfaceExpr::Var &n) {
              if (!ctx.lookup(n.name) && find_builtin(n.name)) return meta::builtin(n.name, base_dir_, e.span);
              return meta::var(n.name, e.span);
            },
            [&](const SurfaceExpr::Lit &n) { return meta::constant(n.value, e.span); },
            [&](const SurfaceExpr::Fun &n) { return lambdas(n.params, 0, *n.body, ctx, e.span); },
            [&](const SurfaceExpr::App &n) {
              return meta::app(expr(*n.fn, ctx), expr(*n.arg, ctx), n.label, e.span);
            },
            [&](const SurfaceExpr::Let &n) {
              return let(n.name, n.params, n.annot, *n.rhs, n.label, n.result_label, ctx, e.span,
                         [&](const TypingContext &inner) { return expr(*n.body, inner); });
            },
            [&](const SurfaceExpr::If &n) {
              return meta::if_(expr(*n.cond, ctx), expr(*n.then_branch, ctx), expr(*n.else_branch, ctx), n.label,
                               e.span);
            },
            [&](const SurfaceExpr::Prim &n) {
              return meta::prim(n.op, {expr(*n.lhs, ctx), expr(*n.rhs, ctx)}, n.label, e.span);
            },
            [&](const SurfaceExpr::Ascribe &n) { return ascribe(expr(*n.term, ctx), n.type, n.label, e.span); },
            [&](const SurfaceExpr::Quote &n) { return meta::quote(obj(*n.body, ctx, std::nullopt), e.span); },
        },
        e.node);
  }

  /// `let name params [: A] = rhs` around a body built in the extended
  /// context.
  template <class Body>
  MetaPtr let(const std::string &name, const std::vector<SurfaceParam> &params,
              const std::optional<MetaType> &annot, const SurfaceExpr &rhs, const BlameLabel &label,
              const std::optional<BlameLabel> &result_label, const TypingContext &ctx, const SourceSpan &span,
              Body body) {
    MetaType bound = MetaType::star();
    MetaPtr value;
    if (params.empty()) {
      if (annot) bound = *annot;
      value = expr(rhs, ctx);
    } else {
      value = lambdas(params, 0, rhs, ctx, rhs.span, annot ? &*annot : nullptr,
                      result_label ? &*result_label : &label);
      if (annot) {
        bound = *annot;
        for (auto it = params.rbegin(); it != params.rend(); ++it)
          bound = MetaType::fun(it->annot.value_or(MetaType::star()), bound);
      }
    }
    MetaPtr inner = body(ctx.with_meta(name, bound));
    return meta::app(meta::lam(name, bound, std::move(inner), span), std::move(value), label, span);
  }

  MetaPtr lambdas(const std::vector<SurfaceParam> &params, std::size_t i, const SurfaceExpr &body,
                  const TypingContext &ctx, const SourceSpan &span, const MetaType *result = nullptr,
                  const BlameLabel *label = nullptr) {
    if (i == params.size()) {
      MetaPtr b = expr(body, ctx);
      if (result) return ascribe(std::move(b), *result, *label, body.span);
      return b;
    }
    const SurfaceParam &p = params[i];
    MetaType annot = p.annot.value_or(MetaType::star());
    return meta::lam(p.name, annot, lambdas(params, i + 1, body, ctx.with_meta(p.name, annot), span, result, label),
                     span);
  }

  ObjPtr obj(const SurfaceObj &o, const TypingContext &ctx, const std::optional<ObjType> &expected) {
    return std::visit(
        overloaded{
            [&](const SurfaceObj::Var &n) { return obj::var(n.name, o.span); },
            [&](const SurfaceObj::Lit &n) { return obj::constant(n.value, o.span); },
            [&](const SurfaceObj::Lam &n) {
              if (!n.annot) {
                // Without an expected type the parameter's type is unknown;
                // it is bound as a metalanguage ★ so that nothing synthesized
                // for an enclosing annotated lambda can rely on it.
                TypingContext inner = expected && expected->is_fun()
                                          ? ctx.with_object(n.param, expected->param())
                                          : ctx.with_meta(n.param, MetaType::star());
                std::optional<ObjType> body_expected;
                if (expected && expected->is_fun()) body_expected = expected->result();
                return obj::lam(n.param, obj(*n.body, inner, body_expected), o.span);
              }
              return annotated_lambda(o, n, ctx, expected);
            },
            [&](const SurfaceObj::App &n) {
              ObjPtr fn = obj(*n.fn, ctx, std::nullopt);
              std::optional<ObjType> arg_expected;
              if (auto t = try_synth(ctx, *fn); t && t->is_fun()) arg_expected = t->param();
              return obj::app(std::move(fn), obj(*n.arg, ctx, arg_expected), o.span);
            },
            [&](const SurfaceObj::Ann &n) { return obj::ann(obj(*n.term, ctx, n.type), n.type, o.span); },
            [&](const SurfaceObj::Splice &n) { return obj::splice(expr(*n.term, ctx), n.label, o.span); },
            [&](const SurfaceObj::Prim &n) {
              return obj::prim(n.op, {obj(*n.lhs, ctx, ObjType::int_()), obj(*n.rhs, ctx, ObjType::int_())},
                               o.span);
            },
        },
        o.node);
  }

 private:
  static std::optional<ObjType> try_synth(const TypingContext &ctx, const ObjTerm &t) {
    try {
      return synth_obj(ctx, t);
    } catch (const TypeError &) {
      return std::nullopt;
    }
  }

  ObjPtr annotated_lambda(const SurfaceObj &o, const SurfaceObj::Lam &n, const TypingContext &ctx,
                          const std::optional<ObjType> &expected) {
    const ObjType &param = *n.annot;
    TypingContext inner = ctx.with_object(n.param, param);
    std::optional<ObjType> body_expected;
    if (expected && expected->is_fun() && expected->param() == param) body_expected = expected->result();
    ObjPtr body = obj(*n.body, inner, body_expected);
    ObjType result = param;
    try {
      result = synth_obj(inner, *body);
    } catch (const TypeError &err) {
      if (!body_expected)
        throw FrontendError("desugar-error", o.span,
                            fmt::format("annotated-object-lambda body fails to synthesize: {}; annotate the "
                                        "whole lambda instead, e.g. `(lam {} -> ... : {} -> T)`",
                                        err.what(), n.param, to_string(param)));
      result = *body_expected;
    }
    return obj::ann(obj::lam(n.param, std::move(body), o.span), ObjType::fun(param, result), o.span);
  }

  std::string base_dir_;
};

std::string read_text(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string dir_of(const std::string &file) {
  fs::path dir = fs::path(file).parent_path();
  return dir.empty() ? std::string(".") : dir.string();
}

struct Unit {
  std::string file;
  SurfaceProgram program;
};

class Loader {
 public:
  LoadedProgram load(const std::string &main_file, const std::optional<std::string> &main_source) {
    visit(main_file, main_source, SourceSpan{});
    const Unit &main = units_.back();
    if (!main.program.final_expr)
      throw FrontendError("syntax-error", SourceSpan{main_file, 1, 1, 1, 1},
                          "the main file has no final expression to evaluate");
    LoadedProgram out;
    out.term = build(0);
    out.sources = std::move(sources_);
    out.label_count = labels_.minted();
    return out;
  }

 private:
  void visit(const std::string &file, const std::optional<std::string> &text, const SourceSpan &site) {
    std::string key = fs::weakly_canonical(fs::path(file)).string();
    if (std::find(stack_.begin(), stack_.end(), key) != stack_.end())
      throw FrontendError("import-error", site, fmt::format("import cycle through `{}`", file));
    if (done_.count(key)) return;
    std::string source;
    if (text) {
      source = *text;
    } else {
      try {
        source = read_text(file);
      } catch (const std::exception &) {
        throw FrontendError("import-error", site, fmt::format("cannot read `{}`", file));
      }
    }
    sources_[file] = source;
    stack_.push_back(key);
    SurfaceProgram prog = parse_program(source, file, labels_);
    for (const auto &imp : prog.imports) {
      fs::path target = fs::path(imp.path);
      if (target.is_relative()) target = (fs::path(dir_of(file)) / target).lexically_normal();
      visit(target.string(), std::nullopt, imp.span);
    }
    stack_.pop_back();
    done_.insert(key);
    if (!stack_.empty() && prog.final_expr)
      throw FrontendError("import-error", prog.final_expr->span,
                          fmt::format("imported file `{}` must contain only definitions", file));
    units_.push_back({file, std::move(prog)});
    for (const auto &item : units_.back().program.items) items_.push_back({&item, dir_of(file)});
  }

  MetaPtr build(std::size_t i, const TypingContext &ctx = TypingContext{}) {
    if (i == items_.size()) {
      const Unit &main = units_.back();
      return Desugarer(dir_of(main.file)).expr(*main.program.final_expr, ctx);
    }
    const TopLevelLet &item = *items_[i].item;
    Desugarer d(items_[i].base_dir);
    return d.let(item.name, item.params, item.annot, *item.rhs, item.label, item.result_label, ctx, item.span,
                 [&](const TypingContext &inner) { return build(i + 1, inner); });
  }

  struct Item {
    const TopLevelLet *item;
    std::string base_dir;
  };

  LabelMinter labels_;
  SourceMap sources_;
  std::vector<std::string> stack_;
  std::set<std::string> done_;
  // A deque keeps the items_ pointers valid as units are appended.
  std::deque<Unit> units_;
  std::vector<Item> items_;
};

}  // namespace

MetaPtr desugar_expr(const SurfaceExpr &expr, const std::string &base_dir, const TypingContext &ctx) {
  return Desugarer(base_dir).expr(expr, ctx);
}

ObjPtr desugar_object(const SurfaceObj &o) { return Desugarer(".").obj(o, TypingContext{}, std::nullopt); }

LoadedProgram load_program(const std::string &path) { return Loader().load(path, std::nullopt); }

LoadedProgram load_source(const std::string &source, const std::string &file) {
  return Loader().load(file, source);
}

ObjPtr parse_object_term(const std::string &source) {
  LabelMinter labels;
  return desugar_object(*parse_object(source, "<object>", labels));
}

}  // namespace mgtlc
