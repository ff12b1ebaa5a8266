#include "mgtlc/syntax.h"

#include <fmt/format.h>

namespace mgtlc {

SourceSpan cover(const SourceSpan &from, const SourceSpan &to) {
  if (!from.valid()) return to;
  if (!to.valid()) return from;
  return SourceSpan{from.file, from.line, from.col, to.end_line, to.end_col};
}

std::string to_string(const SourceSpan &span) {
  if (!span.valid()) return span.file.empty() ? "<unknown>" : span.file;
  return fmt::format("{}:{}:{}", span.file, span.line, span.col);
}

std::string label_name(const BlameLabel &l) { return fmt::format("ℓ{}", l.ordinal); }

std::string describe(const BlameLabel &l) {
  return fmt::format("{} ({})", label_name(l), to_string(l.span));
}

Literal Literal::nat(std::uint64_t v) {
  Literal l(BaseType::Nat);
  l.number_ = static_cast<std::int64_t>(v);
  return l;
}

Literal Literal::integer(std::int64_t v) {
  Literal l(BaseType::Int);
  l.number_ = v;
  return l;
}

Literal Literal::boolean(bool v) {
  Literal l(BaseType::Bool);
  l.number_ = v ? 1 : 0;
  return l;
}

Literal Literal::unit() { return Literal(BaseType::Unit); }

Literal Literal::string(std::string v) {
  Literal l(BaseType::String);
  l.text_ = std::move(v);
  return l;
}

static std::string quote_string(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out += c;
    }
  }
  return out + "\"";
}

std::string to_string(const Literal &lit) {
  switch (lit.type()) {
    case BaseType::Nat:
      return fmt::format("{}n", lit.as_nat());
    case BaseType::Int:
      return fmt::format("{}", lit.as_int());
    case BaseType::Bool:
      return lit.as_bool() ? "true" : "false";
    case BaseType::Unit:
      return "unit";
    case BaseType::String:
      return quote_string(lit.as_string());
  }
  return "?";
}

std::string to_string(PrimOp op) {
  switch (op) {
    case PrimOp::Add:
      return "+";
    case PrimOp::Sub:
      return "-";
    case PrimOp::Mul:
      return "*";
    case PrimOp::Lt:
      return "<";
    case PrimOp::Gt:
      return ">";
  }
  return "?";
}

ObjType prim_result(PrimOp op) {
  switch (op) {
    case PrimOp::Lt:
    case PrimOp::Gt:
      return ObjType::boolean();
    default:
      return ObjType::int_();
  }
}

std::optional<BuiltinInfo> find_builtin(const std::string &name) {
  const MetaType string_t = MetaType::base(BaseType::String);
  if (name == "read_and_quote")
    return BuiltinInfo{name, MetaType::fun(string_t, MetaType::code(ObjType::string()))};
  if (name == "read_int") return BuiltinInfo{name, MetaType::fun(string_t, MetaType::int_())};
  return std::nullopt;
}

namespace meta {
MetaPtr var(std::string name, SourceSpan span) {
  return std::make_shared<const MetaTerm>(MetaTerm{MetaTerm::Var{std::move(name)}, std::move(span)});
}
MetaPtr constant(Literal value, SourceSpan span) {
  return std::make_shared<const MetaTerm>(MetaTerm{MetaTerm::Const{std::move(value)}, std::move(span)});
}
MetaPtr lam(std::string param, MetaType annot, MetaPtr body, SourceSpan span) {
  return std::make_shared<const MetaTerm>(
      MetaTerm{MetaTerm::Lam{std::move(param), std::move(annot), std::move(body)}, std::move(span)});
}
MetaPtr app(MetaPtr fn, MetaPtr arg, BlameLabel label, SourceSpan span) {
  return std::make_shared<const MetaTerm>(
      MetaTerm{MetaTerm::App{std::move(fn), std::move(arg), std::move(label)}, std::move(span)});
}
MetaPtr quote(ObjPtr body, SourceSpan span) {
  return std::make_shared<const MetaTerm>(MetaTerm{MetaTerm::Quote{std::move(body)}, std::move(span)});
}
MetaPtr prim(PrimOp op, std::vector<MetaPtr> args, BlameLabel label, SourceSpan span) {
  return std::make_shared<const MetaTerm>(
      MetaTerm{MetaTerm::Prim{op, std::move(args), std::move(label)}, std::move(span)});
}
MetaPtr if_(MetaPtr cond, MetaPtr then_branch, MetaPtr else_branch, BlameLabel label,
            SourceSpan span) {
  return std::make_shared<const MetaTerm>(
      MetaTerm{MetaTerm::If{std::move(cond), std::move(then_branch), std::move(else_branch),
                            std::move(label)},
               std::move(span)});
}
MetaPtr builtin(std::string name, std::string base_dir, SourceSpan span) {
  return std::make_shared<const MetaTerm>(
      MetaTerm{MetaTerm::Builtin{std::move(name), std::move(base_dir)}, std::move(span)});
}
}  // namespace meta

namespace obj {
ObjPtr var(std::string name, SourceSpan span) {
  return std::make_shared<const ObjTerm>(ObjTerm{ObjTerm::Var{std::move(name)}, std::move(span)});
}
ObjPtr constant(Literal value, SourceSpan span) {
  return std::make_shared<const ObjTerm>(ObjTerm{ObjTerm::Const{std::move(value)}, std::move(span)});
}
ObjPtr lam(std::string param, ObjPtr body, SourceSpan span) {
  return std::make_shared<const ObjTerm>(
      ObjTerm{ObjTerm::Lam{std::move(param), std::move(body)}, std::move(span)});
}
ObjPtr app(ObjPtr fn, ObjPtr arg, SourceSpan span) {
  return std::make_shared<const ObjTerm>(
      ObjTerm{ObjTerm::App{std::move(fn), std::move(arg)}, std::move(span)});
}
ObjPtr ann(ObjPtr term, ObjType type, SourceSpan span) {
  return std::make_shared<const ObjTerm>(
      ObjTerm{ObjTerm::Ann{std::move(term), std::move(type)}, std::move(span)});
}
ObjPtr splice(MetaPtr term, BlameLabel label, SourceSpan span) {
  return std::make_shared<const ObjTerm>(
      ObjTerm{ObjTerm::Splice{std::move(term), std::move(label)}, std::move(span)});
}
ObjPtr prim(PrimOp op, std::vector<ObjPtr> args, SourceSpan span) {
  return std::make_shared<const ObjTerm>(ObjTerm{ObjTerm::Prim{op, std::move(args)}, std::move(span)});
}
}  // namespace obj

bool splice_free(const ObjTerm &term) {
  return std::visit(
      overloaded{
          [](const ObjTerm::Var &) { return true; },
          [](const ObjTerm::Const &) { return true; },
          [](const ObjTerm::Lam &n) { return splice_free(*n.body); },
          [](const ObjTerm::App &n) { return splice_free(*n.fn) && splice_free(*n.arg); },
          [](const ObjTerm::Ann &n) { return splice_free(*n.term); },
          [](const ObjTerm::Splice &) { return false; },
          [](const ObjTerm::Prim &n) {
            for (const auto &a : n.args)
              if (!splice_free(*a)) return false;
            return true;
          },
      },
      term.node);
}

bool splice_free(const MetaTerm &term) {
  return std::visit(
      overloaded{
          [](const MetaTerm::Lam &n) { return splice_free(*n.body); },
          [](const MetaTerm::App &n) { return splice_free(*n.fn) && splice_free(*n.arg); },
          [](const MetaTerm::Quote &n) { return splice_free(*n.body); },
          [](const MetaTerm::Prim &n) {
            for (const auto &a : n.args)
              if (!splice_free(*a)) return false;
            return true;
          },
          [](const MetaTerm::If &n) {
            return splice_free(*n.cond) && splice_free(*n.then_branch) &&
                   splice_free(*n.else_branch);
          },
          [](const auto &) { return true; },
      },
      term.node);
}

std::size_t term_size(const MetaTerm &term) {
  return std::visit(
      overloaded{
          [](const MetaTerm::Lam &n) { return 1 + term_size(*n.body); },
          [](const MetaTerm::App &n) { return 1 + term_size(*n.fn) + term_size(*n.arg); },
          [](const MetaTerm::Quote &n) { return 1 + term_size(*n.body); },
          [](const MetaTerm::Prim &n) {
            std::size_t s = 1;
            for (const auto &a : n.args) s += term_size(*a);
            return s;
          },
          [](const MetaTerm::If &n) {
            return 1 + term_size(*n.cond) + term_size(*n.then_branch) + term_size(*n.else_branch);
          },
          [](const auto &) -> std::size_t { return 1; },
      },
      term.node);
}

std::size_t term_size(const ObjTerm &term) {
  return std::visit(
      overloaded{
          [](const ObjTerm::Lam &n) { return 1 + term_size(*n.body); },
          [](const ObjTerm::App &n) { return 1 + term_size(*n.fn) + term_size(*n.arg); },
          [](const ObjTerm::Ann &n) { return 1 + term_size(*n.term); },
          [](const ObjTerm::Splice &n) { return 1 + term_size(*n.term); },
          [](const ObjTerm::Prim &n) {
            std::size_t s = 1;
            for (const auto &a : n.args) s += term_size(*a);
            return s;
          },
          [](const auto &) -> std::size_t { return 1; },
      },
      term.node);
}

namespace {
void collect(const MetaTerm &t, std::vector<BlameLabel> &out);

void collect(const ObjTerm &t, std::vector<BlameLabel> &out) {
  std::visit(overloaded{
                 [&](const ObjTerm::Lam &n) { collect(*n.body, out); },
                 [&](const ObjTerm::App &n) {
                   collect(*n.fn, out);
                   collect(*n.arg, out);
                 },
                 [&](const ObjTerm::Ann &n) { collect(*n.term, out); },
                 [&](const ObjTerm::Splice &n) {
                   out.push_back(n.label);
                   collect(*n.term, out);
                 },
                 [&](const ObjTerm::Prim &n) {
                   for (const auto &a : n.args) collect(*a, out);
                 },
                 [](const auto &) {},
             },
             t.node);
}

void collect(const MetaTerm &t, std::vector<BlameLabel> &out) {
  std::visit(overloaded{
                 [&](const MetaTerm::Lam &n) { collect(*n.body, out); },
                 [&](const MetaTerm::App &n) {
                   out.push_back(n.label);
                   collect(*n.fn, out);
                   collect(*n.arg, out);
                 },
                 [&](const MetaTerm::Quote &n) { collect(*n.body, out); },
                 [&](const MetaTerm::Prim &n) {
                   out.push_back(n.label);
                   for (const auto &a : n.args) collect(*a, out);
                 },
                 [&](const MetaTerm::If &n) {
                   out.push_back(n.label);
                   collect(*n.cond, out);
                   collect(*n.then_branch, out);
                   collect(*n.else_branch, out);
                 },
                 [](const auto &) {},
             },
             t.node);
}
}  // namespace

std::vector<BlameLabel> collect_labels(const MetaTerm &term) {
  std::vector<BlameLabel> out;
  collect(term, out);
  return out;
}

TypingContext TypingContext::with_object(std::string name, ObjType t) const {
  Binding b{std::move(name), Binding::Stage::Object, std::move(t), std::nullopt};
  return TypingContext(std::make_shared<const Node>(Node{std::move(b), head_}));
}

TypingContext TypingContext::with_meta(std::string name, MetaType t) const {
  Binding b{std::move(name), Binding::Stage::Meta, std::nullopt, std::move(t)};
  return TypingContext(std::make_shared<const Node>(Node{std::move(b), head_}));
}

const Binding *TypingContext::lookup(const std::string &name) const {
  for (const Node *n = head_.get(); n; n = n->next.get())
    if (n->binding.name == name) return &n->binding;
  return nullptr;
}

bool TypingContext::empty_m() const {
  for (const Node *n = head_.get(); n; n = n->next.get())
    if (n->binding.is_meta()) return false;
  return true;
}

std::vector<Binding> TypingContext::entries() const {
  std::vector<Binding> out;
  for (const Node *n = head_.get(); n; n = n->next.get()) out.push_back(n->binding);
  return {out.rbegin(), out.rend()};
}

}  // namespace mgtlc
