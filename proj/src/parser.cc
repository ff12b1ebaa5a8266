#include "mgtlc/parser.h"

#include <charconv>
#include <limits>

#include <fmt/format.h>

#include "mgtlc/lexer.h"

namespace mgtlc {

namespace {

std::optional<ObjType> lower(const MetaType &t) {
  switch (t.kind()) {
    case MetaType::Kind::Base:
      return ObjType::base(t.base_type());
    case MetaType::Kind::Fun: {
      auto p = lower(t.param());
      auto r = lower(t.result());
      if (!p || !r) return std::nullopt;
      return ObjType::fun(*p, *r);
    }
    default:
      return std::nullopt;
  }
}

std::optional<BaseType> base_type_named(const std::string &name) {
  if (name == "Int") return BaseType::Int;
  if (name == "Nat") return BaseType::Nat;
  if (name == "Bool") return BaseType::Bool;
  if (name == "Unit") return BaseType::Unit;
  if (name == "String") return BaseType::String;
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string file, LabelMinter *labels)
      : toks_(std::move(tokens)), file_(std::move(file)), labels_(labels) {}

  SurfaceProgram program() {
    SurfaceProgram prog;
    prog.file = file_;
    while (peek().kind == TokenKind::Import) {
      const Token &kw = take();
      const Token &path = expect(TokenKind::String, "a quoted path after `import`");
      prog.imports.push_back({path.text, cover(kw.span, path.span)});
    }
    for (;;) {
      layout_ = false;
      if (peek().kind == TokenKind::End) break;
      const Token &first = peek();
      if (first.kind != TokenKind::Let) {
        layout_ = false;
        prog.final_expr = expr();
        break;
      }
      item_line_ = first.span.line;
      layout_ = true;
      take();
      LetHeader h = let_header();
      if (peek().kind == TokenKind::In) {
        take();
        layout_ = false;
        SurfaceExprPtr body = expr();
        prog.final_expr = make_let(std::move(h), std::move(body), first.span);
        break;
      }
      if (peek_raw().kind != TokenKind::End && !at_boundary())
        fail(fmt::format("unexpected {} after a top-level definition; start the next definition in "
                         "column 1 or indent continuation lines",
                         to_string(peek_raw().kind)),
             peek_raw().span);
      prog.items.push_back(TopLevelLet{h.name, std::move(h.params), std::move(h.annot), h.rhs, h.label,
                                       h.result_label, cover(first.span, h.rhs->span)});
    }
    layout_ = false;
    if (peek().kind != TokenKind::End)
      fail(fmt::format("unexpected {} after the final expression", to_string(peek().kind)), peek().span);
    return prog;
  }

  SurfaceExprPtr whole_expression() {
    auto e = expr();
    expect(TokenKind::End, "end of input");
    return e;
  }

  SurfaceObjPtr whole_object() {
    auto o = oexpr();
    expect(TokenKind::End, "end of input");
    return o;
  }

  MetaType whole_type() {
    auto t = type();
    expect(TokenKind::End, "end of input");
    return t;
  }

 private:
  struct LetHeader {
    std::string name;
    std::vector<SurfaceParam> params;
    std::optional<MetaType> annot;
    SurfaceExprPtr rhs;
    BlameLabel label;
    std::optional<BlameLabel> result_label;
  };

  // -- token access ---------------------------------------------------------

  const Token &peek_raw() const { return toks_[pos_]; }

  bool at_boundary() const {
    const Token &t = toks_[pos_];
    return layout_ && t.kind != TokenKind::End && t.span.col == 1 && t.span.line > item_line_;
  }

  const Token &peek() {
    if (at_boundary()) {
      boundary_ = Token{TokenKind::End, {}, toks_[pos_].span};
      return boundary_;
    }
    return toks_[pos_];
  }

  const Token &peek2() const { return toks_[std::min(pos_ + 1, toks_.size() - 1)]; }

  const Token &take() {
    const Token &t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    last_ = t.span;
    return t;
  }

  [[noreturn]] void fail(const std::string &msg, const SourceSpan &span) const {
    throw FrontendError("syntax-error", span, msg);
  }

  const Token &expect(TokenKind kind, const std::string &what) {
    const Token &t = peek();
    if (t.kind != kind) fail(fmt::format("expected {}, found {}", what, describe(t)), t.span);
    return take();
  }

  static std::string describe(const Token &t) {
    if (t.kind == TokenKind::Ident) return fmt::format("`{}`", t.text);
    if (t.kind == TokenKind::Int) return fmt::format("`{}`", t.text);
    return to_string(t.kind);
  }

  SourceSpan since(const SourceSpan &start) const { return cover(start, last_); }

  // -- types ----------------------------------------------------------------

  MetaType type() {
    MetaType lhs = type_atom();
    if (peek().kind == TokenKind::Arrow) {
      take();
      return MetaType::fun(lhs, type());
    }
    return lhs;
  }

  MetaType type_atom() {
    const Token &t = peek();
    switch (t.kind) {
      case TokenKind::Star:
        take();
        return MetaType::star();
      case TokenKind::LParen: {
        take();
        MetaType inner = type();
        expect(TokenKind::RParen, "`)`");
        return inner;
      }
      case TokenKind::Ident: {
        if (t.text == "Dyn") {
          take();
          return MetaType::star();
        }
        if (t.text == "Code") {
          take();
          if (peek().kind == TokenKind::Star ||
              (peek().kind == TokenKind::Ident && peek().text == "Dyn")) {
            take();
            return MetaType::code_star();
          }
          SourceSpan start = peek().span;
          MetaType payload = type_atom();
          auto obj = lower(payload);
          if (!obj)
            fail(fmt::format("`Code` needs an object type (base types and arrows), found {}",
                             to_string(payload)),
                 since(start));
          return MetaType::code(*obj);
        }
        if (auto b = base_type_named(t.text)) {
          take();
          return MetaType::base(*b);
        }
        fail(fmt::format("unknown type `{}`", t.text), t.span);
      }
      default:
        fail(fmt::format("expected a type, found {}", describe(t)), t.span);
    }
  }

  ObjType object_type() {
    SourceSpan start = peek().span;
    MetaType t = type();
    auto obj = lower(t);
    if (!obj)
      fail(fmt::format("object code types cannot mention ★ or Code, found {}", to_string(t)), since(start));
    return *obj;
  }

  // -- literals -------------------------------------------------------------

  Literal integer_literal(const Token &t, bool negative) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    constexpr auto max = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
    if (ec != std::errc() || v > max + (negative ? 1 : 0)) fail("integer literal out of range", t.span);
    if (negative) return Literal::integer(static_cast<std::int64_t>(0 - v));
    return Literal::integer(static_cast<std::int64_t>(v));
  }

  std::optional<Literal> literal() {
    const Token &t = peek();
    switch (t.kind) {
      case TokenKind::Int:
        return integer_literal(take(), false);
      case TokenKind::Nat: {
        const Token &n = take();
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(n.text.data(), n.text.data() + n.text.size(), v);
        if (ec != std::errc() || v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
          fail("natural-number literal out of range", n.span);
        return Literal::nat(v);
      }
      case TokenKind::String:
        return Literal::string(take().text);
      case TokenKind::True:
        take();
        return Literal::boolean(true);
      case TokenKind::False:
        take();
        return Literal::boolean(false);
      case TokenKind::UnitLit:
        take();
        return Literal::unit();
      case TokenKind::Minus:
        if (peek2().kind == TokenKind::Int) {
          take();
          return integer_literal(take(), true);
        }
        return std::nullopt;
      default:
        return std::nullopt;
    }
  }

  // -- metalanguage ---------------------------------------------------------

  static SurfaceExprPtr node(SurfaceExpr::Node n, SourceSpan span) {
    return std::make_shared<const SurfaceExpr>(SurfaceExpr{std::move(n), std::move(span)});
  }

  std::vector<SurfaceParam> params() {
    std::vector<SurfaceParam> out;
    for (;;) {
      const Token &t = peek();
      if (t.kind == TokenKind::Ident) {
        take();
        out.push_back({t.text, std::nullopt, t.span});
      } else if (t.kind == TokenKind::LParen && peek2().kind == TokenKind::Ident) {
        SourceSpan start = take().span;
        const Token &name = take();
        expect(TokenKind::Colon, "`:` in a parameter annotation");
        MetaType annot = type();
        expect(TokenKind::RParen, "`)`");
        out.push_back({name.text, annot, since(start)});
      } else {
        return out;
      }
    }
  }

  LetHeader let_header() {
    LetHeader h;
    h.name = expect(TokenKind::Ident, "a name after `let`").text;
    h.params = params();
    if (peek().kind == TokenKind::Colon) {
      take();
      h.annot = type();
    }
    expect(TokenKind::Equals, "`=`");
    h.rhs = expr();
    h.label = labels_->mint(h.rhs->span);
    if (!h.params.empty() && h.annot) h.result_label = labels_->mint(h.rhs->span);
    return h;
  }

  SurfaceExprPtr make_let(LetHeader h, SurfaceExprPtr body, const SourceSpan &start) {
    SourceSpan span = cover(start, body->span);
    return node(SurfaceExpr::Let{std::move(h.name), std::move(h.params), std::move(h.annot), std::move(h.rhs),
                                 std::move(body), h.label, h.result_label},
                span);
  }

  SurfaceExprPtr expr() {
    const Token &t = peek();
    SourceSpan start = t.span;
    switch (t.kind) {
      case TokenKind::Let: {
        take();
        LetHeader h = let_header();
        expect(TokenKind::In, "`in`");
        SurfaceExprPtr body = expr();
        return make_let(std::move(h), std::move(body), start);
      }
      case TokenKind::Fun: {
        take();
        auto ps = params();
        if (ps.empty()) fail("`fun` needs at least one parameter", peek().span);
        expect(TokenKind::Arrow, "`->`");
        SurfaceExprPtr body = expr();
        return node(SurfaceExpr::Fun{std::move(ps), body}, cover(start, body->span));
      }
      case TokenKind::If: {
        take();
        SurfaceExprPtr c = expr();
        expect(TokenKind::Then, "`then`");
        SurfaceExprPtr a = expr();
        expect(TokenKind::Else, "`else`");
        SurfaceExprPtr b = expr();
        SourceSpan span = cover(start, b->span);
        return node(SurfaceExpr::If{c, a, b, labels_->mint(span)}, span);
      }
      default:
        return comparison();
    }
  }

  SurfaceExprPtr binary(PrimOp op, SurfaceExprPtr lhs, SurfaceExprPtr rhs) {
    SourceSpan span = cover(lhs->span, rhs->span);
    return node(SurfaceExpr::Prim{op, std::move(lhs), std::move(rhs), labels_->mint(span)}, span);
  }

  SurfaceExprPtr comparison() {
    SurfaceExprPtr lhs = additive();
    if (peek().kind == TokenKind::Less || peek().kind == TokenKind::Greater) {
      PrimOp op = take().kind == TokenKind::Less ? PrimOp::Lt : PrimOp::Gt;
      return binary(op, lhs, additive());
    }
    return lhs;
  }

  SurfaceExprPtr additive() {
    SurfaceExprPtr lhs = multiplicative();
    while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
      PrimOp op = take().kind == TokenKind::Plus ? PrimOp::Add : PrimOp::Sub;
      lhs = binary(op, lhs, multiplicative());
    }
    return lhs;
  }

  SurfaceExprPtr multiplicative() {
    SurfaceExprPtr lhs = application();
    while (peek().kind == TokenKind::Star) {
      take();
      lhs = binary(PrimOp::Mul, lhs, application());
    }
    return lhs;
  }

  bool starts_atom(const Token &t) const {
    switch (t.kind) {
      case TokenKind::Ident:
      case TokenKind::Int:
      case TokenKind::Nat:
      case TokenKind::String:
      case TokenKind::True:
      case TokenKind::False:
      case TokenKind::UnitLit:
      case TokenKind::LParen:
      case TokenKind::QuoteOpen:
      case TokenKind::Tilde:
        return true;
      default:
        return false;
    }
  }

  SurfaceExprPtr application() {
    SurfaceExprPtr fn = atom();
    while (starts_atom(peek())) {
      SurfaceExprPtr arg = atom();
      SourceSpan span = cover(fn->span, arg->span);
      fn = node(SurfaceExpr::App{fn, arg, labels_->mint(span)}, span);
    }
    return fn;
  }

  SurfaceExprPtr atom() {
    const Token &t = peek();
    SourceSpan start = t.span;
    if (auto lit = literal()) return node(SurfaceExpr::Lit{*lit}, since(start));
    switch (t.kind) {
      case TokenKind::Ident:
        take();
        return node(SurfaceExpr::Var{t.text}, t.span);
      case TokenKind::LParen: {
        take();
        SurfaceExprPtr inner = expr();
        if (peek().kind == TokenKind::Colon) {
          take();
          MetaType ty = type();
          expect(TokenKind::RParen, "`)`");
          SourceSpan span = since(start);
          return node(SurfaceExpr::Ascribe{inner, ty, labels_->mint(span)}, span);
        }
        expect(TokenKind::RParen, "`)`");
        return inner;
      }
      case TokenKind::QuoteOpen: {
        take();
        bool saved = layout_;
        layout_ = false;
        SurfaceObjPtr body = oexpr();
        layout_ = saved;
        expect(TokenKind::QuoteClose, "`|>` to close the quote");
        return node(SurfaceExpr::Quote{body}, since(start));
      }
      case TokenKind::Tilde:
        fail("a splice `~` can only appear inside quoted code `<| ... |>`", t.span);
      default:
        fail(fmt::format("expected an expression, found {}", describe(t)), t.span);
    }
  }

  // -- object language ------------------------------------------------------

  static SurfaceObjPtr onode(SurfaceObj::Node n, SourceSpan span) {
    return std::make_shared<const SurfaceObj>(SurfaceObj{std::move(n), std::move(span)});
  }

  SurfaceObjPtr oexpr() {
    const Token &t = peek();
    SourceSpan start = t.span;
    if (t.kind == TokenKind::Lam) {
      take();
      std::string name;
      std::optional<ObjType> annot;
      if (peek().kind == TokenKind::LParen) {
        take();
        name = expect(TokenKind::Ident, "a parameter name").text;
        expect(TokenKind::Colon, "`:` in a parameter annotation");
        annot = object_type();
        expect(TokenKind::RParen, "`)`");
      } else {
        name = expect(TokenKind::Ident, "a parameter name").text;
      }
      expect(TokenKind::Arrow, "`->`");
      SurfaceObjPtr body = oexpr();
      return onode(SurfaceObj::Lam{name, annot, body}, cover(start, body->span));
    }
    if (t.kind == TokenKind::Lambda) {
      take();
      std::string name = expect(TokenKind::Ident, "a parameter name").text;
      expect(TokenKind::Dot, "`.`");
      SurfaceObjPtr body = oexpr();
      return onode(SurfaceObj::Lam{name, std::nullopt, body}, cover(start, body->span));
    }
    return ocomparison();
  }

  SurfaceObjPtr obinary(PrimOp op, SurfaceObjPtr lhs, SurfaceObjPtr rhs) {
    SourceSpan span = cover(lhs->span, rhs->span);
    return onode(SurfaceObj::Prim{op, std::move(lhs), std::move(rhs)}, span);
  }

  SurfaceObjPtr ocomparison() {
    SurfaceObjPtr lhs = oadditive();
    if (peek().kind == TokenKind::Less || peek().kind == TokenKind::Greater) {
      PrimOp op = take().kind == TokenKind::Less ? PrimOp::Lt : PrimOp::Gt;
      return obinary(op, lhs, oadditive());
    }
    return lhs;
  }

  SurfaceObjPtr oadditive() {
    SurfaceObjPtr lhs = omultiplicative();
    while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
      PrimOp op = take().kind == TokenKind::Plus ? PrimOp::Add : PrimOp::Sub;
      lhs = obinary(op, lhs, omultiplicative());
    }
    return lhs;
  }

  SurfaceObjPtr omultiplicative() {
    SurfaceObjPtr lhs = oapplication();
    while (peek().kind == TokenKind::Star) {
      take();
      lhs = obinary(PrimOp::Mul, lhs, oapplication());
    }
    return lhs;
  }

  SurfaceObjPtr oapplication() {
    SurfaceObjPtr fn = oatom();
    while (starts_atom(peek()) && peek().kind != TokenKind::QuoteOpen) {
      SurfaceObjPtr arg = oatom();
      fn = onode(SurfaceObj::App{fn, arg}, cover(fn->span, arg->span));
    }
    return fn;
  }

  SurfaceObjPtr oatom() {
    const Token &t = peek();
    SourceSpan start = t.span;
    if (auto lit = literal()) return onode(SurfaceObj::Lit{*lit}, since(start));
    switch (t.kind) {
      case TokenKind::Ident:
        take();
        return onode(SurfaceObj::Var{t.text}, t.span);
      case TokenKind::Tilde: {
        take();
        SurfaceExprPtr payload = atom();
        SourceSpan span = since(start);
        return onode(SurfaceObj::Splice{payload, labels_->mint(span)}, span);
      }
      case TokenKind::LParen: {
        take();
        SurfaceObjPtr inner = oexpr();
        if (peek().kind == TokenKind::Colon) {
          take();
          ObjType ty = object_type();
          expect(TokenKind::RParen, "`)`");
          return onode(SurfaceObj::Ann{inner, ty}, since(start));
        }
        expect(TokenKind::RParen, "`)`");
        return inner;
      }
      case TokenKind::QuoteOpen:
        fail("quotes cannot be nested directly inside object code; splice a metaprogram with `~`", t.span);
      default:
        fail(fmt::format("expected object code, found {}", describe(t)), t.span);
    }
  }

  std::vector<Token> toks_;
  std::string file_;
  LabelMinter *labels_;
  std::size_t pos_ = 0;
  SourceSpan last_;
  bool layout_ = false;
  int item_line_ = 0;
  Token boundary_{TokenKind::End, {}, {}};
};

}  // namespace

SurfaceProgram parse_program(const std::string &source, const std::string &file, LabelMinter &labels) {
  return Parser(lex(source, file), file, &labels).program();
}

SurfaceExprPtr parse_expression(const std::string &source, const std::string &file, LabelMinter &labels) {
  return Parser(lex(source, file), file, &labels).whole_expression();
}

SurfaceObjPtr parse_object(const std::string &source, const std::string &file, LabelMinter &labels) {
  return Parser(lex(source, file), file, &labels).whole_object();
}

MetaType parse_type(const std::string &source, const std::string &file) {
  LabelMinter unused;
  return Parser(lex(source, file), file, &unused).whole_type();
}

}  // namespace mgtlc
