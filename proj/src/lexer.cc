#include "mgtlc/lexer.h"

#include <cctype>
#include <unordered_map>

#include <fmt/format.h>

namespace mgtlc {

std::string to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Ident:
      return "identifier";
    case TokenKind::Int:
    case TokenKind::Nat:
      return "number";
    case TokenKind::String:
      return "string";
    case TokenKind::Let:
      return "`let`";
    case TokenKind::In:
      return "`in`";
    case TokenKind::Fun:
      return "`fun`";
    case TokenKind::Lam:
      return "`lam`";
    case TokenKind::If:
      return "`if`";
    case TokenKind::Then:
      return "`then`";
    case TokenKind::Else:
      return "`else`";
    case TokenKind::Import:
      return "`import`";
    case TokenKind::True:
      return "`true`";
    case TokenKind::False:
      return "`false`";
    case TokenKind::UnitLit:
      return "`unit`";
    case TokenKind::LParen:
      return "`(`";
    case TokenKind::RParen:
      return "`)`";
    case TokenKind::Colon:
      return "`:`";
    case TokenKind::Equals:
      return "`=`";
    case TokenKind::Arrow:
      return "`->`";
    case TokenKind::QuoteOpen:
      return "`<|`";
    case TokenKind::QuoteClose:
      return "`|>`";
    case TokenKind::Tilde:
      return "`~`";
    case TokenKind::Plus:
      return "`+`";
    case TokenKind::Minus:
      return "`-`";
    case TokenKind::Star:
      return "`*`";
    case TokenKind::Less:
      return "`<`";
    case TokenKind::Greater:
      return "`>`";
    case TokenKind::Lambda:
      return "`λ`";
    case TokenKind::Dot:
      return "`.`";
    case TokenKind::End:
      return "end of input";
  }
  return "token";
}

namespace {

const std::unordered_map<std::string, TokenKind> &keywords() {
  static const std::unordered_map<std::string, TokenKind> table = {
      {"let", TokenKind::Let},       {"in", TokenKind::In},         {"fun", TokenKind::Fun},
      {"lam", TokenKind::Lam},       {"if", TokenKind::If},         {"then", TokenKind::Then},
      {"else", TokenKind::Else},     {"import", TokenKind::Import}, {"true", TokenKind::True},
      {"false", TokenKind::False},   {"unit", TokenKind::UnitLit},
  };
  return table;
}

class Lexer {
 public:
  Lexer(const std::string &src, std::string file) : src_(src), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (pos_ >= src_.size()) {
        out.push_back({TokenKind::End, {}, here_span()});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  SourceSpan here_span() const { return {file_, line_, col_, line_, col_}; }

  [[noreturn]] void fail(const std::string &msg, int line, int col) const {
    throw FrontendError("syntax-error", SourceSpan{file_, line, col, line, col + 1}, msg);
  }

  bool starts_with(std::string_view s) const { return src_.compare(pos_, s.size(), s) == 0; }

  void advance(std::size_t bytes) {
    for (std::size_t i = 0; i < bytes && pos_ < src_.size(); ++i) {
      unsigned char c = static_cast<unsigned char>(src_[pos_++]);
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++col_;
      }
    }
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
      } else if (starts_with("//")) {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
      } else if (starts_with("/*")) {
        int line = line_, col = col_;
        advance(2);
        while (pos_ < src_.size() && !starts_with("*/")) advance(1);
        if (pos_ >= src_.size()) fail("unterminated comment", line, col);
        advance(2);
      } else {
        return;
      }
    }
  }

  Token make(TokenKind kind, std::string text, int line, int col) const {
    return {kind, std::move(text), SourceSpan{file_, line, col, line_, col_}};
  }

  Token symbol(TokenKind kind, std::size_t bytes) {
    int line = line_, col = col_;
    advance(bytes);
    return make(kind, {}, line, col);
  }

  Token next() {
    int line = line_, col = col_;
    char c = src_[pos_];
    if (starts_with("<|")) return symbol(TokenKind::QuoteOpen, 2);
    if (starts_with("|>")) return symbol(TokenKind::QuoteClose, 2);
    if (starts_with("->")) return symbol(TokenKind::Arrow, 2);
    if (starts_with("λ")) return symbol(TokenKind::Lambda, std::string_view("λ").size());
    if (starts_with("★")) return symbol(TokenKind::Star, std::string_view("★").size());
    if (starts_with("→")) return symbol(TokenKind::Arrow, std::string_view("→").size());
    switch (c) {
      case '(':
        return symbol(TokenKind::LParen, 1);
      case ')':
        return symbol(TokenKind::RParen, 1);
      case ':':
        return symbol(TokenKind::Colon, 1);
      case '=':
        return symbol(TokenKind::Equals, 1);
      case '~':
        return symbol(TokenKind::Tilde, 1);
      case '+':
        return symbol(TokenKind::Plus, 1);
      case '-':
        return symbol(TokenKind::Minus, 1);
      case '*':
        return symbol(TokenKind::Star, 1);
      case '<':
        return symbol(TokenKind::Less, 1);
      case '>':
        return symbol(TokenKind::Greater, 1);
      case '\\':
        return symbol(TokenKind::Lambda, 1);
      case '.':
        return symbol(TokenKind::Dot, 1);
      case '"':
        return string_literal();
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
      std::string digits = src_.substr(start, pos_ - start);
      if (pos_ < src_.size() && src_[pos_] == 'n') {
        advance(1);
        return make(TokenKind::Nat, digits, line, col);
      }
      if (pos_ < src_.size() && (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        fail("malformed number", line, col);
      return make(TokenKind::Int, digits, line, col);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' || src_[pos_] == '\''))
        advance(1);
      std::string word = src_.substr(start, pos_ - start);
      auto kw = keywords().find(word);
      return make(kw != keywords().end() ? kw->second : TokenKind::Ident, word, line, col);
    }
    fail(fmt::format("unexpected character `{}`", c), line, col);
  }

  Token string_literal() {
    int line = line_, col = col_;
    advance(1);
    std::string value;
    for (;;) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') fail("unterminated string literal", line, col);
      char c = src_[pos_];
      if (c == '"') {
        advance(1);
        break;
      }
      if (c == '\\') {
        if (pos_ + 1 >= src_.size()) fail("unterminated string literal", line, col);
        char e = src_[pos_ + 1];
        switch (e) {
          case 'n':
            value += '\n';
            break;
          case 't':
            value += '\t';
            break;
          case '\\':
            value += '\\';
            break;
          case '"':
            value += '"';
            break;
          default:
            fail(fmt::format("unknown escape `\\{}`", e), line_, col_);
        }
        advance(2);
        continue;
      }
      value += c;
      advance(1);
    }
    return make(TokenKind::String, value, line, col);
  }

  const std::string &src_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> lex(const std::string &source, const std::string &file) {
  return Lexer(source, file).run();
}

}  // namespace mgtlc
