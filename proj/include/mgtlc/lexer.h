#ifndef MGTLC_LEXER_H
#define MGTLC_LEXER_H

#include <stdexcept>
#include <string>
#include <vector>

#include "mgtlc/syntax.h"

namespace mgtlc {

/// A syntax, import or desugaring error in the surface program.
class FrontendError : public std::runtime_error {
 public:
  FrontendError(std::string code, SourceSpan span, const std::string &message)
      : std::runtime_error(message), code_(std::move(code)), span_(std::move(span)) {}

  const std::string &code() const { return code_; }
  const SourceSpan &span() const { return span_; }

 private:
  std::string code_;
  SourceSpan span_;
};

enum class TokenKind {
  Ident,
  Int,
  Nat,
  String,
  // keywords
  Let,
  In,
  Fun,
  Lam,
  If,
  Then,
  Else,
  Import,
  True,
  False,
  UnitLit,
  // punctuation
  LParen,
  RParen,
  Colon,
  Equals,
  Arrow,
  QuoteOpen,
  QuoteClose,
  Tilde,
  Plus,
  Minus,
  Star,
  Less,
  Greater,
  Lambda,
  Dot,
  End,
};

std::string to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  /// Identifier name, decoded string contents, or literal digits.
  std::string text;
  SourceSpan span;
};

/// Splits a source file into tokens. Columns count code points, starting at 1.
/// The result always ends with an End token.
std::vector<Token> lex(const std::string &source, const std::string &file);

}  // namespace mgtlc

#endif  // MGTLC_LEXER_H
