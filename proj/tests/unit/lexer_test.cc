#include <doctest.h>

#include "mgtlc/lexer.h"

using namespace mgtlc;

namespace {

std::vector<TokenKind> kinds(const std::string &src) {
  std::vector<TokenKind> out;
  for (const auto &t : lex(src, "t")) out.push_back(t.kind);
  return out;
}

}  // namespace

TEST_SUITE("lexer") {
  TEST_CASE("keywords, identifiers and literals") {
    using K = TokenKind;
    CHECK(kinds("let x = 5 in x") == std::vector<K>{K::Let, K::Ident, K::Equals, K::Int, K::In, K::Ident, K::End});
    CHECK(kinds("3n true false unit \"s\"") ==
          std::vector<K>{K::Nat, K::True, K::False, K::UnitLit, K::String, K::End});
    CHECK(kinds("fun lam if then else import") ==
          std::vector<K>{K::Fun, K::Lam, K::If, K::Then, K::Else, K::Import, K::End});
  }

  TEST_CASE("symbols with ASCII and Unicode spellings") {
    using K = TokenKind;
    CHECK(kinds("<| ~x |> -> → * ★ < > + - ( ) :") ==
          std::vector<K>{K::QuoteOpen, K::Tilde, K::Ident, K::QuoteClose, K::Arrow, K::Arrow, K::Star, K::Star,
                         K::Less, K::Greater, K::Plus, K::Minus, K::LParen, K::RParen, K::Colon, K::End});
    CHECK(kinds("λx. x") == std::vector<K>{K::Lambda, K::Ident, K::Dot, K::Ident, K::End});
  }

  TEST_CASE("comments are skipped") {
    using K = TokenKind;
    CHECK(kinds("1 // rest\n/* block\n comment */ 2") == std::vector<K>{K::Int, K::Int, K::End});
  }

  TEST_CASE("string escapes") {
    auto toks = lex(R"("a\n\t\\\"b")", "t");
    CHECK(toks[0].text == "a\n\t\\\"b");
  }

  TEST_CASE("spans count code points, end column exclusive") {
    auto toks = lex("λx. ★\n  foo", "f.mgtlc");
    CHECK(toks[0].span.col == 1);
    CHECK(toks[1].span.col == 2);
    CHECK(toks[3].span.col == 5);
    CHECK(toks[3].span.end_col == 6);
    CHECK(toks[4].span.line == 2);
    CHECK(toks[4].span.col == 3);
    CHECK(toks[4].span.end_col == 6);
    CHECK(toks[4].span.file == "f.mgtlc");
  }

  TEST_CASE("lexical errors") {
    CHECK_THROWS_AS(lex("\"open", "t"), FrontendError);
    CHECK_THROWS_AS(lex("1 # 2", "t"), FrontendError);
    CHECK_THROWS_AS(lex("/* never closed", "t"), FrontendError);
  }
}
