#include <doctest.h>

#include "helpers.h"
#include "mgtlc/desugar.h"
#include "mgtlc/pretty.h"
#include "mgtlc/proptest.h"

using namespace mgtlc;
using namespace testing;

TEST_SUITE("pretty") {
  TEST_CASE("object printing") {
    auto t = obj::ann(obj::lam("x", obj::prim(PrimOp::Add, {obj::var("x"), obj::constant(Literal::integer(-1))})),
                      oarrow(oint(), oint()));
    CHECK(pretty_obj(*t) == "(λx. (x + (-1)) : Int -> Int)");
    auto app = obj::app(obj::ann(obj::lam("y", obj::var("y")), oarrow(obool(), obool())),
                        obj::constant(Literal::boolean(true)));
    CHECK(pretty_obj(*app) == "((λy. y : Bool -> Bool) true)");
    CHECK(pretty_obj(*obj::constant(Literal::nat(4))) == "4n");
    CHECK_THROWS_AS(pretty_obj(*obj::splice(meta::var("m"), label(1))), InternalError);
  }

  TEST_CASE("print then parse gives back an alpha-equivalent term") {
    std::vector<std::string> sources = {
        "((λx. x : Int -> Int) 3)",
        "(λf. λx. (f (f x)) : (Int -> Int) -> Int -> Int)",
        "((1 + 2) * (3 - 4))",
        "(λb. b : Bool -> Bool)",
        "unit",
    };
    for (const auto &s : sources) {
      auto t = parse_object_term(s);
      CHECK(pretty_obj(*t) == s);
      CHECK(alpha_equiv(*parse_object_term(pretty_obj(*t)), *t));
    }
  }

  TEST_CASE("round trip on generated STLC terms") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      TermGenerator gen(GenConfig{seed, 20, 3, 0.5});
      auto t = gen.stlc_of(gen.random_obj_type(3));
      CAPTURE(pretty_obj(*t));
      CHECK(alpha_equiv(*parse_object_term(pretty_obj(*t)), *t));
    }
  }

  TEST_CASE("CC code converts back to object terms") {
    auto t = parse_object_term("(λx. (x + 1) : Int -> Int)");
    CHECK(alpha_equiv(*to_obj_term(*to_cc_code(*t)), *t));
  }
}
