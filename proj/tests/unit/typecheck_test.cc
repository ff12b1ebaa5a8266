#include <doctest.h>

#include "helpers.h"
#include "mgtlc/cc.h"
#include "mgtlc/coercion.h"
#include "mgtlc/typecheck.h"

using namespace mgtlc;
using namespace testing;

namespace {

MetaPtr one() { return meta::constant(Literal::integer(1)); }

TypeErrorKind error_of(const MetaTerm &t) {
  try {
    type_meta(TypingContext{}, t);
  } catch (const TypeError &e) {
    return e.kind();
  }
  FAIL("expected a type error");
  return TypeErrorKind::CannotSynthesize;
}

}  // namespace

TEST_SUITE("typecheck") {
  TEST_CASE("constants and lambdas") {
    CHECK(type_meta({}, *one()) == int_t());
    CHECK(type_meta({}, *meta::lam("x", star(), meta::var("x"))) == arrow(star(), star()));
  }

  TEST_CASE("application with a consistent argument") {
    auto t = meta::app(meta::lam("x", int_t(), meta::var("x")),
                       meta::app(meta::lam("y", star(), meta::var("y")), one(), label(1)), label(2));
    CHECK(type_meta({}, *t) == int_t());
    auto bad = meta::app(meta::lam("x", int_t(), meta::var("x")), meta::constant(Literal::boolean(true)), label(3));
    CHECK(error_of(*bad) == TypeErrorKind::InconsistentTypes);
  }

  TEST_CASE("applying a ★-typed head") {
    auto t = meta::lam("f", star(), meta::app(meta::var("f"), one(), label(1)));
    CHECK(type_meta({}, *t) == arrow(star(), star()));
    auto not_fun = meta::app(one(), one(), label(1));
    CHECK(error_of(*not_fun) == TypeErrorKind::NotAFunction);
  }

  TEST_CASE("quotes synthesize the body's object type") {
    auto q = meta::quote(obj::ann(obj::lam("x", obj::var("x")), oarrow(oint(), oint())));
    CHECK(type_meta({}, *q) == code(oarrow(oint(), oint())));
  }

  TEST_CASE("splices are checked against Code T by consistency") {
    // λx:★. ≺1 + ~x≻
    auto body = obj::prim(PrimOp::Add, {obj::constant(Literal::integer(1)), obj::splice(meta::var("x"), label(1))});
    auto t = meta::lam("x", star(), meta::quote(body));
    CHECK(type_meta({}, *t) == arrow(star(), code(oint())));

    auto code_star_ok = meta::lam("x", code_star(), meta::quote(obj::ann(obj::splice(meta::var("x"), label(1)), obool())));
    CHECK(type_meta({}, *code_star_ok) == arrow(code_star(), code(obool())));

    auto wrong = meta::quote(obj::ann(obj::splice(one(), label(1)), oint()));
    CHECK(error_of(*wrong) == TypeErrorKind::InconsistentTypes);
    auto wrong_code = meta::lam("c", code(obool()),
                                meta::quote(obj::ann(obj::splice(meta::var("c"), label(1)), oint())));
    CHECK(error_of(*wrong_code) == TypeErrorKind::InconsistentTypes);
  }

  TEST_CASE("a bare splice or lambda in a quote cannot synthesize") {
    CHECK(error_of(*meta::quote(obj::splice(meta::quote(obj::constant(Literal::integer(5))), label(1)))) ==
          TypeErrorKind::CannotSynthesize);
    CHECK(error_of(*meta::quote(obj::lam("x", obj::var("x")))) == TypeErrorKind::CannotSynthesize);
  }

  TEST_CASE("stages do not mix") {
    CHECK(error_of(*meta::var("zz")) == TypeErrorKind::UnboundVariable);
    // An object variable used in the metalanguage.
    auto obj_in_meta = meta::quote(obj::ann(
        obj::lam("x", obj::splice(meta::app(meta::lam("y", star(), meta::var("y")), meta::var("x"), label(1)),
                                  label(2))),
        oarrow(oint(), oint())));
    CHECK(error_of(*obj_in_meta) == TypeErrorKind::WrongStageVariable);
    // A metalanguage variable used in object code.
    auto meta_in_obj = meta::lam("n", int_t(), meta::quote(obj::var("n")));
    CHECK(error_of(*meta_in_obj) == TypeErrorKind::WrongStageVariable);
  }

  TEST_CASE("innermost binding wins across stages") {
    // λx:Code Int. ≺(λx. x : Int -> Int)≻ : the inner x is the object one.
    auto t = meta::lam("x", code(oint()),
                       meta::quote(obj::ann(obj::lam("x", obj::var("x")), oarrow(oint(), oint()))));
    CHECK(type_meta({}, *t) == arrow(code(oint()), code(oarrow(oint(), oint()))));
  }

  TEST_CASE("object annotations check by equality") {
    auto ok = meta::quote(obj::ann(obj::constant(Literal::integer(1)), oint()));
    CHECK(type_meta({}, *ok) == code(oint()));
    auto bad = meta::quote(obj::ann(obj::constant(Literal::integer(1)), obool()));
    CHECK(error_of(*bad) == TypeErrorKind::AnnotationMismatch);
  }

  TEST_CASE("if types at the common branch type or at ★") {
    auto c = meta::constant(Literal::boolean(true));
    auto same = meta::if_(c, one(), one(), label(1));
    CHECK(type_meta({}, *same) == int_t());
    auto mixed = meta::if_(c, meta::quote(obj::constant(Literal::boolean(false))),
                           meta::quote(obj::constant(Literal::integer(3))), label(1));
    CHECK(type_meta({}, *mixed) == star());
    auto bad_cond = meta::if_(one(), one(), one(), label(1));
    CHECK(error_of(*bad_cond) == TypeErrorKind::InconsistentTypes);
  }

  TEST_CASE("errors carry the offending span and types") {
    SourceSpan arg_span{"f.mgtlc", 2, 5, 2, 9};
    auto t = meta::app(meta::lam("x", int_t(), meta::var("x")), meta::constant(Literal::boolean(true), arg_span),
                       label(1));
    try {
      type_meta({}, *t);
      FAIL("expected a type error");
    } catch (const TypeError &e) {
      CHECK(e.span() == arg_span);
      CHECK(e.expected() == "Int");
      CHECK(e.actual() == "Bool");
    }
  }

  TEST_CASE("validator accepts blame anywhere and rejects mismatches") {
    CHECK_FALSE(type_cc_meta({}, *cc::blame(label(1))).has_value());
    CHECK_NOTHROW(check_cc_meta({}, *cc::blame(label(1)), code(oint())));
    CHECK_NOTHROW(check_cc_meta({}, *cc::cast(cc::constant(Literal::integer(1)), coercion::inj(int_t())), star()));
    CHECK_THROWS_AS(check_cc_meta({}, *cc::cast(cc::constant(Literal::integer(1)), coercion::inj(bool_t())), star()),
                    ValidationError);
    CHECK_THROWS_AS(check_cc_code({}, *cc::oconstant(Literal::integer(1)), obool()), ValidationError);
    CHECK(*type_cc_code({}, *cc::oann(cc::olam("x", cc::ovar("x")), oarrow(oint(), oint()))) ==
          oarrow(oint(), oint()));
  }
}
