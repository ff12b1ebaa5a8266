#include <doctest.h>

#include "helpers.h"
#include "mgtlc/cc.h"
#include "mgtlc/coercion.h"

using namespace mgtlc;
using namespace testing;

TEST_SUITE("cc") {
  TEST_CASE("free variables cross stages") {
    // λx:★. ≺λy. (y ~x) z≻ has z free; x and y are bound.
    auto t = cc::lam("x", star(),
                     cc::quote(cc::olam("y", cc::oapp(cc::oapp(cc::ovar("y"), cc::splice(cc::var("x"))),
                                                      cc::ovar("z")))));
    CHECK(free_vars(*t) == std::set<std::string>{"z"});
  }

  TEST_CASE("substitution replaces free metalanguage occurrences") {
    auto body = cc::app(cc::var("f"), cc::var("x"));
    auto out = subst_meta(body, "x", cc::constant(Literal::integer(3)));
    CHECK(to_string(*out) == "(f 3)");
  }

  TEST_CASE("substitution stops at a shadowing binder of either stage") {
    auto five = cc::constant(Literal::integer(5));
    auto meta_shadow = cc::lam("x", int_t(), cc::var("x"));
    CHECK(subst_meta(meta_shadow, "x", five) == meta_shadow);
    auto obj_shadow = cc::quote(cc::olam("x", cc::splice(cc::var("x"))));
    CHECK(subst_meta(obj_shadow, "x", five) == obj_shadow);
  }

  TEST_CASE("substitution reaches splices under object binders") {
    auto t = cc::quote(cc::olam("y", cc::splice(cc::var("x"))));
    auto out = subst_meta(t, "x", cc::quote(cc::oconstant(Literal::integer(1))));
    CHECK(to_string(*out) == "≺λy. ~≺1≻≻");
  }

  TEST_CASE("substitution avoids capture") {
    // (λy:★. x)[x := y] must not bind the substituted y.
    auto t = cc::lam("y", star(), cc::var("x"));
    auto out = subst_meta(t, "x", cc::var("y"));
    const auto *lam = out->as<CCMeta::Lam>();
    REQUIRE(lam != nullptr);
    CHECK(lam->param != "y");
    CHECK(free_vars(*out) == std::set<std::string>{"y"});
    CHECK(alpha_equiv(*out, *cc::lam("w", star(), cc::var("y"))));

    // Same under an object binder with a splice.
    auto q = cc::quote(cc::olam("y", cc::splice(cc::var("x"))));
    auto qo = subst_meta(q, "x", cc::var("y"));
    CHECK(free_vars(*qo) == std::set<std::string>{"y"});
  }

  TEST_CASE("alpha equivalence") {
    auto a = cc::lam("x", int_t(), cc::quote(cc::olam("y", cc::oapp(cc::ovar("y"), cc::splice(cc::var("x"))))));
    auto b = cc::lam("p", int_t(), cc::quote(cc::olam("q", cc::oapp(cc::ovar("q"), cc::splice(cc::var("p"))))));
    CHECK(alpha_equiv(*a, *b));
    auto c = cc::lam("p", bool_t(), cc::quote(cc::olam("q", cc::oapp(cc::ovar("q"), cc::splice(cc::var("p"))))));
    CHECK_FALSE(alpha_equiv(*a, *c));
    CHECK_FALSE(alpha_equiv(*cc::var("x"), *cc::var("y")));
    auto l1 = cc::cast(cc::var("x"), coercion::proj(int_t(), label(1)));
    auto l2 = cc::cast(cc::var("x"), coercion::proj(int_t(), label(2)));
    CHECK_FALSE(alpha_equiv(*l1, *l2));
  }

  TEST_CASE("splice tracking") {
    CHECK(cc::quote(cc::oconstant(Literal::integer(1)))->has_splice == false);
    auto s = cc::olam("x", cc::splice(cc::var("m")));
    CHECK_FALSE(splice_free(*s));
    CHECK(cc::quote(s)->has_splice);
  }

  TEST_CASE("sizes and labels") {
    auto t = cc::cast(cc::app(cc::var("f"), cc::constant(Literal::integer(1))), coercion::proj(int_t(), label(4)));
    CHECK(term_size(*t) == 4);
    auto ls = cc_labels(*t);
    REQUIRE(ls.size() == 1);
    CHECK(ls[0].ordinal == 4);
  }
}
