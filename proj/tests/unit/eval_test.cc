#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "helpers.h"
#include "mgtlc/coercion.h"
#include "mgtlc/eval.h"
#include "mgtlc/typecheck.h"

using namespace mgtlc;
using namespace testing;

namespace {

CCMetaPtr lit(std::int64_t v) { return cc::constant(Literal::integer(v)); }
CCMetaPtr qlit(std::int64_t v) { return cc::quote(cc::oconstant(Literal::integer(v))); }

std::string step1(const CCMetaPtr &t) {
  MetaStep s = step_meta(t);
  REQUIRE(s.kind == MetaStep::Kind::Stepped);
  return to_string(*s.next);
}

CCMetaPtr normal_form(CCMetaPtr t) {
  for (int i = 0; i < 100; ++i) {
    MetaStep s = step_meta(t);
    if (s.kind != MetaStep::Kind::Stepped) return t;
    t = s.next;
  }
  FAIL("did not reach a normal form");
  return t;
}

}  // namespace

TEST_SUITE("eval") {
  TEST_CASE("values") {
    CHECK(is_value(*lit(1)) == ValueKind::Const);
    CHECK(is_value(*cc::lam("x", int_t(), cc::var("x"))) == ValueKind::Lam);
    CHECK(is_value(*cc::cast(lit(1), coercion::inj(int_t()))) == ValueKind::Wrapped);
    CHECK(is_value(*qlit(1)) == ValueKind::QuotedCode);
    CHECK_FALSE(is_value(*cc::cast(lit(1), coercion::id(int_t()))).has_value());
    CHECK_FALSE(is_value(*cc::quote(cc::splice(qlit(1)))).has_value());
    CHECK(step_meta(cc::blame(label(1))).kind == MetaStep::Kind::IsBlame);
  }

  TEST_CASE("beta and identity casts") {
    CHECK(step1(cc::app(cc::lam("x", int_t(), cc::var("x")), lit(5))) == "5");
    CHECK(step1(cc::cast(lit(5), coercion::id(int_t()))) == "5");
    CHECK(step1(cc::cast(qlit(5), coercion::code_id(oint()))) == "≺5≻");
  }

  TEST_CASE("sequences split only on values") {
    auto c = coercion::seq(coercion::inj(int_t()), coercion::proj(int_t(), label(1)));
    CHECK(step1(cc::cast(lit(5), c)) == "5⟨Int!⟩⟨Int?ℓ1⟩");
    // With a redex underneath, the redex goes first.
    auto inner = cc::cast(cc::app(cc::lam("x", int_t(), cc::var("x")), lit(5)), c);
    CHECK(step1(inner) == "5⟨Int! ; Int?ℓ1⟩");
  }

  TEST_CASE("projections succeed or blame") {
    auto injected = cc::cast(lit(5), coercion::inj(int_t()));
    CHECK(step1(cc::cast(injected, coercion::proj(int_t(), label(1)))) == "5");
    MetaStep s = step_meta(cc::cast(injected, coercion::proj(bool_t(), label(2))));
    REQUIRE(s.kind == MetaStep::Kind::Stepped);
    const auto *b = s.next->as<CCMeta::Blame>();
    REQUIRE(b != nullptr);
    CHECK(b->label.ordinal == 2);
    REQUIRE(b->cause.has_value());
    CHECK(b->cause->expected == bool_t());
    CHECK(b->cause->actual == int_t());
  }

  TEST_CASE("code projections succeed or blame") {
    auto injected = cc::cast(qlit(5), coercion::code_inj(oint()));
    CHECK(step1(cc::cast(injected, coercion::code_proj(oint(), label(1)))) == "≺5≻");
    CHECK(step1(cc::cast(injected, coercion::code_proj(obool(), label(3)))) == "blame ℓ3");
  }

  TEST_CASE("wrapped functions split their coercion over the call") {
    auto id_int = cc::lam("x", int_t(), cc::var("x"));
    auto wrapped = cc::cast(id_int, coercion::fun(coercion::proj(int_t(), label(1)), coercion::inj(int_t())));
    auto arg = cc::cast(lit(4), coercion::inj(int_t()));
    CHECK(step1(cc::app(wrapped, arg)) == "((λx:Int. x) 4⟨Int!⟩⟨Int?ℓ1⟩)⟨Int!⟩");
    CHECK(to_string(*normal_form(cc::app(wrapped, arg))) == "4⟨Int!⟩");
    auto bad_arg = cc::cast(cc::constant(Literal::boolean(true)), coercion::inj(bool_t()));
    CHECK(to_string(*normal_form(cc::app(wrapped, bad_arg))) == "blame ℓ1");
  }

  TEST_CASE("blame propagates out of every frame") {
    auto b = cc::blame(label(9));
    CHECK(step1(cc::app(b, lit(1))) == "blame ℓ9");
    CHECK(step1(cc::app(cc::lam("x", int_t(), cc::var("x")), b)) == "blame ℓ9");
    CHECK(step1(cc::cast(b, coercion::inj(int_t()))) == "blame ℓ9");
    CHECK(step1(cc::prim(PrimOp::Add, {lit(1), b})) == "blame ℓ9");
  }

  TEST_CASE("call by value, left to right") {
    auto redex = [](std::int64_t v) { return cc::app(cc::lam("x", int_t(), cc::var("x")), lit(v)); };
    CHECK(step1(cc::prim(PrimOp::Add, {redex(1), redex(2)})) == "(1 + ((λx:Int. x) 2))");
    CHECK(step1(cc::prim(PrimOp::Add, {lit(1), redex(2)})) == "(1 + 2)");
    CHECK(step1(cc::prim(PrimOp::Sub, {lit(1), lit(2)})) == "-1");
    CHECK(step1(cc::prim(PrimOp::Lt, {lit(1), lit(2)})) == "true");
  }

  TEST_CASE("splicing quoted code") {
    CHECK(step1(cc::quote(cc::splice(qlit(5)))) == "≺5≻");
    // The leftmost splice reduces first, also under object binders.
    auto q = cc::quote(cc::oprim(PrimOp::Add, {cc::splice(cc::cast(qlit(1), coercion::code_id(oint()))),
                                                cc::splice(cc::cast(qlit(2), coercion::code_id(oint())))}));
    CHECK(step1(q) == "≺(~≺1≻ + ~≺2≻⟨code-id Int⟩)≻");
    auto under = cc::quote(cc::olam("y", cc::splice(cc::quote(cc::ovar("y")))));
    CHECK(step1(under) == "≺λy. y≻");
  }

  TEST_CASE("blame inside a splice escapes the quote") {
    auto q = cc::quote(cc::oprim(PrimOp::Add, {cc::oconstant(Literal::integer(1)), cc::splice(cc::blame(label(2)))}));
    CHECK(to_string(*normal_form(q)) == "blame ℓ2");
  }

  TEST_CASE("run_compiled outcomes") {
    auto ok = run_compiled(cc::quote(cc::splice(qlit(5))), oint(), 100);
    const auto *code = ok.as<EvalResult::Code>();
    REQUIRE(code != nullptr);
    CHECK(to_string(*code->body) == "5");
    CHECK(ok.steps == 1);

    auto blamed = run_compiled(cc::cast(cc::cast(qlit(5), coercion::code_inj(oint())),
                                        coercion::code_proj(obool(), label(7))),
                               obool(), 100);
    REQUIRE(blamed.as<EvalResult::Blame>() != nullptr);
    CHECK(blamed.as<EvalResult::Blame>()->label.ordinal == 7);

    auto omega_body = cc::app(cc::cast(cc::var("x"), coercion::proj(arrow(star(), star()), label(1))), cc::var("x"));
    auto omega = cc::lam("x", star(), cc::cast(omega_body, coercion::seq(coercion::proj(code_star(), label(1)),
                                                                         coercion::code_proj(oint(), label(1)))));
    auto dyn_omega = cc::cast(omega, coercion::seq(coercion::fun(coercion::id(star()),
                                                                 coercion::seq(coercion::code_inj(oint()),
                                                                               coercion::inj(code_star()))),
                                                   coercion::inj(arrow(star(), star()))));
    auto loop = cc::app(omega, dyn_omega);
    auto timeout = run_compiled(loop, oint(), 300);
    CHECK(timeout.as<EvalResult::Timeout>() != nullptr);
    CHECK(timeout.steps == 300);
  }

  TEST_CASE("a non-quote value is reported as stuck") {
    auto r = run_compiled(lit(1), oint(), 10);
    CHECK(r.as<EvalResult::Stuck>() != nullptr);
    CHECK(step_meta(cc::var("free")).kind == MetaStep::Kind::Stuck);
  }

  TEST_CASE("observer sees every snapshot") {
    std::vector<std::string> seen;
    run_compiled(cc::quote(cc::splice(cc::cast(qlit(5), coercion::code_id(oint())))), oint(), 100,
                 [&](std::uint64_t, const CCMetaPtr &t) { seen.push_back(to_string(*t)); });
    CHECK(seen == std::vector<std::string>{"≺~≺5≻⟨code-id Int⟩≻", "≺~≺5≻≻", "≺5≻"});
  }

  TEST_CASE("meta_eval and trace on source terms") {
    auto program = meta::quote(obj::ann(obj::splice(meta::quote(obj::constant(Literal::integer(5))), label(1)), oint()));
    auto r = meta_eval(*program, kDefaultFuel);
    REQUIRE(r.as<EvalResult::Code>() != nullptr);
    CHECK(to_string(*r.as<EvalResult::Code>()->body) == "(5 : Int)");

    Trace tr = trace(*program, kDefaultFuel);
    REQUIRE(tr.entries.size() == 3);
    for (const auto &e : tr.entries) CHECK(e.type == code(oint()));

    CHECK_THROWS_AS(meta_eval(*meta::constant(Literal::integer(1)), 10), TypeError);
  }

  TEST_CASE("fuel zero means unlimited") {
    auto r = run_compiled(cc::quote(cc::splice(qlit(5))), oint(), 0);
    CHECK(r.as<EvalResult::Code>() != nullptr);
  }

  TEST_CASE("snapshot validation") {
    CHECK(validate_snapshot(*qlit(1), oint()) == code(oint()));
    CHECK(validate_snapshot(*cc::blame(label(1)), oint()) == code(oint()));
    CHECK_THROWS_AS(validate_snapshot(*qlit(1), obool()), ValidationError);
  }

  TEST_CASE("builtins read files next to the program") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "mgtlc_eval_builtins";
    fs::create_directories(dir);
    std::ofstream(dir / "n.txt") << " 42\n";
    std::ofstream(dir / "s.txt") << "hello\n";
    std::ofstream(dir / "junk.txt") << "4x2";
    auto call = [&](const char *fn, const char *file) {
      return cc::app(cc::builtin(fn, dir.string()), cc::constant(Literal::string(file)));
    };
    CHECK(step1(call("read_int", "n.txt")) == "42");
    CHECK(step1(call("read_and_quote", "s.txt")) == "≺\"hello\"≻");
    CHECK(step_meta(call("read_int", "junk.txt")).kind == MetaStep::Kind::Failed);
    CHECK(step_meta(call("read_int", "missing.txt")).kind == MetaStep::Kind::Failed);
    fs::remove_all(dir);
  }
}
