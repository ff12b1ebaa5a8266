#include <doctest.h>

#include "helpers.h"
#include "mgtlc/coercion.h"
#include "mgtlc/compile.h"
#include "mgtlc/desugar.h"
#include "mgtlc/pretty.h"
#include "mgtlc/proptest.h"
#include "mgtlc/typecheck.h"

using namespace mgtlc;
using namespace testing;

namespace {

// Source types of the casts that compilation puts on splice payloads; each
// is the payload's static type.
void splice_sources(const CCMeta &t, std::vector<MetaType> &out);

void splice_sources(const CCCode &t, std::vector<MetaType> &out) {
  std::visit(overloaded{
                 [&](const CCCode::Lam &n) { splice_sources(*n.body, out); },
                 [&](const CCCode::App &n) {
                   splice_sources(*n.fn, out);
                   splice_sources(*n.arg, out);
                 },
                 [&](const CCCode::Ann &n) { splice_sources(*n.term, out); },
                 [&](const CCCode::Splice &n) {
                   const auto *cast = n.term->as<CCMeta::Cast>();
                   REQUIRE(cast != nullptr);
                   out.push_back(coercion_type(*cast->coercion).source);
                   splice_sources(*cast->term, out);
                 },
                 [](const auto &) {},
             },
             t.node);
}

void splice_sources(const CCMeta &t, std::vector<MetaType> &out) {
  std::visit(overloaded{
                 [&](const CCMeta::Lam &n) { splice_sources(*n.body, out); },
                 [&](const CCMeta::App &n) {
                   splice_sources(*n.fn, out);
                   splice_sources(*n.arg, out);
                 },
                 [&](const CCMeta::Cast &n) { splice_sources(*n.term, out); },
                 [&](const CCMeta::Quote &n) { splice_sources(*n.body, out); },
                 [](const auto &) {},
             },
             t.node);
}

}  // namespace

TEST_SUITE("proptest") {
  TEST_CASE("generated programs have the reported type") {
    for (double bias : {0.0, 0.5, 1.0}) {
      for (std::uint64_t seed = 0; seed < 300; ++seed) {
        TermGenerator gen(GenConfig{seed, 30, 2, bias});
        auto [term, type] = gen.program();
        CAPTURE(to_string(*term));
        CHECK(type.is_code());
        CHECK(term_size(*term) <= 30);
        CHECK(type_meta({}, *term) == type);
      }
    }
  }

  TEST_CASE("goal-directed terms at arbitrary types") {
    TermGenerator gen(GenConfig{7, 25, 2, 0.5});
    for (int i = 0; i < 200; ++i) {
      MetaType goal = gen.random_meta_type(3);
      auto t = gen.meta_of(goal);
      CAPTURE(to_string(*t));
      CHECK(type_meta({}, *t) == goal);
    }
  }

  TEST_CASE("size one at Int is a constant") {
    TermGenerator gen(GenConfig{3, 1, 1, 0.5});
    auto t = gen.meta_of(int_t());
    CHECK(std::holds_alternative<MetaTerm::Const>(t->node));
  }

  TEST_CASE("same seed, same program") {
    for (std::uint64_t seed : {0ULL, 17ULL, 123456789ULL}) {
      TermGenerator a(GenConfig{seed, 30, 2, 0.5}), b(GenConfig{seed, 30, 2, 0.5});
      CHECK(to_string(*a.program().first) == to_string(*b.program().first));
    }
    CHECK(program_seed(1, 0) != program_seed(1, 1));
    CHECK(program_seed(1, 5) == program_seed(1, 5));
  }

  TEST_CASE("full star bias puts ★ on every splice payload") {
    std::size_t splices = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      TermGenerator gen(GenConfig{seed, 30, 2, 1.0});
      std::vector<MetaType> payloads;
      splice_sources(*compile_meta({}, *gen.program().first).first, payloads);
      for (const auto &p : payloads) CHECK(p == star());
      splices += payloads.size();
    }
    CHECK(splices > 0);
  }

  TEST_CASE("consistent variants are consistent") {
    TermGenerator gen(GenConfig{11, 30, 3, 0.5});
    for (int i = 0; i < 500; ++i) {
      MetaType t = gen.random_meta_type(3);
      CHECK(consistent(t, gen.consistent_variant(t)));
    }
  }

  TEST_CASE("safety verdicts on known programs") {
    auto five = meta::quote(obj::constant(Literal::integer(5)));
    CHECK(check_type_safety(*five, 100).kind == SafetyVerdict::Kind::SafeValue);

    auto untyped_input = load_program(programs("untyped_input/main.mgtlc"));
    CHECK(check_type_safety(*untyped_input.term, 1000).kind == SafetyVerdict::Kind::SafeBlame);

    auto loop = load_program(programs("misc/diverge.mgtlc"));
    auto v = check_type_safety(*loop.term, 500);
    CHECK(v.kind == SafetyVerdict::Kind::Timeout);
    CHECK(v.steps == 500);

    CHECK_THROWS_AS(check_type_safety(*meta::constant(Literal::integer(1)), 10), std::invalid_argument);
  }

  TEST_CASE("shrinking keeps the property and reduces size") {
    TermGenerator gen(GenConfig{5, 30, 2, 1.0});
    MetaPtr big;
    for (int i = 0; i < 50 && !big; ++i) {
      auto [t, ty] = gen.program();
      if (term_size(*t) >= 15 && !collect_labels(*t).empty()) big = t;
    }
    REQUIRE(big);
    // "Still has a cast label" stands in for a failing oracle.
    auto has_label = [](const MetaTerm &t) { return !collect_labels(t).empty(); };
    auto small = shrink(big, has_label);
    CHECK(term_size(*small) < term_size(*big));
    CHECK(has_label(*small));
    CHECK(type_meta({}, *small).is_code());
  }

  TEST_CASE("type enumeration sizes") {
    // 4 leaves; 4 + 16 + 2 at depth 2; 4 + 22^2 + 6 at depth 3.
    CHECK(enumerate_meta_types(1).size() == 4);
    CHECK(enumerate_meta_types(2).size() == 22);
    CHECK(enumerate_meta_types(3).size() == 494);
    CHECK(enumerate_obj_types(2).size() == 20);
  }

  TEST_CASE("coerce totality at depth 2") {
    auto r = check_coerce_totality(2);
    CHECK(r.pairs == 484);
    CHECK(r.ok == r.consistent);
    CHECK(r.failures.empty());
  }

  TEST_CASE("named coerce and projection cases") {
    auto l = label(1);
    auto c = coerce(star(), code(oarrow(oint(), oint())), l);
    auto t = coercion_type(*c);
    CHECK(t.source == star());
    CHECK(t.target == code(oarrow(oint(), oint())));

    auto d = check_projection_dichotomy(1);
    CHECK(d.ground_pairs == 36);
    CHECK(d.ground_ok == 36);
    CHECK(d.code_pairs == 16);
    CHECK(d.code_ok == 16);
  }

  TEST_CASE("identity round trip") {
    auto r = check_identity_roundtrip();
    CHECK(r.cases > 22);
    CHECK(r.ok == r.cases);
  }

  TEST_CASE("small-term enumeration to five nodes") {
    auto r = enumerate_small_terms(5);
    CHECK(r.terms > 10000);
    CHECK(r.typed == r.compiled);
    CHECK(r.code_typed > 0);
    CHECK(r.safe == r.code_typed);
    CHECK(r.failures.empty());
  }

  TEST_CASE("a short fuzz campaign finds nothing") {
    GenConfig cfg{42, 30, 2, 0.5};
    auto a = fuzz(cfg, 0, 150, 10000);
    auto b = fuzz(cfg, 150, 150, 10000);
    merge(a, b);
    CHECK(a.programs == 300);
    CHECK(a.violations == 0);
    CHECK(a.safe_value + a.safe_blame + a.timeout + a.runtime_failure == 300);
    auto whole = fuzz(cfg, 0, 300, 10000);
    CHECK(whole.safe_value == a.safe_value);
    CHECK(whole.steps == a.steps);
  }
}
