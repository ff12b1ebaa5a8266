#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "helpers.h"
#include "mgtlc/desugar.h"
#include "mgtlc/lexer.h"
#include "mgtlc/pretty.h"
#include "mgtlc/typecheck.h"

using namespace mgtlc;
using namespace testing;

namespace {

MetaType type_of(const std::string &src) { return type_meta({}, *load_source(src, "t.mgtlc").term); }

}  // namespace

TEST_SUITE("desugar") {
  TEST_CASE("let becomes an annotated application") {
    auto p = load_source("let a : Int = 1 in a", "t.mgtlc");
    CHECK(to_string(*p.term) == "((λa:Int. a) 1)^ℓ1");
    CHECK(type_of("let a = 1 in a") == star());
  }

  TEST_CASE("function lets bind their full static type") {
    CHECK(type_of("let f (x : Int) : Int = x in f") == arrow(int_t(), int_t()));
    CHECK(type_of("let f (x : Int) = x in f") == star());
    CHECK(type_of("let f x y : Int = 1 in f") == arrow(star(), arrow(star(), int_t())));
  }

  TEST_CASE("top-level lets scope over later items and the final expression") {
    CHECK(type_of("let one : Int = 1\nlet two : Int = one + one\n<| 1 |>\n") == code(oint()));
  }

  TEST_CASE("ascription is an application of an annotated identity") {
    auto p = load_source("(1 : *)", "t.mgtlc");
    CHECK(to_string(*p.term) == "((λv:★. v) 1)^ℓ1");
    CHECK(type_of("(1 : *)") == star());
  }

  TEST_CASE("builtins are recognised unless shadowed") {
    CHECK(type_of("read_int") == arrow(MetaType::base(BaseType::String), int_t()));
    CHECK(type_of("let read_int : Bool = true in read_int") == bool_t());
  }

  TEST_CASE("annotated object lambdas synthesize through Ann") {
    auto o = parse_object_term("lam (x : Int) -> x");
    CHECK(to_string(*o) == "(λx. x : Int -> Int)");
    CHECK(type_of("<| lam (x : Int) -> x + 1 |>") == code(oarrow(oint(), oint())));
  }

  TEST_CASE("expected object types flow into unannotated lambdas") {
    CHECK(type_of("<| (lam f -> lam x -> f x : (Int -> Int) -> Int -> Int) |>") ==
          code(oarrow(oarrow(oint(), oint()), oarrow(oint(), oint()))));
    CHECK(type_of("<| (lam (f : Int -> Int) -> f 1) (lam y -> y) |>") == code(oint()));
  }

  TEST_CASE("an unannotated object lambda without context is rejected by the checker") {
    CHECK_THROWS_AS(type_of("<| lam x -> x |>"), TypeError);
  }

  TEST_CASE("a Code Int annotation on quoted string input is a static error at the let") {
    auto p = load_source("let r : Code Int = read_and_quote \"in.txt\" in\n<| 30 < (~r) + 5 |>\n", "m.mgtlc");
    try {
      type_meta({}, *p.term);
      FAIL("expected a type error");
    } catch (const TypeError &e) {
      CHECK(e.kind() == TypeErrorKind::InconsistentTypes);
      CHECK(e.span().line == 1);
      CHECK(e.expected() == "Code Int");
      CHECK(e.actual() == "Code String");
    }
  }

  TEST_CASE("heterogeneous if injects into ★") {
    CHECK(type_of("if true then <| false |> else <| 3 |>") == star());
    CHECK(type_of("if true then <| 1 |> else <| 3 |>") == code(oint()));
  }

  TEST_CASE("imports resolve relative to the importing file") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "mgtlc_desugar_imports";
    fs::create_directories(dir / "sub");
    std::ofstream(dir / "sub" / "lib.mgtlc") << "import \"base.mgtlc\"\nlet two : Int = one + one\n";
    std::ofstream(dir / "sub" / "base.mgtlc") << "let one : Int = 1\n";
    std::ofstream(dir / "main.mgtlc") << "import \"sub/lib.mgtlc\"\n(<| 1 |> : Code Int)\n";
    auto p = load_program((dir / "main.mgtlc").string());
    CHECK(type_meta({}, *p.term) == code(oint()));
    CHECK(p.sources.size() == 3);

    std::ofstream(dir / "a.mgtlc") << "import \"b.mgtlc\"\nlet a = 1\n";
    std::ofstream(dir / "b.mgtlc") << "import \"a.mgtlc\"\nlet b = 1\n";
    std::ofstream(dir / "cyc.mgtlc") << "import \"a.mgtlc\"\n<| 1 |>\n";
    try {
      load_program((dir / "cyc.mgtlc").string());
      FAIL("expected an import cycle");
    } catch (const FrontendError &e) {
      CHECK(e.code() == "import-error");
    }
    std::ofstream(dir / "bad.mgtlc") << "import \"missing.mgtlc\"\n<| 1 |>\n";
    CHECK_THROWS_AS(load_program((dir / "bad.mgtlc").string()), FrontendError);
    std::ofstream(dir / "lib_with_main.mgtlc") << "let x = 1\n<| 1 |>\n";
    std::ofstream(dir / "imports_main.mgtlc") << "import \"lib_with_main.mgtlc\"\n<| 1 |>\n";
    CHECK_THROWS_AS(load_program((dir / "imports_main.mgtlc").string()), FrontendError);
    fs::remove_all(dir);
  }

  TEST_CASE("label ordinals are unique across files") {
    auto p = load_program(programs("pipeline/main.mgtlc"));
    auto labels = collect_labels(*p.term);
    std::set<std::uint32_t> ordinals;
    std::set<std::string> files;
    for (const auto &l : labels) {
      ordinals.insert(l.ordinal);
      files.insert(l.span.file.substr(l.span.file.rfind('/') + 1));
    }
    CHECK(ordinals.size() == labels.size());
    CHECK(p.label_count == labels.size());
    CHECK(files == std::set<std::string>{"lib_a.mgtlc", "lib_b.mgtlc", "main.mgtlc"});
  }
}
