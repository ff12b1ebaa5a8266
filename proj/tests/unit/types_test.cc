#include <doctest.h>

#include "helpers.h"
#include "mgtlc/typecheck.h"

using namespace mgtlc;
using namespace testing;

TEST_SUITE("types") {
  TEST_CASE("rendering") {
    CHECK(to_string(star()) == "★");
    CHECK(to_string(arrow(int_t(), arrow(star(), bool_t()))) == "Int -> ★ -> Bool");
    CHECK(to_string(arrow(arrow(int_t(), int_t()), int_t())) == "(Int -> Int) -> Int");
    CHECK(to_string(code(oarrow(oint(), oint()))) == "Code (Int -> Int)");
    CHECK(to_string(code_star()) == "Code ★");
    CHECK(to_string(ObjType::nat()) == "Nat");
  }

  TEST_CASE("structural equality") {
    CHECK(arrow(int_t(), star()) == arrow(int_t(), star()));
    CHECK_FALSE(arrow(int_t(), star()) == arrow(star(), int_t()));
    CHECK_FALSE(code(oint()) == code_star());
    CHECK_FALSE(code(oint()) == code(obool()));
    CHECK(lift(oarrow(oint(), obool())) == arrow(int_t(), bool_t()));
  }

  TEST_CASE("ground and atomic types") {
    CHECK(int_t().is_ground());
    CHECK(arrow(star(), star()).is_ground());
    CHECK(code_star().is_ground());
    CHECK_FALSE(star().is_ground());
    CHECK_FALSE(arrow(int_t(), star()).is_ground());
    CHECK_FALSE(code(oint()).is_ground());
    CHECK(int_t().is_atomic());
    CHECK(star().is_atomic());
    CHECK_FALSE(code_star().is_atomic());
    CHECK_FALSE(arrow(star(), star()).is_atomic());
  }

  TEST_CASE("depth counts constructors") {
    CHECK(int_t().depth() == 1);
    CHECK(arrow(int_t(), arrow(int_t(), int_t())).depth() == 3);
    CHECK(code(oarrow(oint(), oint())).depth() == 3);
    CHECK(code_star().depth() == 1);
  }

  TEST_CASE("consistency") {
    CHECK(consistent(star(), arrow(int_t(), bool_t())));
    CHECK(consistent(code(oint()), star()));
    CHECK(consistent(int_t(), int_t()));
    CHECK_FALSE(consistent(int_t(), bool_t()));
    CHECK(consistent(arrow(star(), int_t()), arrow(bool_t(), star())));
    CHECK_FALSE(consistent(arrow(int_t(), int_t()), arrow(bool_t(), int_t())));
    CHECK(consistent(code_star(), code(oint())));
    CHECK(consistent(code(oint()), code_star()));
    CHECK(consistent(code_star(), code_star()));
    CHECK_FALSE(consistent(code(oint()), code(obool())));
    CHECK_FALSE(consistent(code_star(), int_t()));
    CHECK_FALSE(consistent(code(oint()), arrow(star(), star())));
  }

  TEST_CASE("consistency is reflexive and symmetric but not transitive") {
    std::vector<MetaType> sample = {int_t(), bool_t(), star(), code_star(), code(oint()),
                                    arrow(star(), int_t()), arrow(int_t(), star())};
    for (const auto &a : sample) {
      CHECK(consistent(a, a));
      for (const auto &b : sample) CHECK(consistent(a, b) == consistent(b, a));
    }
    CHECK(consistent(int_t(), star()));
    CHECK(consistent(star(), bool_t()));
    CHECK_FALSE(consistent(int_t(), bool_t()));
  }
}
