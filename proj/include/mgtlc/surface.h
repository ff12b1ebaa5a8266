#ifndef MGTLC_SURFACE_H
#define MGTLC_SURFACE_H

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mgtlc/syntax.h"
#include "mgtlc/types.h"

namespace mgtlc {

struct SurfaceExpr;
struct SurfaceObj;
using SurfaceExprPtr = std::shared_ptr<const SurfaceExpr>;
using SurfaceObjPtr = std::shared_ptr<const SurfaceObj>;

/// A parameter of `fun` or of a function-defining `let`. Unannotated
/// parameters have type ★.
struct SurfaceParam {
  std::string name;
  std::optional<MetaType> annot;
  SourceSpan span;
};

/// Metalanguage expressions as written, before desugaring.
struct SurfaceExpr {
  struct Var {
    std::string name;
  };
  struct Lit {
    Literal value;
  };
  struct Fun {
    std::vector<SurfaceParam> params;
    SurfaceExprPtr body;
  };
  struct App {
    SurfaceExprPtr fn;
    SurfaceExprPtr arg;
    BlameLabel label;
  };
  /// `let name params* [: A] = rhs in body`. With parameters, `annot` is
  /// the result type and `result_label` blames the cast of the body to it.
  struct Let {
    std::string name;
    std::vector<SurfaceParam> params;
    std::optional<MetaType> annot;
    SurfaceExprPtr rhs;
    SurfaceExprPtr body;
    BlameLabel label;
    std::optional<BlameLabel> result_label;
  };
  struct If {
    SurfaceExprPtr cond;
    SurfaceExprPtr then_branch;
    SurfaceExprPtr else_branch;
    BlameLabel label;
  };
  struct Prim {
    PrimOp op;
    SurfaceExprPtr lhs;
    SurfaceExprPtr rhs;
    BlameLabel label;
  };
  struct Ascribe {
    SurfaceExprPtr term;
    MetaType type;
    BlameLabel label;
  };
  struct Quote {
    SurfaceObjPtr body;
  };

  using Node = std::variant<Var, Lit, Fun, App, Let, If, Prim, Ascribe, Quote>;
  Node node;
  SourceSpan span;
};

/// Object-language expressions inside `<| |>`.
struct SurfaceObj {
  struct Var {
    std::string name;
  };
  struct Lit {
    Literal value;
  };
  struct Lam {
    std::string param;
    std::optional<ObjType> annot;
    SurfaceObjPtr body;
  };
  struct App {
    SurfaceObjPtr fn;
    SurfaceObjPtr arg;
  };
  struct Ann {
    SurfaceObjPtr term;
    ObjType type;
  };
  struct Splice {
    SurfaceExprPtr term;
    BlameLabel label;
  };
  struct Prim {
    PrimOp op;
    SurfaceObjPtr lhs;
    SurfaceObjPtr rhs;
  };

  using Node = std::variant<Var, Lit, Lam, App, Ann, Splice, Prim>;
  Node node;
  SourceSpan span;
};

/// A top-level `let` of a file: a `let` without `in`.
struct TopLevelLet {
  std::string name;
  std::vector<SurfaceParam> params;
  std::optional<MetaType> annot;
  SurfaceExprPtr rhs;
  BlameLabel label;
  std::optional<BlameLabel> result_label;
  SourceSpan span;
};

struct SurfaceImport {
  std::string path;
  SourceSpan span;
};

struct SurfaceProgram {
  std::string file;
  std::vector<SurfaceImport> imports;
  std::vector<TopLevelLet> items;
  /// Absent for library files.
  SurfaceExprPtr final_expr;
};

}  // namespace mgtlc

#endif  // MGTLC_SURFACE_H
