#ifndef MGTLC_CC_H
#define MGTLC_CC_H

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mgtlc/coercion.h"
#include "mgtlc/syntax.h"
#include "mgtlc/types.h"

namespace mgtlc {

struct CCMeta;
struct CCCode;
using CCMetaPtr = std::shared_ptr<const CCMeta>;
using CCCodePtr = std::shared_ptr<const CCCode>;

/// Types at a failed projection; carried by blame for diagnostics only.
struct BlameCause {
  MetaType expected;
  MetaType actual;
};

/// Cast-calculus metaterms. Applications carry no labels; those live in
/// the projections of the inserted coercions.
struct CCMeta {
  struct Var {
    std::string name;
  };
  struct Const {
    Literal value;
  };
  struct Lam {
    std::string param;
    MetaType annot;
    CCMetaPtr body;
  };
  struct App {
    CCMetaPtr fn;
    CCMetaPtr arg;
  };
  struct Quote {
    CCCodePtr body;
  };
  struct Cast {
    CCMetaPtr term;
    CoercionPtr coercion;
  };
  struct Blame {
    BlameLabel label;
    std::optional<BlameCause> cause;
  };
  struct Prim {
    PrimOp op;
    std::vector<CCMetaPtr> args;
  };
  struct If {
    CCMetaPtr cond;
    CCMetaPtr then_branch;
    CCMetaPtr else_branch;
  };
  struct Builtin {
    std::string name;
    std::string base_dir;
  };

  using Node = std::variant<Var, Const, Lam, App, Quote, Cast, Blame, Prim, If, Builtin>;

  CCMeta(Node n, bool splice) : node(std::move(n)), has_splice(splice) {}

  template <class T>
  const T *as() const {
    return std::get_if<T>(&node);
  }

  Node node;
  /// Cached: whether a splice occurs anywhere below this node.
  bool has_splice;
};

/// Cast-calculus code terms. Splices carry no labels.
struct CCCode {
  struct Var {
    std::string name;
  };
  struct Const {
    Literal value;
  };
  struct Lam {
    std::string param;
    CCCodePtr body;
  };
  struct App {
    CCCodePtr fn;
    CCCodePtr arg;
  };
  struct Ann {
    CCCodePtr term;
    ObjType type;
  };
  struct Splice {
    CCMetaPtr term;
  };
  struct Prim {
    PrimOp op;
    std::vector<CCCodePtr> args;
  };

  using Node = std::variant<Var, Const, Lam, App, Ann, Splice, Prim>;

  CCCode(Node n, bool splice) : node(std::move(n)), has_splice(splice) {}

  template <class T>
  const T *as() const {
    return std::get_if<T>(&node);
  }

  Node node;
  bool has_splice;
};

namespace cc {
CCMetaPtr var(std::string name);
CCMetaPtr constant(Literal value);
CCMetaPtr lam(std::string param, MetaType annot, CCMetaPtr body);
CCMetaPtr app(CCMetaPtr fn, CCMetaPtr arg);
CCMetaPtr quote(CCCodePtr body);
CCMetaPtr cast(CCMetaPtr term, CoercionPtr c);
CCMetaPtr blame(BlameLabel label, std::optional<BlameCause> cause = std::nullopt);
CCMetaPtr prim(PrimOp op, std::vector<CCMetaPtr> args);
CCMetaPtr if_(CCMetaPtr cond, CCMetaPtr then_branch, CCMetaPtr else_branch);
CCMetaPtr builtin(std::string name, std::string base_dir);

CCCodePtr ovar(std::string name);
CCCodePtr oconstant(Literal value);
CCCodePtr olam(std::string param, CCCodePtr body);
CCCodePtr oapp(CCCodePtr fn, CCCodePtr arg);
CCCodePtr oann(CCCodePtr term, ObjType type);
CCCodePtr splice(CCMetaPtr term);
CCCodePtr oprim(PrimOp op, std::vector<CCCodePtr> args);
}  // namespace cc

inline bool splice_free(const CCCode &code) { return !code.has_splice; }

/// Free variables of either stage; the two stages share one namespace, so a
/// binder of either stage shadows outer bindings of both.
std::set<std::string> free_vars(const CCMeta &term);
std::set<std::string> free_vars(const CCCode &term);

/// Capture-avoiding substitution of `value` for the metalanguage variable
/// `name`. Descends through quotes and back through splices; binders that
/// would capture a free variable of `value` are renamed.
CCMetaPtr subst_meta(const CCMetaPtr &body, const std::string &name, const CCMetaPtr &value);
/// Renames free occurrences of `from` (either stage) to `to`.
CCMetaPtr rename_var(const CCMetaPtr &term, const std::string &from, const std::string &to);

bool alpha_equiv(const CCMeta &a, const CCMeta &b);
bool alpha_equiv(const CCCode &a, const CCCode &b);
bool equal(const Coercion &a, const Coercion &b);

std::size_t term_size(const CCMeta &term);
std::size_t term_size(const CCCode &term);

/// Every label appearing in a coercion or blame inside the term.
std::vector<BlameLabel> cc_labels(const CCMeta &term);

/// Textual cast-calculus form, e.g. `λx:★. ≺(1 + ~x⟨Code★?ℓ1 ; code?ℓ1 Int⟩)≻`.
std::string to_string(const CCMeta &term);
std::string to_string(const CCCode &term);

}  // namespace mgtlc

#endif  // MGTLC_CC_H
