#ifndef MGTLC_COERCION_H
#define MGTLC_COERCION_H

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mgtlc/syntax.h"
#include "mgtlc/types.h"

namespace mgtlc {

/// Raised when an invariant that well-typed input guarantees is violated.
/// Always a bug in this implementation, never a user error.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class Coercion;
using CoercionPtr = std::shared_ptr<const Coercion>;

/// Cast combinators. Only the two projection forms carry a blame label.
class Coercion {
 public:
  struct Id {
    MetaType atomic;
  };
  struct Inj {
    MetaType ground;
  };
  struct Proj {
    MetaType ground;
    BlameLabel label;
  };
  struct Fun {
    CoercionPtr arg;
    CoercionPtr res;
  };
  struct Seq {
    CoercionPtr first;
    CoercionPtr second;
  };
  struct CodeIdStar {};
  struct CodeIdT {
    ObjType type;
  };
  struct CodeInj {
    ObjType type;
  };
  struct CodeProj {
    ObjType type;
    BlameLabel label;
  };

  using Node = std::variant<Id, Inj, Proj, Fun, Seq, CodeIdStar, CodeIdT, CodeInj, CodeProj>;

  explicit Coercion(Node n) : node(std::move(n)) {}

  template <class T>
  const T *as() const {
    return std::get_if<T>(&node);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(node);
  }

  /// Inert coercions turn a value into a value: G!, code! T and c -> d.
  bool is_inert() const { return is<Inj>() || is<CodeInj>() || is<Fun>(); }

  Node node;
};

namespace coercion {
CoercionPtr id(MetaType atomic);
CoercionPtr inj(MetaType ground);
CoercionPtr proj(MetaType ground, BlameLabel label);
CoercionPtr fun(CoercionPtr arg, CoercionPtr res);
CoercionPtr seq(CoercionPtr first, CoercionPtr second);
CoercionPtr code_id_star();
CoercionPtr code_id(ObjType t);
CoercionPtr code_inj(ObjType t);
CoercionPtr code_proj(ObjType t, BlameLabel label);
}  // namespace coercion

struct CoercionType {
  MetaType source;
  MetaType target;
};

/// `⊢ c : A ⇒ B`. Throws InternalError for an ill-formed coercion.
CoercionType coercion_type(const Coercion &c);

/// The ground type a non-★ type routes through when cast to or from ★.
MetaType ground_of(const MetaType &a);

/// Generates a coercion from `a` to `b`; requires `a ~ b`.
CoercionPtr coerce(const MetaType &a, const MetaType &b, const BlameLabel &label);

/// Labels of every projection inside `c`.
std::vector<BlameLabel> coercion_labels(const Coercion &c);

std::string to_string(const Coercion &c);

}  // namespace mgtlc

#endif  // MGTLC_COERCION_H
