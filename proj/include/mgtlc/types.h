#ifndef MGTLC_TYPES_H
#define MGTLC_TYPES_H

#include <memory>
#include <ostream>
#include <string>

namespace mgtlc {

/// Base types shared by both stages. `String` is an extension beyond the
/// calculus' base-type set {Nat, Int, Bool, Unit}; it exists so that file
/// contents can be quoted, and the term generators never produce it.
enum class BaseType { Nat, Int, Bool, Unit, String };

std::string to_string(BaseType b);
bool is_extension(BaseType b);

/// Object-language type: `ι | S -> T`. Fully static.
class ObjType {
 public:
  static ObjType base(BaseType b);
  static ObjType fun(ObjType param, ObjType result);

  static ObjType nat() { return base(BaseType::Nat); }
  static ObjType int_() { return base(BaseType::Int); }
  static ObjType boolean() { return base(BaseType::Bool); }
  static ObjType unit() { return base(BaseType::Unit); }
  static ObjType string() { return base(BaseType::String); }

  bool is_base() const { return fun_ == nullptr; }
  bool is_fun() const { return fun_ != nullptr; }
  BaseType base_type() const { return base_; }
  const ObjType &param() const;
  const ObjType &result() const;
  int depth() const;

  friend bool operator==(const ObjType &a, const ObjType &b);

 private:
  struct FunRep;
  ObjType() = default;

  BaseType base_ = BaseType::Int;
  std::shared_ptr<const FunRep> fun_;
};

struct ObjType::FunRep {
  ObjType param;
  ObjType result;
};

/// Metalanguage type: `ι | ★ | A -> B | Code T | Code★`.
class MetaType {
 public:
  enum class Kind { Base, Star, Fun, Code, CodeStar };

  static MetaType base(BaseType b);
  static MetaType star();
  static MetaType fun(MetaType param, MetaType result);
  static MetaType code(ObjType t);
  static MetaType code_star();

  static MetaType int_() { return base(BaseType::Int); }
  static MetaType boolean() { return base(BaseType::Bool); }

  Kind kind() const { return kind_; }
  bool is_star() const { return kind_ == Kind::Star; }
  bool is_fun() const { return kind_ == Kind::Fun; }
  bool is_base() const { return kind_ == Kind::Base; }
  bool is_code() const { return kind_ == Kind::Code; }
  bool is_code_star() const { return kind_ == Kind::CodeStar; }

  BaseType base_type() const { return base_; }
  const MetaType &param() const;
  const MetaType &result() const;
  const ObjType &code_type() const;

  /// Ground types: ι, ★ -> ★ and Code★.
  bool is_ground() const;
  /// Atomic types: ι and ★.
  bool is_atomic() const;

  /// Constructor depth; Code T counts one level plus the depth of T.
  int depth() const;

  friend bool operator==(const MetaType &a, const MetaType &b);

 private:
  struct FunRep;
  explicit MetaType(Kind k) : kind_(k) {}

  Kind kind_;
  BaseType base_ = BaseType::Int;
  std::shared_ptr<const FunRep> fun_;
  std::shared_ptr<const ObjType> code_;
};

struct MetaType::FunRep {
  MetaType param;
  MetaType result;
};

MetaType lift(const ObjType &t);

std::string to_string(const ObjType &t);
std::string to_string(const MetaType &t);
std::ostream &operator<<(std::ostream &os, const ObjType &t);
std::ostream &operator<<(std::ostream &os, const MetaType &t);

}  // namespace mgtlc

#endif  // MGTLC_TYPES_H
