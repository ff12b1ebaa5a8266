#include "mgtlc/types.h"

#include <algorithm>
#include <cassert>

namespace mgtlc {

std::string to_string(BaseType b) {
  switch (b) {
    case BaseType::Nat:
      return "Nat";
    case BaseType::Int:
      return "Int";
    case BaseType::Bool:
      return "Bool";
    case BaseType::Unit:
      return "Unit";
    case BaseType::String:
      return "String";
  }
  return "?";
}

bool is_extension(BaseType b) { return b == BaseType::String; }

ObjType ObjType::base(BaseType b) {
  ObjType t;
  t.base_ = b;
  return t;
}

ObjType ObjType::fun(ObjType param, ObjType result) {
  ObjType t;
  t.fun_ = std::make_shared<const FunRep>(FunRep{std::move(param), std::move(result)});
  return t;
}

const ObjType &ObjType::param() const {
  assert(fun_);
  return fun_->param;
}

const ObjType &ObjType::result() const {
  assert(fun_);
  return fun_->result;
}

int ObjType::depth() const {
  if (!fun_) return 1;
  return 1 + std::max(fun_->param.depth(), fun_->result.depth());
}

bool operator==(const ObjType &a, const ObjType &b) {
  if (a.fun_ == b.fun_) return a.fun_ != nullptr || a.base_ == b.base_;
  if (!a.fun_ || !b.fun_) return false;
  return a.fun_->param == b.fun_->param && a.fun_->result == b.fun_->result;
}

MetaType MetaType::base(BaseType b) {
  MetaType t(Kind::Base);
  t.base_ = b;
  return t;
}

MetaType MetaType::star() { return MetaType(Kind::Star); }

MetaType MetaType::fun(MetaType param, MetaType result) {
  MetaType t(Kind::Fun);
  t.fun_ = std::make_shared<const FunRep>(FunRep{std::move(param), std::move(result)});
  return t;
}

MetaType MetaType::code(ObjType obj) {
  MetaType t(Kind::Code);
  t.code_ = std::make_shared<const ObjType>(std::move(obj));
  return t;
}

MetaType MetaType::code_star() { return MetaType(Kind::CodeStar); }

const MetaType &MetaType::param() const {
  assert(kind_ == Kind::Fun);
  return fun_->param;
}

const MetaType &MetaType::result() const {
  assert(kind_ == Kind::Fun);
  return fun_->result;
}

const ObjType &MetaType::code_type() const {
  assert(kind_ == Kind::Code);
  return *code_;
}

bool MetaType::is_ground() const {
  switch (kind_) {
    case Kind::Base:
    case Kind::CodeStar:
      return true;
    case Kind::Fun:
      return fun_->param.is_star() && fun_->result.is_star();
    default:
      return false;
  }
}

bool MetaType::is_atomic() const { return kind_ == Kind::Base || kind_ == Kind::Star; }

int MetaType::depth() const {
  switch (kind_) {
    case Kind::Fun:
      return 1 + std::max(fun_->param.depth(), fun_->result.depth());
    case Kind::Code:
      return 1 + code_->depth();
    default:
      return 1;
  }
}

bool operator==(const MetaType &a, const MetaType &b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case MetaType::Kind::Base:
      return a.base_ == b.base_;
    case MetaType::Kind::Fun:
      return a.fun_ == b.fun_ ||
             (a.fun_->param == b.fun_->param && a.fun_->result == b.fun_->result);
    case MetaType::Kind::Code:
      return a.code_ == b.code_ || *a.code_ == *b.code_;
    default:
      return true;
  }
}

MetaType lift(const ObjType &t) {
  if (t.is_base()) return MetaType::base(t.base_type());
  return MetaType::fun(lift(t.param()), lift(t.result()));
}

std::string to_string(const ObjType &t) {
  if (t.is_base()) return to_string(t.base_type());
  std::string lhs = to_string(t.param());
  if (t.param().is_fun()) lhs = "(" + lhs + ")";
  return lhs + " -> " + to_string(t.result());
}

std::string to_string(const MetaType &t) {
  switch (t.kind()) {
    case MetaType::Kind::Base:
      return to_string(t.base_type());
    case MetaType::Kind::Star:
      return "★";
    case MetaType::Kind::CodeStar:
      return "Code ★";
    case MetaType::Kind::Code: {
      const ObjType &obj = t.code_type();
      return obj.is_fun() ? "Code (" + to_string(obj) + ")" : "Code " + to_string(obj);
    }
    case MetaType::Kind::Fun: {
      std::string lhs = to_string(t.param());
      if (t.param().is_fun()) lhs = "(" + lhs + ")";
      return lhs + " -> " + to_string(t.result());
    }
  }
  return "?";
}

std::ostream &operator<<(std::ostream &os, const ObjType &t) { return os << to_string(t); }
std::ostream &operator<<(std::ostream &os, const MetaType &t) { return os << to_string(t); }

}  // namespace mgtlc
