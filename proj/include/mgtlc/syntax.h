#ifndef MGTLC_SYNTAX_H
#define MGTLC_SYNTAX_H

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mgtlc/types.h"

namespace mgtlc {

struct SourceSpan {
  std::string file;
  int line = 0;
  int col = 0;
  int end_line = 0;
  int end_col = 0;

  bool valid() const { return line > 0; }
  friend bool operator==(const SourceSpan &, const SourceSpan &) = default;
};

/// Joins two spans of the same file into one covering both.
SourceSpan cover(const SourceSpan &from, const SourceSpan &to);
std::string to_string(const SourceSpan &span);

/// Identifies the source site that inserted a cast. The ordinal is unique
/// within one compilation unit (a main file plus everything it imports).
struct BlameLabel {
  SourceSpan span;
  std::uint32_t ordinal = 0;

  friend bool operator==(const BlameLabel &a, const BlameLabel &b) {
    return a.ordinal == b.ordinal && a.span == b.span;
  }
};

/// Short form used inside terms and coercions, e.g. `ℓ3`.
std::string label_name(const BlameLabel &l);
/// Human-readable location, e.g. `main.mgtlc:9:5`.
std::string describe(const BlameLabel &l);

class Literal {
 public:
  static Literal nat(std::uint64_t v);
  static Literal integer(std::int64_t v);
  static Literal boolean(bool v);
  static Literal unit();
  static Literal string(std::string v);

  BaseType type() const { return type_; }
  std::int64_t as_int() const { return number_; }
  std::uint64_t as_nat() const { return static_cast<std::uint64_t>(number_); }
  bool as_bool() const { return number_ != 0; }
  const std::string &as_string() const { return text_; }

  friend bool operator==(const Literal &, const Literal &) = default;

 private:
  explicit Literal(BaseType t) : type_(t) {}

  BaseType type_;
  std::int64_t number_ = 0;
  std::string text_;
};

std::string to_string(const Literal &lit);

enum class PrimOp { Add, Sub, Mul, Lt, Gt };

std::string to_string(PrimOp op);
/// All primitive operators take two Int operands.
ObjType prim_result(PrimOp op);

/// File-reading functions bound in the initial environment.
struct BuiltinInfo {
  std::string name;
  MetaType type;
};
std::optional<BuiltinInfo> find_builtin(const std::string &name);

struct MetaTerm;
struct ObjTerm;
using MetaPtr = std::shared_ptr<const MetaTerm>;
using ObjPtr = std::shared_ptr<const ObjTerm>;

/// Metalanguage terms of the gradual source language.
struct MetaTerm {
  struct Var {
    std::string name;
  };
  struct Const {
    Literal value;
  };
  struct Lam {
    std::string param;
    MetaType annot;
    MetaPtr body;
  };
  struct App {
    MetaPtr fn;
    MetaPtr arg;
    BlameLabel label;
  };
  struct Quote {
    ObjPtr body;
  };
  struct Prim {
    PrimOp op;
    std::vector<MetaPtr> args;
    BlameLabel label;
  };
  struct If {
    MetaPtr cond;
    MetaPtr then_branch;
    MetaPtr else_branch;
    BlameLabel label;
  };
  /// A reference to a builtin. `base_dir` is the directory relative paths
  /// are resolved against (the directory of the file that named it).
  struct Builtin {
    std::string name;
    std::string base_dir;
  };

  using Node = std::variant<Var, Const, Lam, App, Quote, Prim, If, Builtin>;
  Node node;
  SourceSpan span;
};

/// Code terms: STLC plus splice.
struct ObjTerm {
  struct Var {
    std::string name;
  };
  struct Const {
    Literal value;
  };
  struct Lam {
    std::string param;
    ObjPtr body;
  };
  struct App {
    ObjPtr fn;
    ObjPtr arg;
  };
  struct Ann {
    ObjPtr term;
    ObjType type;
  };
  struct Splice {
    MetaPtr term;
    BlameLabel label;
  };
  struct Prim {
    PrimOp op;
    std::vector<ObjPtr> args;
  };

  using Node = std::variant<Var, Const, Lam, App, Ann, Splice, Prim>;
  Node node;
  SourceSpan span;
};

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

namespace meta {
MetaPtr var(std::string name, SourceSpan span = {});
MetaPtr constant(Literal value, SourceSpan span = {});
MetaPtr lam(std::string param, MetaType annot, MetaPtr body, SourceSpan span = {});
MetaPtr app(MetaPtr fn, MetaPtr arg, BlameLabel label, SourceSpan span = {});
MetaPtr quote(ObjPtr body, SourceSpan span = {});
MetaPtr prim(PrimOp op, std::vector<MetaPtr> args, BlameLabel label, SourceSpan span = {});
MetaPtr if_(MetaPtr cond, MetaPtr then_branch, MetaPtr else_branch, BlameLabel label,
            SourceSpan span = {});
MetaPtr builtin(std::string name, std::string base_dir, SourceSpan span = {});
}  // namespace meta

namespace obj {
ObjPtr var(std::string name, SourceSpan span = {});
ObjPtr constant(Literal value, SourceSpan span = {});
ObjPtr lam(std::string param, ObjPtr body, SourceSpan span = {});
ObjPtr app(ObjPtr fn, ObjPtr arg, SourceSpan span = {});
ObjPtr ann(ObjPtr term, ObjType type, SourceSpan span = {});
ObjPtr splice(MetaPtr term, BlameLabel label, SourceSpan span = {});
ObjPtr prim(PrimOp op, std::vector<ObjPtr> args, SourceSpan span = {});
}  // namespace obj

/// True iff no splice occurs anywhere in the term, including under binders.
bool splice_free(const ObjTerm &term);
bool splice_free(const MetaTerm &term);

/// Number of AST nodes, counting both stages.
std::size_t term_size(const MetaTerm &term);
std::size_t term_size(const ObjTerm &term);

/// Every blame label minted into the term (applications, splices, and the
/// extension forms).
std::vector<BlameLabel> collect_labels(const MetaTerm &term);

/// A typing-context entry is tagged with the stage of its variable.
struct Binding {
  enum class Stage { Object, Meta };
  std::string name;
  Stage stage;
  std::optional<ObjType> otype;
  std::optional<MetaType> mtype;

  bool is_object() const { return stage == Stage::Object; }
  bool is_meta() const { return stage == Stage::Meta; }
};

/// Immutable association list; extending returns a new context and shares
/// the tail with the old one.
class TypingContext {
 public:
  TypingContext() = default;

  TypingContext with_object(std::string name, ObjType t) const;
  TypingContext with_meta(std::string name, MetaType t) const;

  /// Innermost binding of `name`, if any.
  const Binding *lookup(const std::string &name) const;
  /// Empty^m: no metalanguage variable is bound.
  bool empty_m() const;
  bool empty() const { return head_ == nullptr; }
  /// Entries from outermost to innermost.
  std::vector<Binding> entries() const;

 private:
  struct Node {
    Binding binding;
    std::shared_ptr<const Node> next;
  };
  explicit TypingContext(std::shared_ptr<const Node> head) : head_(std::move(head)) {}

  std::shared_ptr<const Node> head_;
};

}  // namespace mgtlc

#endif  // MGTLC_SYNTAX_H
