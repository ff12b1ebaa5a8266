#ifndef MGTLC_EVAL_H
#define MGTLC_EVAL_H

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mgtlc/cc.h"
#include "mgtlc/syntax.h"
#include "mgtlc/types.h"

namespace mgtlc {

enum class ValueKind { Const, Lam, Builtin, Wrapped, QuotedCode };

std::string to_string(ValueKind kind);

std::optional<ValueKind> is_value(const CCMeta &term);

/// Outcome of one metalanguage reduction attempt.
struct MetaStep {
  enum class Kind {
    Stepped,
    IsValue,
    IsBlame,
    Stuck,
    /// A builtin failed at runtime (missing file, unparsable integer).
    Failed,
  };
  Kind kind;
  CCMetaPtr next;
  std::string message;
};

/// Outcome of one code-language reduction attempt.
struct CodeStep {
  enum class Kind {
    Stepped,
    IsSpliceFree,
    /// The term is `~blame ℓ`; the enclosing frame lifts it one level.
    SplicedBlame,
    Stuck,
    Failed,
  };
  Kind kind;
  CCCodePtr next;
  std::string message;
};

MetaStep step_meta(const CCMetaPtr &term);
CodeStep step_code(const CCCodePtr &term);

struct EvalResult {
  struct Code {
    CCCodePtr body;
    ObjType type;
  };
  struct Blame {
    BlameLabel label;
    std::optional<BlameCause> cause;
  };
  struct Timeout {};
  struct Stuck {
    CCMetaPtr snapshot;
    std::string reason;
  };
  struct RuntimeError {
    std::string message;
  };

  std::variant<Code, Blame, Timeout, Stuck, RuntimeError> outcome;
  std::uint64_t steps = 0;

  template <class T>
  const T *as() const {
    return std::get_if<T>(&outcome);
  }
};

/// Called with each term reached, starting with the initial one.
using StepObserver = std::function<void(std::uint64_t index, const CCMetaPtr &term)>;

/// Reduces a closed compiled term of type Code `type` for at most `fuel`
/// steps (0 means no limit).
EvalResult run_compiled(const CCMetaPtr &term, const ObjType &type, std::uint64_t fuel,
                        const StepObserver &observer = {});

/// Requires `∅ ⊢m term : Code T`; throws TypeError otherwise. Compiles with
/// validation, then runs.
EvalResult meta_eval(const MetaTerm &term, std::uint64_t fuel);

struct TraceEntry {
  CCMetaPtr term;
  MetaType type;
};

struct Trace {
  std::vector<TraceEntry> entries;
  EvalResult result;
};

/// Like meta_eval, recording every intermediate term with its re-validated
/// type. Throws ValidationError if some snapshot does not have the program's
/// type.
Trace trace(const MetaTerm &term, std::uint64_t fuel);

/// The type a snapshot validates at, given the program type Code `type`.
/// Throws ValidationError when it does not.
MetaType validate_snapshot(const CCMeta &term, const ObjType &type);

inline constexpr std::uint64_t kDefaultFuel = 100000;

}  // namespace mgtlc

#endif  // MGTLC_EVAL_H
