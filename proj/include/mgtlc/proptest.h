#ifndef MGTLC_PROPTEST_H
#define MGTLC_PROPTEST_H

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mgtlc/cc.h"
#include "mgtlc/syntax.h"
#include "mgtlc/types.h"

namespace mgtlc {

struct GenConfig {
  std::uint64_t seed = 0;
  /// Upper bound on term_size of generated programs.
  std::size_t max_size = 30;
  /// Constructor depth of generated annotations and goal types.
  int type_depth = 2;
  /// Probability that a generated annotation or consistent variant is ★.
  double star_bias = 0.5;
};

/// Generates closed, well-typed core terms (variables, constants, lambdas,
/// applications, quotes, and inside quotes object lambdas, applications,
/// annotations and splices). Never produces String, primitives or `if`.
class TermGenerator {
 public:
  explicit TermGenerator(GenConfig cfg);

  /// A closed program of type Code T for a random T; returns it with its type.
  std::pair<MetaPtr, MetaType> program();
  /// A closed metaterm of exactly type `goal`.
  MetaPtr meta_of(const MetaType &goal);
  /// A closed splice-free object term that synthesizes exactly `goal`.
  ObjPtr stlc_of(const ObjType &goal);

  ObjType random_obj_type(int depth);
  MetaType random_meta_type(int depth);
  /// A random type consistent with `t`, more or less precise than it.
  MetaType consistent_variant(const MetaType &t);

 private:
  bool chance(double p);
  std::size_t pick(std::size_t n);
  std::string fresh_name();
  BlameLabel label();
  Literal literal_of(BaseType b);

  MetaPtr meta(const TypingContext &ctx, const MetaType &goal, int budget);
  MetaPtr minimal_meta(const TypingContext &ctx, const MetaType &goal);
  MetaPtr inject(const TypingContext &ctx, const MetaType &goal, const MetaType &from, int budget);
  ObjPtr synth(const TypingContext &ctx, const ObjType &goal, int budget);
  ObjPtr check(const TypingContext &ctx, const ObjType &goal, int budget);
  ObjPtr minimal_synth(const TypingContext &ctx, const ObjType &goal);
  ObjPtr minimal_check(const TypingContext &ctx, const ObjType &goal);

  GenConfig cfg_;
  std::mt19937_64 rng_;
  std::uint32_t next_label_ = 1;
  bool allow_splices_ = true;
};

/// Outcome of running one program under the safety oracle.
struct SafetyVerdict {
  enum class Kind { SafeValue, SafeBlame, Timeout, RuntimeFailure, Violation };
  Kind kind;
  /// For a violation: which property failed and how.
  std::string detail;
  /// For a violation: the offending intermediate term, when there is one.
  CCMetaPtr witness;
  std::uint64_t steps = 0;
};

std::string to_string(SafetyVerdict::Kind kind);

/// Compiles and runs `term` (which must have type Code T), checking at each
/// step that the term validates at Code T and can step unless it is a value
/// or blame, that a final value is quoted splice-free code of type T, and
/// that a blame label occurs in the source.
SafetyVerdict check_type_safety(const MetaTerm &term, std::uint64_t fuel);

/// Greedily replaces subterms by their own subterms while the result still
/// has some type Code T and `still_fails` holds; returns the smallest term
/// found.
MetaPtr shrink(const MetaPtr &term, const std::function<bool(const MetaTerm &)> &still_fails);

/// Every metatype up to constructor depth `depth` over Int, Bool, ★, -> and
/// Code, with object types up to depth `depth - 1`.
std::vector<MetaType> enumerate_meta_types(int depth);
/// Every object type over Nat, Int, Bool and Unit up to depth `depth`.
std::vector<ObjType> enumerate_obj_types(int depth);

struct CoerceReport {
  std::size_t pairs = 0;
  std::size_t consistent = 0;
  std::size_t ok = 0;
  std::vector<std::string> failures;
};
/// coerce on every consistent pair of enumerate_meta_types(depth).
CoerceReport check_coerce_totality(int depth);

struct DichotomyReport {
  std::size_t ground_pairs = 0;
  std::size_t ground_ok = 0;
  std::size_t code_pairs = 0;
  std::size_t code_ok = 0;
  std::vector<std::string> failures;
};
/// V⟨G!⟩⟨H?ℓ⟩ for all ground pairs and V⟨code! S⟩⟨code?ℓ T⟩ for all object
/// types up to `obj_depth`.
DichotomyReport check_projection_dichotomy(int obj_depth);

struct IdentityReport {
  std::size_t cases = 0;
  std::size_t ok = 0;
  std::vector<std::string> failures;
};
/// V⟨coerce A A ℓ⟩ reduces back to V for values of every shape. Function
/// values come back wrapped, so they are compared by applying both to the
/// same argument.
IdentityReport check_identity_roundtrip();

struct EnumerationReport {
  std::size_t terms = 0;
  std::size_t typed = 0;
  std::size_t compiled = 0;
  std::size_t code_typed = 0;
  std::size_t safe = 0;
  std::vector<std::string> failures;
};
/// Every core term of at most `max_nodes` nodes over a small alphabet
/// (names x and y, literals 0 and true, annotations ★, Int and Code Int):
/// typing must be deterministic, compilation must validate, and programs of
/// type Code T must run safely.
EnumerationReport enumerate_small_terms(std::size_t max_nodes);

struct OracleReport {
  CoerceReport coerce;
  DichotomyReport dichotomy;
  IdentityReport identity;
  EnumerationReport terms;
  bool passed() const;
};
OracleReport enumerate_small_oracles();

struct FuzzSummary {
  std::size_t programs = 0;
  std::size_t safe_value = 0;
  std::size_t safe_blame = 0;
  std::size_t timeout = 0;
  std::size_t runtime_failure = 0;
  std::size_t violations = 0;
  std::uint64_t steps = 0;
  std::size_t max_size_seen = 0;
  /// Shrunk witnesses of violations, rendered.
  std::vector<std::string> witnesses;
};

/// Runs `count` generated programs, the i-th from seed mix(cfg.seed, i), so
/// any slice of the range can be reproduced on its own.
FuzzSummary fuzz(const GenConfig &cfg, std::size_t first, std::size_t count, std::uint64_t fuel);
void merge(FuzzSummary &into, const FuzzSummary &from);

/// Seed of the i-th program of a campaign.
std::uint64_t program_seed(std::uint64_t base, std::uint64_t index);

}  // namespace mgtlc

#endif  // MGTLC_PROPTEST_H
