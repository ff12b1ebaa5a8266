#include "mgtlc/proptest.h"

#include <fmt/format.h>

#include "mgtlc/coercion.h"
#include "mgtlc/compile.h"
#include "mgtlc/eval.h"
#include "mgtlc/pretty.h"
#include "mgtlc/typecheck.h"

namespace mgtlc {

namespace {

constexpr const char *kNamePool[] = {"x", "y", "z", "f", "g"};
constexpr BaseType kCoreBases[] = {BaseType::Nat, BaseType::Int, BaseType::Bool, BaseType::Unit};
constexpr std::size_t kMaxFailures = 20;

void note_failure(std::vector<std::string> &failures, std::string what) {
  if (failures.size() < kMaxFailures) failures.push_back(std::move(what));
}

// The innermost binding of every name in scope, filtered by stage and type.
template <class Pred>
std::vector<std::string> visible(const TypingContext &ctx, Pred pred) {
  std::vector<std::string> out;
  auto entries = ctx.entries();
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    if (ctx.lookup(it->name) != nullptr && ctx.lookup(it->name)->name == it->name &&
        std::find(out.begin(), out.end(), it->name) == out.end()) {
      const Binding *innermost = ctx.lookup(it->name);
      if (pred(*innermost)) out.push_back(it->name);
    }
  }
  return out;
}

}  // namespace

TermGenerator::TermGenerator(GenConfig cfg) : cfg_(cfg), rng_(cfg.seed) {}

bool TermGenerator::chance(double p) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  return std::bernoulli_distribution(p)(rng_);
}

std::size_t TermGenerator::pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

std::string TermGenerator::fresh_name() { return kNamePool[pick(std::size(kNamePool))]; }

BlameLabel TermGenerator::label() {
  std::uint32_t n = next_label_++;
  return BlameLabel{SourceSpan{"<generated>", static_cast<int>(n), 1, static_cast<int>(n), 2}, n};
}

Literal TermGenerator::literal_of(BaseType b) {
  switch (b) {
    case BaseType::Nat:
      return Literal::nat(pick(10));
    case BaseType::Int:
      return Literal::integer(static_cast<std::int64_t>(pick(21)) - 10);
    case BaseType::Bool:
      return Literal::boolean(chance(0.5));
    case BaseType::Unit:
      return Literal::unit();
    case BaseType::String:
      break;
  }
  throw InternalError("generator asked for a String literal");
}

ObjType TermGenerator::random_obj_type(int depth) {
  if (depth <= 1 || chance(0.5)) return ObjType::base(kCoreBases[pick(4)]);
  return ObjType::fun(random_obj_type(depth - 1), random_obj_type(depth - 1));
}

MetaType TermGenerator::random_meta_type(int depth) {
  if (chance(cfg_.star_bias)) return MetaType::star();
  if (depth <= 1) {
    if (chance(0.15)) return MetaType::code_star();
    return MetaType::base(kCoreBases[pick(4)]);
  }
  switch (pick(4)) {
    case 0:
      return MetaType::fun(random_meta_type(depth - 1), random_meta_type(depth - 1));
    case 1:
      return MetaType::code(random_obj_type(depth - 1));
    case 2:
      return MetaType::code_star();
    default:
      return MetaType::base(kCoreBases[pick(4)]);
  }
}

MetaType TermGenerator::consistent_variant(const MetaType &t) {
  if (chance(cfg_.star_bias)) return MetaType::star();
  switch (t.kind()) {
    case MetaType::Kind::Star:
      return random_meta_type(cfg_.type_depth);
    case MetaType::Kind::Base:
      return t;
    case MetaType::Kind::Fun:
      return MetaType::fun(consistent_variant(t.param()), consistent_variant(t.result()));
    case MetaType::Kind::Code:
      return chance(cfg_.star_bias) ? MetaType::code_star() : t;
    case MetaType::Kind::CodeStar:
      return chance(0.5) ? MetaType::code(random_obj_type(cfg_.type_depth)) : t;
  }
  return t;
}

std::pair<MetaPtr, MetaType> TermGenerator::program() {
  MetaType goal = MetaType::code(random_obj_type(cfg_.type_depth));
  for (int attempt = 0; attempt < 20; ++attempt) {
    next_label_ = 1;
    MetaPtr t = meta(TypingContext{}, goal, static_cast<int>(cfg_.max_size));
    if (term_size(*t) <= cfg_.max_size) return {t, goal};
  }
  next_label_ = 1;
  return {minimal_meta(TypingContext{}, goal), goal};
}

MetaPtr TermGenerator::meta_of(const MetaType &goal) {
  return meta(TypingContext{}, goal, static_cast<int>(cfg_.max_size));
}

ObjPtr TermGenerator::stlc_of(const ObjType &goal) {
  allow_splices_ = false;
  ObjPtr t = synth(TypingContext{}, goal, static_cast<int>(cfg_.max_size));
  allow_splices_ = true;
  return t;
}

MetaPtr TermGenerator::inject(const TypingContext &ctx, const MetaType &goal, const MetaType &from, int budget) {
  std::string x = fresh_name();
  return meta::app(meta::lam(x, goal, meta::var(x)), meta(ctx, from, budget - 3), label());
}

MetaPtr TermGenerator::meta(const TypingContext &ctx, const MetaType &goal, int budget) {
  if (budget <= 2) return minimal_meta(ctx, goal);
  std::vector<std::pair<int, std::function<MetaPtr()>>> options;
  auto vars = visible(ctx, [&](const Binding &b) { return b.is_meta() && *b.mtype == goal; });
  if (!vars.empty()) options.push_back({2, [&] { return meta::var(vars[pick(vars.size())]); }});
  if (goal.is_base()) options.push_back({1, [&] { return meta::constant(literal_of(goal.base_type())); }});
  if (goal.is_fun())
    options.push_back({4, [&] {
                         std::string x = fresh_name();
                         return meta::lam(x, goal.param(),
                                          meta(ctx.with_meta(x, goal.param()), goal.result(), budget - 1));
                       }});
  if (goal.is_code())
    options.push_back({4, [&] { return meta::quote(synth(ctx, goal.code_type(), budget - 1)); }});
  if (goal.is_star()) {
    options.push_back({3, [&] { return inject(ctx, goal, random_meta_type(cfg_.type_depth), budget); }});
    options.push_back({1, [&] {
                         int left = 1 + static_cast<int>(pick(static_cast<std::size_t>(budget - 2)));
                         MetaPtr fn = meta(ctx, MetaType::star(), left);
                         MetaPtr arg = meta(ctx, random_meta_type(cfg_.type_depth), budget - 1 - left);
                         return meta::app(fn, arg, label());
                       }});
  }
  if (goal.is_code_star())
    options.push_back({3, [&] {
                         return inject(ctx, goal, MetaType::code(random_obj_type(cfg_.type_depth)), budget);
                       }});
  if (budget >= 4)
    options.push_back({2, [&] {
                         MetaType param = random_meta_type(cfg_.type_depth);
                         int left = 1 + static_cast<int>(pick(static_cast<std::size_t>(budget - 2)));
                         MetaPtr fn = meta(ctx, MetaType::fun(param, goal), left);
                         MetaPtr arg = meta(ctx, consistent_variant(param), budget - 1 - left);
                         return meta::app(fn, arg, label());
                       }});
  int total = 0;
  for (const auto &o : options) total += o.first;
  int roll = static_cast<int>(pick(static_cast<std::size_t>(total)));
  for (const auto &o : options) {
    if (roll < o.first) return o.second();
    roll -= o.first;
  }
  return minimal_meta(ctx, goal);
}

MetaPtr TermGenerator::minimal_meta(const TypingContext &ctx, const MetaType &goal) {
  auto vars = visible(ctx, [&](const Binding &b) { return b.is_meta() && *b.mtype == goal; });
  if (!vars.empty()) return meta::var(vars[pick(vars.size())]);
  switch (goal.kind()) {
    case MetaType::Kind::Base:
      return meta::constant(literal_of(goal.base_type()));
    case MetaType::Kind::Fun: {
      std::string x = fresh_name();
      return meta::lam(x, goal.param(), minimal_meta(ctx.with_meta(x, goal.param()), goal.result()));
    }
    case MetaType::Kind::Code:
      return meta::quote(minimal_synth(ctx, goal.code_type()));
    case MetaType::Kind::Star: {
      std::string x = fresh_name();
      return meta::app(meta::lam(x, goal, meta::var(x)), meta::constant(literal_of(kCoreBases[pick(4)])), label());
    }
    case MetaType::Kind::CodeStar: {
      std::string x = fresh_name();
      ObjType t = ObjType::base(kCoreBases[pick(4)]);
      return meta::app(meta::lam(x, goal, meta::var(x)), meta::quote(minimal_synth(ctx, t)), label());
    }
  }
  throw InternalError("unreachable");
}

ObjPtr TermGenerator::synth(const TypingContext &ctx, const ObjType &goal, int budget) {
  if (budget <= 2) return minimal_synth(ctx, goal);
  std::vector<std::pair<int, std::function<ObjPtr()>>> options;
  auto vars = visible(ctx, [&](const Binding &b) { return b.is_object() && *b.otype == goal; });
  if (!vars.empty()) options.push_back({3, [&] { return obj::var(vars[pick(vars.size())]); }});
  if (goal.is_base()) options.push_back({1, [&] { return obj::constant(literal_of(goal.base_type())); }});
  options.push_back({3, [&] { return obj::ann(check(ctx, goal, budget - 1), goal); }});
  if (budget >= 4)
    options.push_back({2, [&] {
                         ObjType param = random_obj_type(cfg_.type_depth);
                         int left = 1 + static_cast<int>(pick(static_cast<std::size_t>(budget - 2)));
                         ObjPtr fn = synth(ctx, ObjType::fun(param, goal), left);
                         return obj::app(fn, check(ctx, param, budget - 1 - left));
                       }});
  int total = 0;
  for (const auto &o : options) total += o.first;
  int roll = static_cast<int>(pick(static_cast<std::size_t>(total)));
  for (const auto &o : options) {
    if (roll < o.first) return o.second();
    roll -= o.first;
  }
  return minimal_synth(ctx, goal);
}

ObjPtr TermGenerator::check(const TypingContext &ctx, const ObjType &goal, int budget) {
  if (budget <= 1) return minimal_check(ctx, goal);
  std::vector<std::pair<int, std::function<ObjPtr()>>> options;
  if (goal.is_fun())
    options.push_back({4, [&] {
                         std::string x = fresh_name();
                         return obj::lam(x, check(ctx.with_object(x, goal.param()), goal.result(), budget - 1));
                       }});
  if (allow_splices_)
    options.push_back({3, [&] {
                         MetaType payload = MetaType::code(goal);
                         if (chance(cfg_.star_bias))
                           payload = MetaType::star();
                         else if (chance(0.5 * cfg_.star_bias))
                           payload = MetaType::code_star();
                         // A dynamic payload that really holds Code goal runs
                         // further than one that blames on arrival.
                         if (!payload.is_code() && budget >= 5 && chance(0.6))
                           return obj::splice(inject(ctx, payload, MetaType::code(goal), budget - 1), label());
                         return obj::splice(meta(ctx, payload, budget - 1), label());
                       }});
  options.push_back({2, [&] { return synth(ctx, goal, budget); }});
  int total = 0;
  for (const auto &o : options) total += o.first;
  int roll = static_cast<int>(pick(static_cast<std::size_t>(total)));
  for (const auto &o : options) {
    if (roll < o.first) return o.second();
    roll -= o.first;
  }
  return minimal_check(ctx, goal);
}

ObjPtr TermGenerator::minimal_synth(const TypingContext &ctx, const ObjType &goal) {
  auto vars = visible(ctx, [&](const Binding &b) { return b.is_object() && *b.otype == goal; });
  if (!vars.empty()) return obj::var(vars[pick(vars.size())]);
  if (goal.is_base()) return obj::constant(literal_of(goal.base_type()));
  return obj::ann(minimal_check(ctx, goal), goal);
}

ObjPtr TermGenerator::minimal_check(const TypingContext &ctx, const ObjType &goal) {
  if (goal.is_fun()) {
    std::string x = fresh_name();
    return obj::lam(x, minimal_check(ctx.with_object(x, goal.param()), goal.result()));
  }
  return minimal_synth(ctx, goal);
}

std::string to_string(SafetyVerdict::Kind kind) {
  switch (kind) {
    case SafetyVerdict::Kind::SafeValue:
      return "safe-value";
    case SafetyVerdict::Kind::SafeBlame:
      return "safe-blame";
    case SafetyVerdict::Kind::Timeout:
      return "timeout";
    case SafetyVerdict::Kind::RuntimeFailure:
      return "runtime-failure";
    case SafetyVerdict::Kind::Violation:
      return "VIOLATION";
  }
  return "?";
}

SafetyVerdict check_type_safety(const MetaTerm &term, std::uint64_t fuel) {
  using K = SafetyVerdict::Kind;
  MetaType type = type_meta(TypingContext{}, term);
  if (!type.is_code()) throw std::invalid_argument("check_type_safety needs a program of type Code T");
  const ObjType &result_type = type.code_type();

  CCMetaPtr compiled;
  try {
    compiled = compile_validated(TypingContext{}, term).first;
  } catch (const InternalError &e) {
    return {K::Violation, std::string("compilation does not preserve types: ") + e.what(), nullptr, 0};
  }

  CCMetaPtr current;
  std::optional<EvalResult> result;
  try {
    result = run_compiled(compiled, result_type, fuel, [&](std::uint64_t, const CCMetaPtr &t) {
      current = t;
      validate_snapshot(*t, result_type);
    });
  } catch (const InternalError &e) {
    return {K::Violation, std::string("preservation: ") + e.what(), current, 0};
  }
  const EvalResult &r = *result;

  if (const auto *code = r.as<EvalResult::Code>()) {
    if (!splice_free(*code->body))
      return {K::Violation, "canonical forms: result code contains a splice", current, r.steps};
    try {
      check_cc_code(TypingContext{}, *code->body, result_type);
    } catch (const InternalError &e) {
      return {K::Violation, std::string("result is not well-typed STLC: ") + e.what(), current, r.steps};
    }
    return {K::SafeValue, {}, nullptr, r.steps};
  }
  if (const auto *b = r.as<EvalResult::Blame>()) {
    auto labels = collect_labels(term);
    if (std::find(labels.begin(), labels.end(), b->label) == labels.end())
      return {K::Violation, "blame label " + label_name(b->label) + " does not occur in the source", current,
              r.steps};
    return {K::SafeBlame, {}, nullptr, r.steps};
  }
  if (r.as<EvalResult::Timeout>()) return {K::Timeout, {}, nullptr, r.steps};
  if (const auto *e = r.as<EvalResult::RuntimeError>()) return {K::RuntimeFailure, e->message, nullptr, r.steps};
  const auto *s = r.as<EvalResult::Stuck>();
  return {K::Violation, "progress: stuck (" + s->reason + ")", s->snapshot, r.steps};
}

namespace {

std::vector<MetaPtr> meta_mutations(const MetaPtr &t);

std::vector<ObjPtr> obj_mutations(const ObjPtr &t) {
  std::vector<ObjPtr> out;
  std::visit(overloaded{
                 [&](const ObjTerm::Lam &n) {
                   out.push_back(n.body);
                   for (auto &b : obj_mutations(n.body)) out.push_back(obj::lam(n.param, b, t->span));
                 },
                 [&](const ObjTerm::App &n) {
                   out.push_back(n.fn);
                   out.push_back(n.arg);
                   for (auto &f : obj_mutations(n.fn)) out.push_back(obj::app(f, n.arg, t->span));
                   for (auto &a : obj_mutations(n.arg)) out.push_back(obj::app(n.fn, a, t->span));
                 },
                 [&](const ObjTerm::Ann &n) {
                   out.push_back(n.term);
                   for (auto &b : obj_mutations(n.term)) out.push_back(obj::ann(b, n.type, t->span));
                 },
                 [&](const ObjTerm::Splice &n) {
                   if (const auto *q = std::get_if<MetaTerm::Quote>(&n.term->node)) out.push_back(q->body);
                   for (auto &m : meta_mutations(n.term)) out.push_back(obj::splice(m, n.label, t->span));
                 },
                 [&](const ObjTerm::Prim &n) {
                   for (const auto &a : n.args) out.push_back(a);
                 },
                 [](const auto &) {},
             },
             t->node);
  return out;
}

std::vector<MetaPtr> meta_mutations(const MetaPtr &t) {
  std::vector<MetaPtr> out;
  std::visit(overloaded{
                 [&](const MetaTerm::Lam &n) {
                   out.push_back(n.body);
                   for (auto &b : meta_mutations(n.body)) out.push_back(meta::lam(n.param, n.annot, b, t->span));
                 },
                 [&](const MetaTerm::App &n) {
                   out.push_back(n.fn);
                   out.push_back(n.arg);
                   for (auto &f : meta_mutations(n.fn)) out.push_back(meta::app(f, n.arg, n.label, t->span));
                   for (auto &a : meta_mutations(n.arg)) out.push_back(meta::app(n.fn, a, n.label, t->span));
                 },
                 [&](const MetaTerm::Quote &n) {
                   if (const auto *s = std::get_if<ObjTerm::Splice>(&n.body->node)) out.push_back(s->term);
                   for (auto &b : obj_mutations(n.body)) out.push_back(meta::quote(b, t->span));
                 },
                 [](const auto &) {},
             },
             t->node);
  return out;
}

bool typed_as_code(const MetaTerm &t) {
  try {
    return type_meta(TypingContext{}, t).is_code();
  } catch (const TypeError &) {
    return false;
  }
}

}  // namespace

MetaPtr shrink(const MetaPtr &term, const std::function<bool(const MetaTerm &)> &still_fails) {
  MetaPtr current = term;
  for (bool improved = true; improved;) {
    improved = false;
    std::size_t size = term_size(*current);
    for (const auto &cand : meta_mutations(current)) {
      if (term_size(*cand) < size && typed_as_code(*cand) && still_fails(*cand)) {
        current = cand;
        improved = true;
        break;
      }
    }
  }
  return current;
}

namespace {

std::vector<ObjType> obj_types_over(int depth, const std::vector<BaseType> &bases) {
  std::vector<ObjType> out;
  for (BaseType b : bases) out.push_back(ObjType::base(b));
  if (depth <= 1) return out;
  auto smaller = obj_types_over(depth - 1, bases);
  for (const auto &a : smaller)
    for (const auto &b : smaller) out.push_back(ObjType::fun(a, b));
  return out;
}

const BlameLabel kOracleLabel{SourceSpan{"<oracle>", 1, 1, 1, 2}, 1};

// Steps until the term is a value or blame, or the fuel runs out.
CCMetaPtr reduce(CCMetaPtr t, int fuel = 1000) {
  for (int i = 0; i < fuel; ++i) {
    MetaStep s = step_meta(t);
    if (s.kind != MetaStep::Kind::Stepped) return t;
    t = std::move(s.next);
  }
  return t;
}

CCCodePtr sample_code(const ObjType &t) {
  if (t.is_fun()) return cc::oann(cc::olam("x", cc::oann(sample_code(t.result()), t.result())), t);
  switch (t.base_type()) {
    case BaseType::Nat:
      return cc::oconstant(Literal::nat(3));
    case BaseType::Int:
      return cc::oconstant(Literal::integer(5));
    case BaseType::Bool:
      return cc::oconstant(Literal::boolean(true));
    case BaseType::Unit:
      return cc::oconstant(Literal::unit());
    case BaseType::String:
      return cc::oconstant(Literal::string("s"));
  }
  throw InternalError("unreachable");
}

// Representative closed values of type `t`, one per value shape available
// at that type.
std::vector<CCMetaPtr> sample_values(const MetaType &t) {
  switch (t.kind()) {
    case MetaType::Kind::Base:
      switch (t.base_type()) {
        case BaseType::Nat:
          return {cc::constant(Literal::nat(3))};
        case BaseType::Int:
          return {cc::constant(Literal::integer(5))};
        case BaseType::Bool:
          return {cc::constant(Literal::boolean(true))};
        case BaseType::Unit:
          return {cc::constant(Literal::unit())};
        case BaseType::String:
          return {cc::constant(Literal::string("s"))};
      }
      break;
    case MetaType::Kind::Fun: {
      CCMetaPtr lam = cc::lam("x", t.param(), sample_values(t.result()).front());
      return {lam, cc::cast(lam, coerce(t, t, kOracleLabel))};
    }
    case MetaType::Kind::Code:
      return {cc::quote(sample_code(t.code_type()))};
    case MetaType::Kind::CodeStar:
      return {cc::cast(cc::quote(sample_code(ObjType::int_())), coercion::code_inj(ObjType::int_()))};
    case MetaType::Kind::Star: {
      std::vector<CCMetaPtr> out;
      for (const MetaType &g : {MetaType::int_(), MetaType::boolean(), MetaType::code_star()})
        out.push_back(cc::cast(sample_values(g).front(), coercion::inj(g)));
      // ★ -> ★ is sampled by the identity so the recursion through ★ ends.
      MetaType dyn_fun = MetaType::fun(MetaType::star(), MetaType::star());
      out.push_back(cc::cast(cc::lam("x", MetaType::star(), cc::var("x")), coercion::inj(dyn_fun)));
      return out;
    }
  }
  throw InternalError("unreachable");
}

bool observationally_equal(const CCMetaPtr &a, const CCMetaPtr &b, const MetaType &t, int depth = 3) {
  if (t.is_fun() && depth > 0) {
    CCMetaPtr arg = sample_values(t.param()).front();
    return observationally_equal(reduce(cc::app(a, arg)), reduce(cc::app(b, arg)), t.result(), depth - 1);
  }
  return alpha_equiv(*a, *b);
}

std::vector<MetaType> grounds() {
  return {MetaType::base(BaseType::Nat), MetaType::int_(),        MetaType::boolean(),
          MetaType::base(BaseType::Unit), MetaType::fun(MetaType::star(), MetaType::star()),
          MetaType::code_star()};
}

}  // namespace

std::vector<ObjType> enumerate_obj_types(int depth) {
  return obj_types_over(depth, {BaseType::Nat, BaseType::Int, BaseType::Bool, BaseType::Unit});
}

std::vector<MetaType> enumerate_meta_types(int depth) {
  std::vector<MetaType> out = {MetaType::int_(), MetaType::boolean(), MetaType::star(), MetaType::code_star()};
  if (depth <= 1) return out;
  auto smaller = enumerate_meta_types(depth - 1);
  for (const auto &a : smaller)
    for (const auto &b : smaller) out.push_back(MetaType::fun(a, b));
  for (const auto &t : obj_types_over(depth - 1, {BaseType::Int, BaseType::Bool})) out.push_back(MetaType::code(t));
  return out;
}

CoerceReport check_coerce_totality(int depth) {
  CoerceReport r;
  auto types = enumerate_meta_types(depth);
  for (const auto &a : types) {
    for (const auto &b : types) {
      ++r.pairs;
      if (!consistent(a, b)) continue;
      ++r.consistent;
      try {
        CoercionPtr c = coerce(a, b, kOracleLabel);
        CoercionType ct = coercion_type(*c);
        if (ct.source == a && ct.target == b)
          ++r.ok;
        else
          note_failure(r.failures, fmt::format("coerce {} {} has type {} => {}", to_string(a), to_string(b),
                                               to_string(ct.source), to_string(ct.target)));
      } catch (const InternalError &e) {
        note_failure(r.failures, fmt::format("coerce {} {} failed: {}", to_string(a), to_string(b), e.what()));
      }
    }
  }
  return r;
}

DichotomyReport check_projection_dichotomy(int obj_depth) {
  DichotomyReport r;
  auto expect = [&](const CCMetaPtr &term, const CCMetaPtr &value, bool same, std::size_t &ok,
                    const std::string &what) {
    CCMetaPtr out = reduce(term);
    bool good = false;
    if (same) {
      good = alpha_equiv(*out, *value);
    } else if (const auto *b = out->as<CCMeta::Blame>()) {
      good = b->label == kOracleLabel;
    }
    if (good)
      ++ok;
    else
      note_failure(r.failures, fmt::format("{} reduced to {}", what, to_string(*out)));
  };
  for (const auto &g : grounds()) {
    for (const auto &h : grounds()) {
      ++r.ground_pairs;
      CCMetaPtr v = sample_values(g).front();
      CCMetaPtr term = cc::cast(cc::cast(v, coercion::inj(g)), coercion::proj(h, kOracleLabel));
      expect(term, v, g == h, r.ground_ok, fmt::format("V<{}!><{}?>", to_string(g), to_string(h)));
    }
  }
  auto objs = enumerate_obj_types(obj_depth);
  for (const auto &s : objs) {
    for (const auto &t : objs) {
      ++r.code_pairs;
      CCMetaPtr v = cc::quote(sample_code(s));
      CCMetaPtr term = cc::cast(cc::cast(v, coercion::code_inj(s)), coercion::code_proj(t, kOracleLabel));
      expect(term, v, s == t, r.code_ok, fmt::format("V<code! {}><code? {}>", to_string(s), to_string(t)));
    }
  }
  return r;
}

IdentityReport check_identity_roundtrip() {
  IdentityReport r;
  for (const auto &t : enumerate_meta_types(2)) {
    for (const auto &v : sample_values(t)) {
      ++r.cases;
      CCMetaPtr out = reduce(cc::cast(v, coerce(t, t, kOracleLabel)));
      if (is_value(*out) && observationally_equal(out, v, t))
        ++r.ok;
      else
        note_failure(r.failures, fmt::format("{} at {} came back as {}", to_string(*v), to_string(t), to_string(*out)));
    }
  }
  return r;
}

namespace {

class SmallTermEnumerator {
 public:
  explicit SmallTermEnumerator(std::size_t max_nodes) : max_(max_nodes) {
    metas_.resize(max_nodes + 1);
    objs_.resize(max_nodes + 1);
    for (std::size_t n = 1; n < max_nodes; ++n) {
      for_each_meta(n, [&](const MetaPtr &m) { metas_[n].push_back(m); });
      for_each_obj(n, [&](const ObjPtr &o) { objs_[n].push_back(o); });
    }
  }

  template <class F>
  void all_programs(F f) {
    for (std::size_t n = 1; n <= max_; ++n) for_each_meta(n, f);
  }

 private:
  BlameLabel next_label() {
    std::uint32_t n = ++labels_;
    return BlameLabel{SourceSpan{"<enum>", 1, 1, 1, 2}, n};
  }

  template <class F>
  void for_each_meta(std::size_t n, F f) {
    if (n == 1) {
      f(meta::var("x"));
      f(meta::var("y"));
      f(meta::constant(Literal::integer(0)));
      f(meta::constant(Literal::boolean(true)));
      return;
    }
    for (const char *x : {"x", "y"})
      for (const auto &a : {MetaType::star(), MetaType::int_(), MetaType::code(ObjType::int_())})
        for (const auto &b : metas_[n - 1]) f(meta::lam(x, a, b));
    for (std::size_t i = 1; i + 1 < n; ++i)
      for (const auto &fn : metas_[i])
        for (const auto &arg : metas_[n - 1 - i]) f(meta::app(fn, arg, next_label()));
    for (const auto &o : objs_[n - 1]) f(meta::quote(o));
  }

  template <class F>
  void for_each_obj(std::size_t n, F f) {
    if (n == 1) {
      f(obj::var("x"));
      f(obj::var("y"));
      f(obj::constant(Literal::integer(0)));
      f(obj::constant(Literal::boolean(true)));
      return;
    }
    for (const char *x : {"x", "y"})
      for (const auto &b : objs_[n - 1]) f(obj::lam(x, b));
    for (std::size_t i = 1; i + 1 < n; ++i)
      for (const auto &fn : objs_[i])
        for (const auto &arg : objs_[n - 1 - i]) f(obj::app(fn, arg));
    for (const auto &t : {ObjType::int_(), ObjType::fun(ObjType::int_(), ObjType::int_())})
      for (const auto &b : objs_[n - 1]) f(obj::ann(b, t));
    for (const auto &m : metas_[n - 1]) f(obj::splice(m, next_label()));
  }

  std::size_t max_;
  std::uint32_t labels_ = 0;
  std::vector<std::vector<MetaPtr>> metas_;
  std::vector<std::vector<ObjPtr>> objs_;
};

// Cheap scope check so that the many open terms skip the type checker.
bool closed(const MetaTerm &t, std::vector<std::string> &scope);

bool closed(const ObjTerm &t, std::vector<std::string> &scope) {
  return std::visit(overloaded{
                        [&](const ObjTerm::Var &n) {
                          return std::find(scope.begin(), scope.end(), n.name) != scope.end();
                        },
                        [&](const ObjTerm::Lam &n) {
                          scope.push_back(n.param);
                          bool ok = closed(*n.body, scope);
                          scope.pop_back();
                          return ok;
                        },
                        [&](const ObjTerm::App &n) { return closed(*n.fn, scope) && closed(*n.arg, scope); },
                        [&](const ObjTerm::Ann &n) { return closed(*n.term, scope); },
                        [&](const ObjTerm::Splice &n) { return closed(*n.term, scope); },
                        [](const auto &) { return true; },
                    },
                    t.node);
}

bool closed(const MetaTerm &t, std::vector<std::string> &scope) {
  return std::visit(overloaded{
                        [&](const MetaTerm::Var &n) {
                          return std::find(scope.begin(), scope.end(), n.name) != scope.end();
                        },
                        [&](const MetaTerm::Lam &n) {
                          scope.push_back(n.param);
                          bool ok = closed(*n.body, scope);
                          scope.pop_back();
                          return ok;
                        },
                        [&](const MetaTerm::App &n) { return closed(*n.fn, scope) && closed(*n.arg, scope); },
                        [&](const MetaTerm::Quote &n) { return closed(*n.body, scope); },
                        [](const auto &) { return true; },
                    },
                    t.node);
}

}  // namespace

EnumerationReport enumerate_small_terms(std::size_t max_nodes) {
  EnumerationReport r;
  SmallTermEnumerator e(max_nodes);
  std::vector<std::string> scope;
  e.all_programs([&](const MetaPtr &t) {
    ++r.terms;
    if (!closed(*t, scope)) return;
    std::optional<MetaType> first;
    try {
      first = type_meta(TypingContext{}, *t);
    } catch (const TypeError &) {
      return;
    }
    ++r.typed;
    if (!(type_meta(TypingContext{}, *t) == *first))
      note_failure(r.failures, "type_meta is not deterministic on " + to_string(*t));
    try {
      compile_validated(TypingContext{}, *t);
      ++r.compiled;
    } catch (const InternalError &ex) {
      note_failure(r.failures, fmt::format("compiling {} failed validation: {}", to_string(*t), ex.what()));
      return;
    }
    if (!first->is_code()) return;
    ++r.code_typed;
    SafetyVerdict v = check_type_safety(*t, 1000);
    if (v.kind == SafetyVerdict::Kind::Violation)
      note_failure(r.failures, fmt::format("{}: {}", to_string(*t), v.detail));
    else
      ++r.safe;
  });
  return r;
}

bool OracleReport::passed() const {
  return coerce.ok == coerce.consistent && dichotomy.ground_ok == dichotomy.ground_pairs &&
         dichotomy.code_ok == dichotomy.code_pairs && identity.ok == identity.cases && terms.failures.empty() &&
         terms.safe == terms.code_typed;
}

OracleReport enumerate_small_oracles() {
  return {check_coerce_totality(3), check_projection_dichotomy(2), check_identity_roundtrip(),
          enumerate_small_terms(7)};
}

std::uint64_t program_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

FuzzSummary fuzz(const GenConfig &cfg, std::size_t first, std::size_t count, std::uint64_t fuel) {
  FuzzSummary s;
  for (std::size_t i = first; i < first + count; ++i) {
    GenConfig c = cfg;
    c.seed = program_seed(cfg.seed, i);
    TermGenerator gen(c);
    auto [term, type] = gen.program();
    ++s.programs;
    s.max_size_seen = std::max(s.max_size_seen, term_size(*term));
    SafetyVerdict v = check_type_safety(*term, fuel);
    s.steps += v.steps;
    switch (v.kind) {
      case SafetyVerdict::Kind::SafeValue:
        ++s.safe_value;
        break;
      case SafetyVerdict::Kind::SafeBlame:
        ++s.safe_blame;
        break;
      case SafetyVerdict::Kind::Timeout:
        ++s.timeout;
        break;
      case SafetyVerdict::Kind::RuntimeFailure:
        ++s.runtime_failure;
        break;
      case SafetyVerdict::Kind::Violation: {
        ++s.violations;
        MetaPtr small = shrink(term, [&](const MetaTerm &t) {
          return check_type_safety(t, fuel).kind == SafetyVerdict::Kind::Violation;
        });
        SafetyVerdict sv = check_type_safety(*small, fuel);
        if (s.witnesses.size() < kMaxFailures)
          s.witnesses.push_back(fmt::format("seed {}: {} -- {}", c.seed, to_string(*small), sv.detail));
        break;
      }
    }
  }
  return s;
}

void merge(FuzzSummary &into, const FuzzSummary &from) {
  into.programs += from.programs;
  into.safe_value += from.safe_value;
  into.safe_blame += from.safe_blame;
  into.timeout += from.timeout;
  into.runtime_failure += from.runtime_failure;
  into.violations += from.violations;
  into.steps += from.steps;
  into.max_size_seen = std::max(into.max_size_seen, from.max_size_seen);
  for (const auto &w : from.witnesses)
    if (into.witnesses.size() < kMaxFailures) into.witnesses.push_back(w);
}

}  // namespace mgtlc
