#include "mgtlc/driver.h"

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "mgtlc/compile.h"
#include "mgtlc/desugar.h"
#include "mgtlc/diagnostic.h"
#include "mgtlc/lexer.h"
#include "mgtlc/pretty.h"
#include "mgtlc/typecheck.h"

namespace mgtlc {

namespace {

using json = nlohmann::json;

class Session {
 public:
  Session(const DriverOptions &opts, std::ostream &out, std::ostream &err) : opts_(opts), out_(out), err_(err) {}

  /// Runs `body`, turning every failure into a diagnostic and status.
  int guard(const std::string &path, const std::function<int()> &body) {
    try {
      return body();
    } catch (const FrontendError &e) {
      report({Severity::StaticError, e.code(), e.span(), std::nullopt, {}, {}, e.what()});
      return kExitStaticError;
    } catch (const TypeError &e) {
      report({Severity::StaticError, to_string(e.kind()), e.span(), std::nullopt, e.expected(), e.actual(), e.what()});
      return kExitStaticError;
    } catch (const InternalError &e) {
      report({Severity::InternalError, "internal", SourceSpan{path, 0, 0, 0, 0}, std::nullopt, {}, {}, e.what()});
      return kExitInternal;
    }
  }

  void report(const Diagnostic &d) {
    if (opts_.format == OutputFormat::Json)
      err_ << render_json(d) << '\n';
    else
      err_ << render_text(d, sources_);
  }

  LoadedProgram load(const std::string &path) {
    sources_.clear();
    try {
      LoadedProgram p = load_program(path);
      sources_ = p.sources;
      return p;
    } catch (const FrontendError &) {
      // Keep whatever was readable so the excerpt can still be shown.
      try {
        sources_[path] = read_source(path);
      } catch (...) {
      }
      throw;
    }
  }

  bool json_output() const { return opts_.format == OutputFormat::Json; }
  std::ostream &out() { return out_; }
  const DriverOptions &opts() const { return opts_; }

  /// Maps a non-code evaluation outcome to its diagnostic and status.
  int report_outcome(const EvalResult &r, const std::string &path) {
    if (const auto *b = r.as<EvalResult::Blame>()) {
      Diagnostic d{Severity::Blame, "blame", b->label.span, b->label.ordinal, {}, {}, {}};
      if (b->cause) {
        d.expected_type = to_string(b->cause->expected);
        d.actual_type = to_string(b->cause->actual);
        d.message = fmt::format("cast {} failed: a value of type {} reached a cast expecting {}",
                                label_name(b->label), d.actual_type, d.expected_type);
      } else {
        d.message = fmt::format("cast {} failed", label_name(b->label));
      }
      report(d);
      return kExitBlame;
    }
    if (r.as<EvalResult::Timeout>()) {
      report({Severity::RuntimeError, "timeout", SourceSpan{path, 0, 0, 0, 0}, std::nullopt, {}, {},
              fmt::format("metaevaluation did not finish within {} steps; raise --fuel, or pass --fuel 0 for "
                          "no limit",
                          r.steps)});
      return kExitTimeout;
    }
    if (const auto *e = r.as<EvalResult::RuntimeError>()) {
      report({Severity::RuntimeError, "builtin-failure", SourceSpan{path, 0, 0, 0, 0}, std::nullopt, {}, {},
              e->message});
      return kExitRuntimeError;
    }
    if (const auto *s = r.as<EvalResult::Stuck>()) {
      report({Severity::InternalError, "stuck", SourceSpan{path, 0, 0, 0, 0}, std::nullopt, {}, {},
              fmt::format("evaluation is stuck ({}) at: {}", s->reason, to_string(*s->snapshot))});
      return kExitInternal;
    }
    return kExitOk;
  }

 private:
  static std::string read_source(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("unreadable");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  const DriverOptions &opts_;
  std::ostream &out_;
  std::ostream &err_;
  SourceMap sources_;
};

/// Typechecks and compiles a program that must have type Code T.
std::pair<CCMetaPtr, ObjType> compile_code_program(const MetaTerm &term) {
  MetaType type = type_meta(TypingContext{}, term);
  if (!type.is_code())
    throw TypeError(TypeErrorKind::AnnotationMismatch, term.span,
                    fmt::format("a program to run must produce code of a known type Code T, but this has "
                                "type {}; ascribe it, e.g. `(e : Code Int)`",
                                to_string(type)),
                    "Code T", to_string(type));
  auto [compiled, _] = compile_validated(TypingContext{}, term);
  return {compiled, type.code_type()};
}

}  // namespace

int cmd_check(const std::string &path, const DriverOptions &opts, std::ostream &out, std::ostream &err) {
  Session s(opts, out, err);
  return s.guard(path, [&]() -> int {
    LoadedProgram p = s.load(path);
    MetaType type = type_meta(TypingContext{}, *p.term);
    if (s.json_output())
      s.out() << json{{"status", "ok"}, {"type", to_string(type)}}.dump() << '\n';
    else
      s.out() << to_string(type) << '\n';
    return kExitOk;
  });
}

int cmd_compile(const std::string &path, const DriverOptions &opts, std::ostream &out, std::ostream &err) {
  Session s(opts, out, err);
  return s.guard(path, [&]() -> int {
    LoadedProgram p = s.load(path);
    type_meta(TypingContext{}, *p.term);
    auto [compiled, type] = compile_validated(TypingContext{}, *p.term);
    std::size_t casts = count_casts(*compiled);
    if (s.json_output()) {
      json j{{"status", "ok"}, {"type", to_string(type)}, {"casts", casts}};
      if (opts.emit_cc) j["cc"] = to_string(*compiled);
      s.out() << j.dump() << '\n';
    } else if (opts.emit_cc) {
      s.out() << to_string(*compiled) << '\n';
    } else {
      s.out() << fmt::format("{}\n{} cast{} inserted\n", to_string(type), casts, casts == 1 ? "" : "s");
    }
    return kExitOk;
  });
}

int cmd_run(const std::string &path, const DriverOptions &opts, std::ostream &out, std::ostream &err) {
  Session s(opts, out, err);
  return s.guard(path, [&]() -> int {
    LoadedProgram p = s.load(path);
    auto [compiled, type] = compile_code_program(*p.term);
    EvalResult r = run_compiled(compiled, type, opts.fuel);
    const auto *code = r.as<EvalResult::Code>();
    if (!code) return s.report_outcome(r, path);
    if (!splice_free(*code->body)) throw InternalError("result code still contains a splice");
    check_cc_code(TypingContext{}, *code->body, code->type);
    std::string text = pretty_obj(*to_obj_term(*code->body));
    if (s.json_output())
      s.out() << json{{"status", "ok"}, {"code", text}, {"type", to_string(code->type)}, {"steps", r.steps}}.dump()
              << '\n';
    else
      s.out() << text << " : " << to_string(code->type) << '\n';
    return kExitOk;
  });
}

int cmd_trace(const std::string &path, const DriverOptions &opts, std::ostream &out, std::ostream &err) {
  Session s(opts, out, err);
  return s.guard(path, [&]() -> int {
    LoadedProgram p = s.load(path);
    auto [compiled, type] = compile_code_program(*p.term);
    auto observe = [&, type = type](std::uint64_t i, const CCMetaPtr &t) {
      MetaType validated = validate_snapshot(*t, type);
      if (s.json_output())
        s.out() << json{{"step", i}, {"term", to_string(*t)}, {"type", to_string(validated)}}.dump() << '\n';
      else
        s.out() << fmt::format("[{}] {} : {}\n", i, to_string(*t), to_string(validated));
    };
    EvalResult r = run_compiled(compiled, type, opts.fuel, observe);
    if (const auto *code = r.as<EvalResult::Code>()) {
      check_cc_code(TypingContext{}, *code->body, code->type);
      std::string text = pretty_obj(*to_obj_term(*code->body));
      if (s.json_output())
        s.out() << json{{"status", "ok"}, {"code", text}, {"type", to_string(code->type)}}.dump() << '\n';
      else
        s.out() << fmt::format("result: {} : {}\n", text, to_string(code->type));
      return kExitOk;
    }
    if (const auto *b = r.as<EvalResult::Blame>()) {
      if (s.json_output())
        s.out() << json{{"status", "blame"}, {"label", label_name(b->label)}, {"at", to_string(b->label.span)}}.dump()
                << '\n';
      else
        s.out() << fmt::format("blame {} ({})\n", label_name(b->label), to_string(b->label.span));
    }
    return s.report_outcome(r, path);
  });
}

}  // namespace mgtlc
