#include "mgtlc/diagnostic.h"

#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace mgtlc {

std::string to_string(Severity s) {
  switch (s) {
    case Severity::StaticError:
      return "static-error";
    case Severity::Blame:
      return "blame";
    case Severity::RuntimeError:
      return "runtime-error";
    case Severity::InternalError:
      return "internal-error";
    case Severity::Warning:
      return "warning";
  }
  return "error";
}

namespace {

std::string headline(Severity s) {
  switch (s) {
    case Severity::StaticError:
      return "error";
    case Severity::Blame:
      return "blame";
    case Severity::RuntimeError:
      return "runtime error";
    case Severity::InternalError:
      return "internal error";
    case Severity::Warning:
      return "warning";
  }
  return "error";
}

std::optional<std::string> source_line(const SourceMap &sources, const std::string &file, int line) {
  auto it = sources.find(file);
  if (it == sources.end()) return std::nullopt;
  std::istringstream in(it->second);
  std::string text;
  for (int i = 1; std::getline(in, text); ++i) {
    if (i == line) {
      if (!text.empty() && text.back() == '\r') text.pop_back();
      return text;
    }
  }
  return std::nullopt;
}

// Blanks covering the code points before column `col`, keeping tabs so the
// caret lines up under the excerpt.
std::string caret_prefix(const std::string &line, int col) {
  std::string out;
  int c = 1;
  for (std::size_t i = 0; i < line.size() && c < col; ++i) {
    unsigned char ch = static_cast<unsigned char>(line[i]);
    if ((ch & 0xC0) == 0x80) continue;
    out += ch == '\t' ? '\t' : ' ';
    ++c;
  }
  return out;
}

int code_points(const std::string &s) {
  int n = 0;
  for (unsigned char ch : s)
    if ((ch & 0xC0) != 0x80) ++n;
  return n;
}

}  // namespace

std::string render_text(const Diagnostic &d, const SourceMap &sources) {
  std::string out;
  std::string where = d.span.valid() ? to_string(d.span) + ": " : (d.span.file.empty() ? "" : d.span.file + ": ");
  out += fmt::format("{}{}: {}\n", where, headline(d.severity), d.message);
  if (d.span.valid()) {
    if (auto text = source_line(sources, d.span.file, d.span.line)) {
      std::string gutter = std::to_string(d.span.line);
      std::string pad(gutter.size(), ' ');
      int width = 1;
      if (d.span.end_line == d.span.line && d.span.end_col > d.span.col) width = d.span.end_col - d.span.col;
      else if (d.span.end_line > d.span.line) width = std::max(1, code_points(*text) - d.span.col + 1);
      out += fmt::format(" {} | {}\n", gutter, *text);
      out += fmt::format(" {} | {}{}\n", pad, caret_prefix(*text, d.span.col), std::string(width, '^'));
    }
  }
  if (!d.expected_type.empty()) out += fmt::format("  expected: {}\n", d.expected_type);
  if (!d.actual_type.empty()) out += fmt::format("  actual:   {}\n", d.actual_type);
  return out;
}

std::string render_json(const Diagnostic &d) {
  nlohmann::json j;
  j["severity"] = to_string(d.severity);
  j["code"] = d.code;
  j["file"] = d.span.file;
  j["line"] = d.span.line;
  j["col"] = d.span.col;
  j["endLine"] = d.span.end_line;
  j["endCol"] = d.span.end_col;
  j["blameOrdinal"] = d.blame_ordinal ? nlohmann::json(*d.blame_ordinal) : nlohmann::json(nullptr);
  j["expectedType"] = d.expected_type.empty() ? nlohmann::json(nullptr) : nlohmann::json(d.expected_type);
  j["actualType"] = d.actual_type.empty() ? nlohmann::json(nullptr) : nlohmann::json(d.actual_type);
  j["message"] = d.message;
  return j.dump();
}

}  // namespace mgtlc
