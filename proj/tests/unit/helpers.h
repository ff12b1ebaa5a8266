#ifndef MGTLC_TEST_HELPERS_H
#define MGTLC_TEST_HELPERS_H

#include <string>

#include "mgtlc/syntax.h"
#include "mgtlc/types.h"

namespace testing {

inline mgtlc::BlameLabel label(std::uint32_t n) {
  return mgtlc::BlameLabel{mgtlc::SourceSpan{"t.mgtlc", 1, static_cast<int>(n), 1, static_cast<int>(n) + 1}, n};
}

inline mgtlc::MetaType star() { return mgtlc::MetaType::star(); }
inline mgtlc::MetaType int_t() { return mgtlc::MetaType::int_(); }
inline mgtlc::MetaType bool_t() { return mgtlc::MetaType::boolean(); }
inline mgtlc::MetaType arrow(mgtlc::MetaType a, mgtlc::MetaType b) { return mgtlc::MetaType::fun(a, b); }
inline mgtlc::MetaType code(mgtlc::ObjType t) { return mgtlc::MetaType::code(t); }
inline mgtlc::MetaType code_star() { return mgtlc::MetaType::code_star(); }
inline mgtlc::ObjType oint() { return mgtlc::ObjType::int_(); }
inline mgtlc::ObjType obool() { return mgtlc::ObjType::boolean(); }
inline mgtlc::ObjType oarrow(mgtlc::ObjType a, mgtlc::ObjType b) { return mgtlc::ObjType::fun(a, b); }

inline std::string programs(const std::string &rel) { return std::string(MGTLC_PROGRAMS) + "/" + rel; }

}  // namespace testing

#endif  // MGTLC_TEST_HELPERS_H
