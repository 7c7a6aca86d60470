#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace wikidict::tsv {

// Field escaping used by every store file: tab -> \t, newline -> \n,
// backslash -> \\. Everything else passes through untouched, so escaped
// fields never contain a raw tab or newline.
std::string escape(std::string_view field);

// Inverse of escape(). Throws std::invalid_argument on a malformed
// escape sequence (lone trailing backslash, unknown \x pair).
std::string unescape(std::string_view field);

// Splits a raw line on tab characters and unescapes each field.
std::vector<std::string> split_line(std::string_view line);

// Escapes each field and joins with tabs. No trailing newline.
std::string join_fields(const std::vector<std::string>& fields);

}  // namespace wikidict::tsv
