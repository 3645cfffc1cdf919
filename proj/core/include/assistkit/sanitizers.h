#ifndef ASSISTKIT_SANITIZERS_H_
#define ASSISTKIT_SANITIZERS_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace assistkit {

// Characters the string sanitizer escapes with a backslash. The backslash
// itself is handled separately: it is doubled unless it already escapes a
// member of this set or another backslash.
inline constexpr std::string_view kEscapableQuotes = "'\"";

/// Escapes unescaped quotes and backslashes for use inside a single-quoted
/// SQL string. Already-escaped pairs (\', \", \\) are kept as they are, so
/// the function is idempotent. A trailing lone backslash is doubled.
std::string SanitizeString(std::string_view input);

/// Returns the input unchanged if it is a numeral (-?digits(.digits)?,
/// optionally surrounded by whitespace), otherwise the text "null".
std::string SanitizeNumeric(std::string_view input);

bool IsNumeral(std::string_view input);

// SanitizeString that also reports, for each output character, the index of
// the input character it was produced from.
std::string SanitizeStringTraced(std::string_view input, std::vector<std::size_t>& origins);

}  // namespace assistkit

#endif  // ASSISTKIT_SANITIZERS_H_
