#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace asrda::eval {

enum class TokenMode { kWord, kChar };

/// Characters removed by normalization.
inline constexpr std::string_view kStrippedPunctuation = ".,!?;:\"'()[]";

/// Unicode NFC form of UTF-8 text.
std::string to_nfc(std::string_view text);

/// Tokenizes UTF-8 text after NFC normalization.
///
/// Word mode splits on runs of Unicode whitespace. Char mode yields one token
/// per extended grapheme cluster and drops whitespace. With `normalize`, text
/// is lowercased and kStrippedPunctuation characters are removed first.
std::vector<std::string> tokenize(std::string_view text, TokenMode mode, bool normalize);

}  // namespace asrda::eval
