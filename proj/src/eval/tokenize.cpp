#include "asrda/eval/tokenize.hpp"

#include <unicode/brkiter.h>
#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <memory>

#include "asrda/error.hpp"

namespace asrda::eval {
namespace {

icu::UnicodeString nfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) fail(ErrorCode::kInvalidArgument, "ICU NFC normalizer unavailable");
  const icu::UnicodeString src = icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString out = norm->normalize(src, status);
  if (U_FAILURE(status)) fail(ErrorCode::kInvalidArgument, "NFC normalization failed");
  return out;
}

std::string utf8(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

bool is_stripped(UChar32 c) {
  return c < 0x80 && kStrippedPunctuation.find(static_cast<char>(c)) != std::string_view::npos;
}

bool all_whitespace(const icu::UnicodeString& s) {
  for (int32_t i = 0; i < s.length();) {
    const UChar32 c = s.char32At(i);
    if (!u_isUWhiteSpace(c)) return false;
    i += U16_LENGTH(c);
  }
  return true;
}

}  // namespace

std::string to_nfc(std::string_view text) { return utf8(nfc(text)); }

std::vector<std::string> tokenize(std::string_view text, TokenMode mode, bool normalize) {
  icu::UnicodeString s = nfc(text);
  if (normalize) {
    s.toLower(icu::Locale::getRoot());
    icu::UnicodeString kept;
    for (int32_t i = 0; i < s.length();) {
      const UChar32 c = s.char32At(i);
      if (!is_stripped(c)) kept.append(c);
      i += U16_LENGTH(c);
    }
    s = kept;
  }

  std::vector<std::string> tokens;
  if (mode == TokenMode::kWord) {
    icu::UnicodeString current;
    for (int32_t i = 0; i < s.length();) {
      const UChar32 c = s.char32At(i);
      if (u_isUWhiteSpace(c)) {
        if (!current.isEmpty()) tokens.push_back(utf8(current));
        current.remove();
      } else {
        current.append(c);
      }
      i += U16_LENGTH(c);
    }
    if (!current.isEmpty()) tokens.push_back(utf8(current));
    return tokens;
  }

  UErrorCode status = U_ZERO_ERROR;
  std::unique_ptr<icu::BreakIterator> it(icu::BreakIterator::createCharacterInstance(icu::Locale::getRoot(), status));
  if (U_FAILURE(status)) fail(ErrorCode::kInvalidArgument, "ICU grapheme iterator unavailable");
  it->setText(s);
  for (int32_t start = it->first(), end = it->next(); end != icu::BreakIterator::DONE; start = end, end = it->next()) {
    icu::UnicodeString cluster(s, start, end - start);
    if (!all_whitespace(cluster)) tokens.push_back(utf8(cluster));
  }
  return tokens;
}

}  // namespace asrda::eval
