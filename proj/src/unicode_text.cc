// Copyright 2026 The Stylevec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stylevec/unicode_text.h"

#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

namespace stylevec {
namespace {

constexpr char32_t kVs16 = 0xFE0F;
constexpr char32_t kVs15 = 0xFE0E;
constexpr char32_t kZwj = 0x200D;
constexpr char32_t kKeycap = 0x20E3;

bool Has(char32_t cp, UProperty prop) {
  return u_hasBinaryProperty(static_cast<UChar32>(cp), prop);
}

bool IsRegionalIndicator(char32_t cp) { return cp >= 0x1F1E6 && cp <= 0x1F1FF; }
bool IsSkinTone(char32_t cp) { return cp >= 0x1F3FB && cp <= 0x1F3FF; }
bool IsTag(char32_t cp) { return cp >= 0xE0020 && cp <= 0xE007F; }
bool IsKeycapBase(char32_t cp) {
  return (cp >= '0' && cp <= '9') || cp == '#' || cp == '*';
}

bool IsEmojiBase(char32_t cp, char32_t next) {
  if (!Has(cp, UCHAR_EXTENDED_PICTOGRAPHIC)) return false;
  if (next == kVs15) return false;
  if (next == kVs16 || Has(cp, UCHAR_EMOJI_PRESENTATION)) return true;
  return cp >= 0x2000 && cp != 0x2122 && cp != 0x2139;
}

}  // namespace

std::vector<char32_t> DecodeUtf8(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  int32_t i = 0;
  const auto n = static_cast<int32_t>(text.size());
  while (i < n) {
    UChar32 c;
    U8_NEXT(s, i, n, c);
    out.push_back(c < 0 ? 0xFFFD : static_cast<char32_t>(c));
  }
  return out;
}

void AppendUtf8(char32_t cp, std::string* out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool IsPunctuation(char32_t cp) { return u_ispunct(static_cast<UChar32>(cp)); }

std::string FoldCase(std::string_view text) {
  std::string out;
  icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(),
                                                static_cast<int32_t>(text.size())))
      .foldCase()
      .toUTF8String(out);
  return out;
}

std::vector<std::string> SegmentEmojis(std::string_view text) {
  std::vector<char32_t> cps = DecodeUtf8(text);
  const size_t n = cps.size();
  auto at = [&](size_t i) -> char32_t { return i < n ? cps[i] : 0; };
  std::vector<std::string> out;
  size_t i = 0;
  while (i < n) {
    char32_t c = cps[i];
    std::string seq;
    if (IsRegionalIndicator(c)) {
      AppendUtf8(c, &seq);
      if (IsRegionalIndicator(at(i + 1))) {
        AppendUtf8(cps[i + 1], &seq);
        ++i;
      }
      out.push_back(std::move(seq));
      ++i;
      continue;
    }
    if (IsKeycapBase(c)) {
      size_t j = i + 1;
      if (at(j) == kVs16) ++j;
      if (at(j) == kKeycap) {
        AppendUtf8(c, &seq);
        AppendUtf8(kKeycap, &seq);
        out.push_back(std::move(seq));
        i = j + 1;
        continue;
      }
      ++i;
      continue;
    }
    if (!IsEmojiBase(c, at(i + 1))) {
      ++i;
      continue;
    }
    AppendUtf8(c, &seq);
    ++i;
    while (i < n) {
      char32_t d = cps[i];
      if (d == kVs16) {
        ++i;
      } else if (IsSkinTone(d) || IsTag(d)) {
        AppendUtf8(d, &seq);
        ++i;
      } else if (d == kZwj && Has(at(i + 1), UCHAR_EXTENDED_PICTOGRAPHIC)) {
        AppendUtf8(d, &seq);
        AppendUtf8(cps[i + 1], &seq);
        i += 2;
      } else {
        break;
      }
    }
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace stylevec
