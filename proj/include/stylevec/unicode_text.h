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

#ifndef STYLEVEC_UNICODE_TEXT_H_
#define STYLEVEC_UNICODE_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace stylevec {

// Ill-formed bytes decode to U+FFFD.
std::vector<char32_t> DecodeUtf8(std::string_view text);
void AppendUtf8(char32_t cp, std::string* out);

// Unicode general category P*.
bool IsPunctuation(char32_t cp);

// Full case folding.
std::string FoldCase(std::string_view text);

// Emoji sequences in text order, as UTF-8 with U+FE0F removed. A sequence is
// a pictographic base (plus modifiers, tags and ZWJ continuations), a flag
// pair or a keycap. Text-style symbols such as (c) or TM only count when
// followed by U+FE0F.
std::vector<std::string> SegmentEmojis(std::string_view text);

}  // namespace stylevec

#endif  // STYLEVEC_UNICODE_TEXT_H_
