// Copyright 2026 The EditKit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EDITKIT_TEXT_HPP_
#define EDITKIT_TEXT_HPP_

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace editkit {

// A single word-level token. The surface never contains whitespace.
struct Token {
  std::string surface;

  // True iff the token terminates a sentence.
  bool sentence_final() const {
    return surface == "." || surface == "!" || surface == "?";
  }

  auto operator<=>(const Token&) const = default;
};

using TokenSequence = std::vector<Token>;

// A short token sequence insertable in front of a token.
using Phrase = TokenSequence;

// Rule-based word tokenizer. Splits on whitespace, then detaches leading and
// trailing punctuation from each chunk as separate tokens; the possessive
// clitic 's stays one token. Casing is preserved. Total and deterministic.
TokenSequence tokenize(std::string_view text);

// Joins tokens with single spaces, except no space before closing
// punctuation and the clitic, and none after "(". Tokenizer output survives
// a detokenize/tokenize round trip unchanged.
std::string detokenize(const TokenSequence& tokens);

// Splits after every sentence-final token. Concatenating the parts yields
// the input; a trailing unterminated segment forms its own sentence.
std::vector<TokenSequence> split_sentences(const TokenSequence& tokens);

// Wraps words that are already tokens (no further splitting performed).
TokenSequence from_words(const std::vector<std::string>& words);

// Surfaces joined by single spaces.
std::string join_words(const TokenSequence& tokens);

// ASCII casing helpers; a non-alphabetic first character is left alone.
std::string capitalize_first(std::string word);
std::string lowercase_first(std::string word);
std::string ascii_lower(std::string_view word);

}  // namespace editkit

#endif  // EDITKIT_TEXT_HPP_
