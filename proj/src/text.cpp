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

#include "editkit/text.hpp"

#include <cctype>

namespace editkit {
namespace {

constexpr std::string_view kDetachable = ".,!?;:\"'()";

bool is_detachable(char c) {
  return kDetachable.find(c) != std::string_view::npos;
}

bool is_clitic(std::string_view chunk) {
  return chunk == "'s" || chunk == "'S";
}

bool ends_with_clitic(std::string_view chunk) {
  return chunk.size() > 2 && is_clitic(chunk.substr(chunk.size() - 2));
}

// No space is inserted before these when detokenizing.
bool attaches_left(const std::string& surface) {
  return surface == "." || surface == "," || surface == "!" ||
         surface == "?" || surface == ";" || surface == ":" ||
         surface == ")" || is_clitic(surface);
}

void emit_chunk(std::string_view chunk, TokenSequence& out) {
  while (!chunk.empty() && is_detachable(chunk.front()) && !is_clitic(chunk)) {
    out.push_back({std::string(1, chunk.front())});
    chunk.remove_prefix(1);
  }
  std::string trailing;
  while (!chunk.empty() && is_detachable(chunk.back()) && !is_clitic(chunk)) {
    trailing.push_back(chunk.back());
    chunk.remove_suffix(1);
  }
  if (is_clitic(chunk)) {
    out.push_back({std::string(chunk)});
  } else if (ends_with_clitic(chunk)) {
    out.push_back({std::string(chunk.substr(0, chunk.size() - 2))});
    out.push_back({std::string(chunk.substr(chunk.size() - 2))});
  } else if (!chunk.empty()) {
    out.push_back({std::string(chunk)});
  }
  for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) {
    out.push_back({std::string(1, *it)});
  }
}

}  // namespace

TokenSequence tokenize(std::string_view text) {
  TokenSequence out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    std::size_t j = i;
    while (j < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[j]))) {
      ++j;
    }
    if (j > i) emit_chunk(text.substr(i, j - i), out);
    i = j;
  }
  return out;
}

std::string detokenize(const TokenSequence& tokens) {
  std::string out;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (k > 0 && !attaches_left(tokens[k].surface) &&
        tokens[k - 1].surface != "(") {
      out += ' ';
    }
    out += tokens[k].surface;
  }
  return out;
}

std::vector<TokenSequence> split_sentences(const TokenSequence& tokens) {
  std::vector<TokenSequence> sentences;
  TokenSequence current;
  for (const Token& token : tokens) {
    current.push_back(token);
    if (token.sentence_final()) {
      sentences.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) sentences.push_back(std::move(current));
  return sentences;
}

TokenSequence from_words(const std::vector<std::string>& words) {
  TokenSequence out;
  out.reserve(words.size());
  for (const std::string& word : words) out.push_back({word});
  return out;
}

std::string join_words(const TokenSequence& tokens) {
  std::string out;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (k > 0) out += ' ';
    out += tokens[k].surface;
  }
  return out;
}

std::string capitalize_first(std::string word) {
  if (!word.empty() && std::isalpha(static_cast<unsigned char>(word[0]))) {
    word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
  }
  return word;
}

std::string lowercase_first(std::string word) {
  if (!word.empty() && std::isalpha(static_cast<unsigned char>(word[0]))) {
    word[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(word[0])));
  }
  return word;
}

std::string ascii_lower(std::string_view word) {
  std::string out(word);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace editkit
