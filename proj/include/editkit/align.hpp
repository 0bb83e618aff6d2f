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

#ifndef EDITKIT_ALIGN_HPP_
#define EDITKIT_ALIGN_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "editkit/text.hpp"

namespace editkit {

// One maximum-length common subsequence as (source index, target index)
// pairs, strictly increasing in both coordinates.
struct Alignment {
  std::vector<std::pair<std::size_t, std::size_t>> lcs_pairs;
  std::size_t source_len = 0;
  std::size_t target_len = 0;
};

// Longest common subsequence between two token sequences, O(|a|*|b|) time
// and memory. Matching is case-sensitive. When several subsequences tie in
// length, the traceback matches the earliest source positions.
Alignment lcs(const TokenSequence& a, const TokenSequence& b);

// The added-phrase candidates of one example: deduplicated, sorted.
struct PhraseSet {
  std::vector<Phrase> phrases;

  bool contains(const Phrase& phrase) const;
  bool empty() const { return phrases.empty(); }
};

// Every maximal contiguous run of target tokens outside the LCS becomes one
// candidate phrase.
PhraseSet extract_phrase_set(const TokenSequence& source,
                             const TokenSequence& target);

// Space-joined surfaces; injective because tokens contain no whitespace.
std::string phrase_key(const Phrase& phrase);

}  // namespace editkit

#endif  // EDITKIT_ALIGN_HPP_
