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

#include "editkit/align.hpp"

#include <algorithm>

namespace editkit {

Alignment lcs(const TokenSequence& a, const TokenSequence& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  // dp[i][j] = LCS length of the suffixes a[i:], b[j:].
  std::vector<int> dp((n + 1) * (m + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> int& {
    return dp[i * (m + 1) + j];
  };
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      at(i, j) = (a[i] == b[j]) ? at(i + 1, j + 1) + 1
                                : std::max(at(i + 1, j), at(i, j + 1));
    }
  }

  Alignment out;
  out.source_len = n;
  out.target_len = m;
  // Forward walk: matching whenever tokens are equal is always optimal and
  // binds the earliest source position; on skip ties the target advances
  // first, which also keeps matched source indices minimal.
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n && j < m) {
    if (a[i] == b[j]) {
      out.lcs_pairs.emplace_back(i, j);
      ++i;
      ++j;
    } else if (at(i + 1, j) > at(i, j + 1)) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

bool PhraseSet::contains(const Phrase& phrase) const {
  return std::binary_search(phrases.begin(), phrases.end(), phrase);
}

PhraseSet extract_phrase_set(const TokenSequence& source,
                             const TokenSequence& target) {
  const Alignment alignment = lcs(source, target);
  std::vector<bool> in_lcs(target.size(), false);
  for (const auto& [si, ti] : alignment.lcs_pairs) in_lcs[ti] = true;

  PhraseSet out;
  std::size_t t = 0;
  while (t < target.size()) {
    if (in_lcs[t]) {
      ++t;
      continue;
    }
    std::size_t run_end = t;
    while (run_end < target.size() && !in_lcs[run_end]) ++run_end;
    out.phrases.emplace_back(target.begin() + t, target.begin() + run_end);
    t = run_end;
  }
  std::sort(out.phrases.begin(), out.phrases.end());
  out.phrases.erase(std::unique(out.phrases.begin(), out.phrases.end()),
                    out.phrases.end());
  return out;
}

std::string phrase_key(const Phrase& phrase) { return join_words(phrase); }

}  // namespace editkit
