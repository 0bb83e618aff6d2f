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

#ifndef EDITKIT_VOCAB_HPP_
#define EDITKIT_VOCAB_HPP_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "editkit/align.hpp"
#include "editkit/text.hpp"

namespace editkit {

// Prefix index over vocabulary phrases. Tag conversion walks it one token at
// a time, so growing a candidate phrase costs one map lookup per token.
class PhraseTrie {
 public:
  using NodeId = std::size_t;
  static constexpr NodeId kRoot = 0;

  PhraseTrie() : nodes_(1) {}

  void insert(const Phrase& phrase);

  // Child of `node` along `token`, or nullopt when no phrase continues the
  // prefix this way.
  std::optional<NodeId> advance(NodeId node, const Token& token) const;

  bool terminal(NodeId node) const { return nodes_[node].terminal; }

 private:
  struct Node {
    std::unordered_map<std::string, NodeId> next;
    bool terminal = false;
  };
  std::vector<Node> nodes_;
};

// Ordered set of distinct insertable phrases. Immutable after construction;
// the induced tag-label count is 2*(size()+1), plus one when SWAP is on.
class PhraseVocabulary {
 public:
  PhraseVocabulary() = default;
  // Throws std::invalid_argument on empty or duplicate phrases.
  explicit PhraseVocabulary(std::vector<Phrase> phrases,
                            std::string corpus_id = "");

  const std::vector<Phrase>& phrases() const { return phrases_; }
  std::size_t size() const { return phrases_.size(); }
  // Length in tokens of the longest phrase (n_p); 0 iff empty.
  std::size_t max_phrase_len() const { return max_phrase_len_; }
  bool contains(const Phrase& phrase) const;
  const PhraseTrie& trie() const { return trie_; }
  const std::string& corpus_id() const { return corpus_id_; }

 private:
  std::vector<Phrase> phrases_;
  std::set<Phrase> lookup_;
  std::size_t max_phrase_len_ = 0;
  std::string corpus_id_;
  PhraseTrie trie_;
};

struct CoverageReport {
  std::size_t total_examples = 0;
  std::size_t covered_examples = 0;
  double coverage = 1.0;  // covered/total; 0/0 counts as 1
  std::map<Phrase, std::size_t> per_phrase_frequency;
};

// The budget-ℓ selectors. All are deterministic given identical input order:
// ties go to the higher phrase-set frequency, then lexicographic order.
//
// select_frequency: the budget most frequent phrases by phrase-set count.
// select_greedy: one phrase at a time, maximizing newly covered sets.
// select_exact: exhaustive optimum; a test oracle for small instances only.
PhraseVocabulary select_frequency(const std::vector<PhraseSet>& phrase_sets,
                                  std::size_t budget);
PhraseVocabulary select_greedy(const std::vector<PhraseSet>& phrase_sets,
                               std::size_t budget);

inline constexpr std::size_t kExactSelectionPhraseLimit = 20;

// Throws std::invalid_argument when the instance holds more than
// kExactSelectionPhraseLimit distinct phrases.
PhraseVocabulary select_exact(const std::vector<PhraseSet>& phrase_sets,
                              std::size_t budget);

// Counts phrase sets fully inside the vocabulary. Empty sets are always
// covered; an empty set list yields coverage 1 by convention.
CoverageReport coverage(const PhraseVocabulary& vocab,
                        const std::vector<PhraseSet>& phrase_sets);

// Plain-text persistence: header "editkit-vocab v1 <count>", then one phrase
// per line, tokens space-separated. Loading validates header, count and
// distinctness.
void write_vocabulary(const PhraseVocabulary& vocab, std::ostream& out);
PhraseVocabulary read_vocabulary(std::istream& in, std::string corpus_id = "");
void save_vocabulary(const PhraseVocabulary& vocab, const std::string& path);
PhraseVocabulary load_vocabulary(const std::string& path);

}  // namespace editkit

#endif  // EDITKIT_VOCAB_HPP_
