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

#ifndef EDITKIT_TAGS_HPP_
#define EDITKIT_TAGS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "editkit/text.hpp"
#include "editkit/vocab.hpp"

namespace editkit {

enum class BaseTag { kKeep, kDelete, kSwap };

std::string to_string(BaseTag base);

// One edit operation on one source token: keep or drop the token, optionally
// inserting a vocabulary phrase in front of it. SWAP reorders two-sentence
// input and never carries a phrase.
struct EditTag {
  BaseTag base = BaseTag::kDelete;
  std::optional<Phrase> added_phrase;

  static EditTag keep() { return {BaseTag::kKeep, std::nullopt}; }
  static EditTag keep(Phrase phrase) { return {BaseTag::kKeep, std::move(phrase)}; }
  static EditTag del() { return {BaseTag::kDelete, std::nullopt}; }
  static EditTag del(Phrase phrase) { return {BaseTag::kDelete, std::move(phrase)}; }
  static EditTag swap() { return {BaseTag::kSwap, std::nullopt}; }

  bool operator==(const EditTag&) const = default;
};

// The converted form of one example. When convertible, tags holds exactly one
// tag per source token; otherwise it is empty. trailing_insertion carries a
// phrase attached past the last token, which only end-sentinel conversion can
// produce.
struct TagSequence {
  std::vector<EditTag> tags;
  bool convertible = false;
  std::optional<Phrase> trailing_insertion;

  static TagSequence infeasible() { return {}; }

  bool operator==(const TagSequence&) const = default;
};

struct ConversionOptions {
  // Appends a sentinel token to source and target before converting, making
  // insertions after the last source token expressible. Off reproduces the
  // plain greedy conversion, which cannot attach trailing phrases.
  bool use_sentinel = false;
};

// Reserved token used by end-sentinel conversion; never appears in output.
const Token& end_sentinel();

// Greedy left-to-right conversion of a target into tags over `vocab`.
// Scans the target once, matching source tokens directly or through a grown
// candidate phrase; runs in O(|source| * n_p) phrase probes. Returns the
// infeasible sequence when the target cannot be consumed; that is a regular
// outcome, not an error.
TagSequence convert_to_tags(const TokenSequence& source,
                            const TokenSequence& target,
                            const PhraseVocabulary& vocab,
                            const ConversionOptions& options = {});

// Like convert_to_tags, but when direct conversion fails and the source is
// exactly two sentences, retries with the sentences swapped. A successful
// retry is mapped back to original token order; added phrases move to the
// start of the deleted run before their host (output text is unchanged), and
// the first sentence's terminator becomes SWAP. The retry is rejected when
// that terminator was not kept bare, since SWAP realizes it as a kept token.
TagSequence convert_with_swap(const TokenSequence& source,
                              const TokenSequence& target,
                              const PhraseVocabulary& vocab,
                              const ConversionOptions& options = {});

// Index of the token eligible for SWAP: the terminator of the first sentence
// when the sequence splits into exactly two. nullopt otherwise.
std::optional<std::size_t> swap_eligible_position(const TokenSequence& tokens);

// Enumerates {KEEP, DELETE} x ({no phrase} + vocabulary phrases), KEEP block
// first, phrases in vocabulary order, SWAP last when enabled. Size is
// 2*(|V|+1) plus one for SWAP.
class TagLabelIndex {
 public:
  TagLabelIndex() = default;
  TagLabelIndex(const PhraseVocabulary& vocab, bool enable_swap);

  std::size_t size() const { return labels_.size(); }
  const EditTag& label(std::size_t id) const { return labels_.at(id); }
  std::optional<std::size_t> id_of(const EditTag& tag) const;
  bool swap_enabled() const { return swap_id_.has_value(); }
  std::optional<std::size_t> swap_id() const { return swap_id_; }
  const std::vector<Phrase>& phrases() const { return phrases_; }

 private:
  std::vector<EditTag> labels_;
  std::vector<Phrase> phrases_;
  std::map<std::pair<int, std::string>, std::size_t> lookup_;
  std::optional<std::size_t> swap_id_;
};

// Label ids of a convertible sequence; the trailing insertion, when present,
// appends one extra KEEP-based id. Throws when a phrase is missing from the
// index.
std::vector<std::size_t> tags_to_label_ids(const TagSequence& tags,
                                           const TagLabelIndex& index);

// Inverse of tags_to_label_ids given the source token count: accepts exactly
// token_count ids, or token_count + 1 when the final id carries the trailing
// insertion. Empty input yields the infeasible sequence.
TagSequence label_ids_to_tags(const std::vector<std::size_t>& ids,
                              std::size_t token_count,
                              const TagLabelIndex& index);

// One tagged example as "source<TAB>target<TAB>space-separated label ids";
// the id field is empty for non-convertible examples.
struct TaggedRecord {
  std::string source;
  std::string target;
  TagSequence tags;
};

std::string format_tagged_record(const TaggedRecord& record,
                                 const TagLabelIndex& index);
TaggedRecord parse_tagged_record(const std::string& line,
                                 const TagLabelIndex& index,
                                 std::size_t line_number);

}  // namespace editkit

#endif  // EDITKIT_TAGS_HPP_
