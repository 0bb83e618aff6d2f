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

#include "editkit/tags.hpp"

#include <sstream>
#include <stdexcept>

#include "editkit/io.hpp"

namespace editkit {
namespace {

// The greedy scan shared by both conversion entry points. `tags` arrives
// sized to the source and initialized to DELETE. Returns false when the
// target cannot be consumed.
bool greedy_convert(const TokenSequence& source, const TokenSequence& target,
                    const PhraseVocabulary& vocab, std::vector<EditTag>& tags) {
  const std::size_t source_len = source.size();
  const std::size_t target_len = target.size();
  const std::size_t max_phrase = vocab.max_phrase_len();
  const PhraseTrie& trie = vocab.trie();

  std::size_t is = 0;
  std::size_t it = 0;
  while (it < target_len) {
    if (is >= source_len) return false;
    if (source[is] == target[it]) {
      tags[is] = EditTag::keep();
      ++it;
    } else {
      // Grow the candidate phrase one target token at a time, following the
      // vocabulary trie; commit at the first length where the phrase is a
      // vocabulary member and the next target token matches the source token.
      std::optional<PhraseTrie::NodeId> node = PhraseTrie::kRoot;
      std::size_t phrase_len = 0;
      for (std::size_t j = 1; j <= max_phrase && it + j - 1 < target_len; ++j) {
        node = trie.advance(*node, target[it + j - 1]);
        if (!node) break;  // no vocabulary phrase continues this prefix
        if (it + j < target_len && source[is] == target[it + j] &&
            trie.terminal(*node)) {
          phrase_len = j;
          break;
        }
      }
      if (phrase_len > 0) {
        tags[is] = EditTag::keep(Phrase(target.begin() + it,
                                        target.begin() + it + phrase_len));
        it += phrase_len + 1;
      }
    }
    ++is;
  }
  return true;
}

// Moves each added phrase to the first position of the all-DELETE run right
// before its host. Deleted tokens emit nothing, so realization output is
// unchanged; the tag row then matches where a human would put the insertion.
void relocate_phrases_to_delete_runs(std::vector<EditTag>& tags) {
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i].base != BaseTag::kKeep || !tags[i].added_phrase) continue;
    std::size_t run_start = i;
    while (run_start > 0 && tags[run_start - 1].base == BaseTag::kDelete &&
           !tags[run_start - 1].added_phrase) {
      --run_start;
    }
    if (run_start < i) {
      tags[run_start].added_phrase = std::move(tags[i].added_phrase);
      tags[i].added_phrase.reset();
    }
  }
}

}  // namespace

std::string to_string(BaseTag base) {
  switch (base) {
    case BaseTag::kKeep: return "KEEP";
    case BaseTag::kDelete: return "DELETE";
    case BaseTag::kSwap: return "SWAP";
  }
  return "?";
}

const Token& end_sentinel() {
  static const Token sentinel{"<eot>"};
  return sentinel;
}

TagSequence convert_to_tags(const TokenSequence& source,
                            const TokenSequence& target,
                            const PhraseVocabulary& vocab,
                            const ConversionOptions& options) {
  if (!options.use_sentinel) {
    std::vector<EditTag> tags(source.size(), EditTag::del());
    if (!greedy_convert(source, target, vocab, tags)) {
      return TagSequence::infeasible();
    }
    return {std::move(tags), true, std::nullopt};
  }

  TokenSequence extended_source = source;
  extended_source.push_back(end_sentinel());
  TokenSequence extended_target = target;
  extended_target.push_back(end_sentinel());
  std::vector<EditTag> tags(extended_source.size(), EditTag::del());
  if (!greedy_convert(extended_source, extended_target, vocab, tags)) {
    return TagSequence::infeasible();
  }
  TagSequence out;
  out.convertible = true;
  EditTag sentinel_tag = std::move(tags.back());
  tags.pop_back();
  out.tags = std::move(tags);
  if (sentinel_tag.added_phrase) {
    out.trailing_insertion = std::move(sentinel_tag.added_phrase);
  }
  return out;
}

TagSequence convert_with_swap(const TokenSequence& source,
                              const TokenSequence& target,
                              const PhraseVocabulary& vocab,
                              const ConversionOptions& options) {
  TagSequence direct = convert_to_tags(source, target, vocab, options);
  if (direct.convertible) return direct;

  const std::vector<TokenSequence> sentences = split_sentences(source);
  if (sentences.size() != 2) return TagSequence::infeasible();
  const TokenSequence& first = sentences[0];
  const TokenSequence& second = sentences[1];

  TokenSequence swapped = second;
  swapped.insert(swapped.end(), first.begin(), first.end());
  TagSequence retry = convert_to_tags(swapped, target, vocab, options);
  if (!retry.convertible) return TagSequence::infeasible();

  relocate_phrases_to_delete_runs(retry.tags);

  // In swapped order the first sentence's terminator sits last. SWAP realizes
  // it as a bare kept token, so anything else there is inexpressible.
  EditTag& terminator = retry.tags.back();
  if (terminator.base != BaseTag::kKeep || terminator.added_phrase) {
    return TagSequence::infeasible();
  }
  terminator = EditTag::swap();

  TagSequence out;
  out.convertible = true;
  out.trailing_insertion = std::move(retry.trailing_insertion);
  out.tags.reserve(source.size());
  out.tags.insert(out.tags.end(), retry.tags.begin() + second.size(),
                  retry.tags.end());
  out.tags.insert(out.tags.end(), retry.tags.begin(),
                  retry.tags.begin() + second.size());
  return out;
}

std::optional<std::size_t> swap_eligible_position(const TokenSequence& tokens) {
  const std::vector<TokenSequence> sentences = split_sentences(tokens);
  if (sentences.size() != 2) return std::nullopt;
  return sentences[0].size() - 1;
}

TagLabelIndex::TagLabelIndex(const PhraseVocabulary& vocab, bool enable_swap)
    : phrases_(vocab.phrases()) {
  labels_.push_back(EditTag::keep());
  for (const Phrase& phrase : phrases_) labels_.push_back(EditTag::keep(phrase));
  labels_.push_back(EditTag::del());
  for (const Phrase& phrase : phrases_) labels_.push_back(EditTag::del(phrase));
  if (enable_swap) {
    swap_id_ = labels_.size();
    labels_.push_back(EditTag::swap());
  }
  for (std::size_t id = 0; id < labels_.size(); ++id) {
    const EditTag& tag = labels_[id];
    const std::string key =
        tag.added_phrase ? phrase_key(*tag.added_phrase) : std::string();
    lookup_[{static_cast<int>(tag.base), key}] = id;
  }
}

std::optional<std::size_t> TagLabelIndex::id_of(const EditTag& tag) const {
  const std::string key =
      tag.added_phrase ? phrase_key(*tag.added_phrase) : std::string();
  auto it = lookup_.find({static_cast<int>(tag.base), key});
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> tags_to_label_ids(const TagSequence& tags,
                                           const TagLabelIndex& index) {
  std::vector<std::size_t> ids;
  ids.reserve(tags.tags.size() + 1);
  for (const EditTag& tag : tags.tags) {
    auto id = index.id_of(tag);
    if (!id) {
      throw std::invalid_argument("tag not present in label index: " +
                                  to_string(tag.base));
    }
    ids.push_back(*id);
  }
  if (tags.trailing_insertion) {
    auto id = index.id_of(EditTag::keep(*tags.trailing_insertion));
    if (!id) {
      throw std::invalid_argument("trailing phrase not present in label index");
    }
    ids.push_back(*id);
  }
  return ids;
}

TagSequence label_ids_to_tags(const std::vector<std::size_t>& ids,
                              std::size_t token_count,
                              const TagLabelIndex& index) {
  if (ids.empty()) return TagSequence::infeasible();
  if (ids.size() != token_count && ids.size() != token_count + 1) {
    throw std::invalid_argument(
        "label id count " + std::to_string(ids.size()) +
        " does not match token count " + std::to_string(token_count));
  }
  TagSequence out;
  out.convertible = true;
  for (std::size_t i = 0; i < token_count; ++i) {
    out.tags.push_back(index.label(ids[i]));
  }
  if (ids.size() == token_count + 1) {
    const EditTag& last = index.label(ids.back());
    if (last.base != BaseTag::kKeep || !last.added_phrase) {
      throw std::invalid_argument(
          "trailing label must be KEEP with a phrase, got id " +
          std::to_string(ids.back()));
    }
    out.trailing_insertion = last.added_phrase;
  }
  return out;
}

std::string format_tagged_record(const TaggedRecord& record,
                                 const TagLabelIndex& index) {
  std::ostringstream out;
  out << record.source << '\t' << record.target << '\t';
  if (record.tags.convertible) {
    const std::vector<std::size_t> ids = tags_to_label_ids(record.tags, index);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i > 0) out << ' ';
      out << ids[i];
    }
  }
  return out.str();
}

TaggedRecord parse_tagged_record(const std::string& line,
                                 const TagLabelIndex& index,
                                 std::size_t line_number) {
  const std::vector<std::string> fields = split_on(line, '\t');
  if (fields.size() != 3) {
    throw std::runtime_error("tagged record line " +
                             std::to_string(line_number) + ": expected 3 " +
                             "tab-separated fields, got " +
                             std::to_string(fields.size()));
  }
  TaggedRecord record;
  record.source = fields[0];
  record.target = fields[1];
  if (fields[2].empty()) {
    record.tags = TagSequence::infeasible();
    return record;
  }
  std::vector<std::size_t> ids;
  for (const std::string& piece : split_on(fields[2], ' ')) {
    if (piece.empty()) continue;
    std::size_t id = 0;
    try {
      id = std::stoul(piece);
    } catch (const std::exception&) {
      throw std::runtime_error("tagged record line " +
                               std::to_string(line_number) +
                               ": bad label id '" + piece + "'");
    }
    if (id >= index.size()) {
      throw std::runtime_error("tagged record line " +
                               std::to_string(line_number) + ": label id " +
                               std::to_string(id) + " outside index of size " +
                               std::to_string(index.size()));
    }
    ids.push_back(id);
  }
  const std::size_t token_count = tokenize(record.source).size();
  try {
    record.tags = label_ids_to_tags(ids, token_count, index);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error("tagged record line " +
                             std::to_string(line_number) + ": " + e.what());
  }
  return record;
}

}  // namespace editkit
