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

#include "editkit/corpus.hpp"

#include <filesystem>
#include <stdexcept>

#include "editkit/io.hpp"

namespace editkit {
namespace {

// Feasibility of the greedy conversion when every phrase is available: the
// vocabulary-independent part of Algorithm behavior, used to pick the
// extraction orientation for fusion examples.
bool order_feasible(const TokenSequence& source, const TokenSequence& target,
                    bool use_sentinel) {
  TokenSequence s = source;
  TokenSequence t = target;
  if (use_sentinel) {
    s.push_back(end_sentinel());
    t.push_back(end_sentinel());
  }
  std::size_t is = 0;
  std::size_t it = 0;
  while (it < t.size()) {
    if (is >= s.size()) return false;
    if (s[is] == t[it]) {
      ++it;
    } else {
      for (std::size_t j = 1; it + j < t.size(); ++j) {
        if (s[is] == t[it + j]) {
          it += j + 1;
          break;
        }
      }
    }
    ++is;
  }
  return true;
}

TokenSequence swapped_sentences(const std::vector<TokenSequence>& sentences) {
  TokenSequence swapped = sentences[1];
  swapped.insert(swapped.end(), sentences[0].begin(), sentences[0].end());
  return swapped;
}

}  // namespace

TaskKind task_kind_from_string(const std::string& name) {
  if (name == "fusion") return TaskKind::kFusion;
  if (name == "split") return TaskKind::kSplit;
  if (name == "summarization") return TaskKind::kSummarization;
  if (name == "gec") return TaskKind::kGec;
  if (name == "generic") return TaskKind::kGeneric;
  throw std::invalid_argument("unknown task kind: " + name);
}

std::string to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::kFusion: return "fusion";
    case TaskKind::kSplit: return "split";
    case TaskKind::kSummarization: return "summarization";
    case TaskKind::kGec: return "gec";
    case TaskKind::kGeneric: return "generic";
  }
  return "?";
}

std::optional<Split> split_from_string(const std::string& name) {
  if (name == "train") return Split::kTrain;
  if (name == "validation" || name == "dev") return Split::kValidation;
  if (name == "test") return Split::kTest;
  return std::nullopt;
}

std::string to_string(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kValidation: return "validation";
    case Split::kTest: return "test";
  }
  return "?";
}

ParallelCorpus read_tsv(const std::string& path, TaskKind kind) {
  const std::vector<std::string> lines = read_lines(path);
  ParallelCorpus corpus;
  corpus.kind = kind;
  corpus.id = std::filesystem::path(path).filename().string();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::vector<std::string> fields = split_on(lines[i], '\t');
    if (fields.size() < 2) {
      throw std::runtime_error(path + ":" + std::to_string(i + 1) +
                               ": expected at least 2 tab-separated fields, got " +
                               std::to_string(fields.size()));
    }
    EditExample example;
    example.source_text = fields[0];
    example.target_text = fields[1];
    if (example.source_text.empty()) {
      throw std::runtime_error(path + ":" + std::to_string(i + 1) +
                               ": empty source field");
    }
    std::size_t reference_start = 2;
    if (fields.size() > 2) {
      if (auto split = split_from_string(fields[2])) {
        example.split = *split;
        reference_start = 3;
      }
    }
    for (std::size_t f = reference_start; f < fields.size(); ++f) {
      example.extra_references.push_back(fields[f]);
    }
    corpus.examples.push_back(std::move(example));
  }
  if (corpus.examples.empty()) {
    throw std::runtime_error(path + ": no examples found");
  }
  return corpus;
}

std::pair<ParallelCorpus, ConversionStats> convert_corpus(
    const ParallelCorpus& corpus, const PhraseVocabulary& vocab,
    const CorpusOptions& options) {
  ParallelCorpus tagged = corpus;
  ConversionStats stats;
  const ConversionOptions conversion{options.use_sentinel};
  for (EditExample& example : tagged.examples) {
    const TokenSequence source = tokenize(example.source_text);
    const TokenSequence target = tokenize(example.target_text);
    example.tags = (corpus.kind == TaskKind::kFusion && options.swap_enabled)
                       ? convert_with_swap(source, target, vocab, conversion)
                       : convert_to_tags(source, target, vocab, conversion);
    ++stats.total;
    if (example.tags.convertible) {
      ++stats.convertible;
    } else {
      ++stats.filtered;
    }
  }
  return {std::move(tagged), stats};
}

std::vector<PhraseSet> corpus_phrase_sets(const ParallelCorpus& corpus,
                                          std::optional<Split> split,
                                          const CorpusOptions& options) {
  std::vector<PhraseSet> sets;
  for (const EditExample& example : corpus.examples) {
    if (split && example.split != *split) continue;
    const TokenSequence source = tokenize(example.source_text);
    const TokenSequence target = tokenize(example.target_text);
    if (corpus.kind == TaskKind::kFusion && options.swap_enabled &&
        !order_feasible(source, target, options.use_sentinel)) {
      const std::vector<TokenSequence> sentences = split_sentences(source);
      if (sentences.size() == 2) {
        const TokenSequence swapped = swapped_sentences(sentences);
        if (order_feasible(swapped, target, options.use_sentinel)) {
          sets.push_back(extract_phrase_set(swapped, target));
          continue;
        }
      }
    }
    sets.push_back(extract_phrase_set(source, target));
  }
  return sets;
}

std::vector<CoverageCurvePoint> stats_report(
    const ParallelCorpus& corpus, const std::vector<std::size_t>& sweep,
    const CorpusOptions& options) {
  const std::vector<PhraseSet> sets =
      corpus_phrase_sets(corpus, std::nullopt, options);
  std::vector<CoverageCurvePoint> curve;
  curve.reserve(sweep.size());
  for (const std::size_t budget : sweep) {
    const PhraseVocabulary vocab = select_frequency(sets, budget);
    curve.push_back({budget, coverage(vocab, sets).coverage});
  }
  return curve;
}

}  // namespace editkit
