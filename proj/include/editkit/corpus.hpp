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

#ifndef EDITKIT_CORPUS_HPP_
#define EDITKIT_CORPUS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "editkit/align.hpp"
#include "editkit/tags.hpp"
#include "editkit/text.hpp"
#include "editkit/vocab.hpp"

namespace editkit {

enum class TaskKind { kFusion, kSplit, kSummarization, kGec, kGeneric };

TaskKind task_kind_from_string(const std::string& name);
std::string to_string(TaskKind kind);

enum class Split { kTrain, kValidation, kTest };

std::optional<Split> split_from_string(const std::string& name);
std::string to_string(Split split);

struct EditExample {
  std::string source_text;
  std::string target_text;
  std::vector<std::string> extra_references;
  Split split = Split::kTrain;
  // Filled by convert_corpus; infeasible until then.
  TagSequence tags;
};

struct ParallelCorpus {
  TaskKind kind = TaskKind::kGeneric;
  std::string id;
  std::vector<EditExample> examples;
};

struct ConversionStats {
  std::size_t total = 0;
  std::size_t convertible = 0;
  std::size_t filtered = 0;

  double convertible_fraction() const {
    return total == 0 ? 1.0 : static_cast<double>(convertible) / total;
  }
};

// Parses "source<TAB>target[<TAB>split][<TAB>extra references...]".
// A third column naming a split (train/validation/dev/test) labels the
// example; any remaining columns are extra references. Throws on a missing
// or empty file, or a malformed line (naming its line number).
ParallelCorpus read_tsv(const std::string& path, TaskKind kind);

struct CorpusOptions {
  bool swap_enabled = true;
  bool use_sentinel = false;
};

// Tags every example — convert_with_swap for fusion corpora, plain
// conversion otherwise. Unconvertible examples stay in the corpus with
// infeasible tags for the statistics; nothing else is mutated.
std::pair<ParallelCorpus, ConversionStats> convert_corpus(
    const ParallelCorpus& corpus, const PhraseVocabulary& vocab,
    const CorpusOptions& options = {});

// Candidate phrase sets per example, restricted to `split` when given. For
// fusion corpora with SWAP on, examples that only align in swapped sentence
// order are extracted against the swapped source, mirroring what conversion
// will do.
std::vector<PhraseSet> corpus_phrase_sets(const ParallelCorpus& corpus,
                                          std::optional<Split> split,
                                          const CorpusOptions& options = {});

struct CoverageCurvePoint {
  std::size_t budget = 0;
  double coverage = 0;
};

// Coverage of the frequency-selected vocabulary at each budget in the sweep.
// Monotone non-decreasing in the budget.
std::vector<CoverageCurvePoint> stats_report(const ParallelCorpus& corpus,
                                             const std::vector<std::size_t>& sweep,
                                             const CorpusOptions& options = {});

}  // namespace editkit

#endif  // EDITKIT_CORPUS_HPP_
