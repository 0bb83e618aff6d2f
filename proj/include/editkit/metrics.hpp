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

#ifndef EDITKIT_METRICS_HPP_
#define EDITKIT_METRICS_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "editkit/text.hpp"

namespace editkit {

// One scored prediction. references must be non-empty.
struct EvalInstance {
  std::string source;
  std::string prediction;
  std::vector<std::string> references;
};

// Percentage of instances whose prediction tokens equal some reference's
// tokens.
double exact_score(const std::vector<EvalInstance>& instances);

// SARI over n-grams n=1..4: F1 of added, kept and deleted n-gram sets of the
// prediction against a reference, relative to the source; per instance the
// best-scoring reference counts; the corpus score is the instance mean, x100.
// Empty-vs-empty n-gram sets score 1 for their component.
struct SariScore {
  double sari = 0;
  double add = 0;
  double keep = 0;
  double del = 0;
};
SariScore sari(const std::vector<EvalInstance>& instances);

// Corpus-level BLEU with uniform 1..4-gram weights, multi-reference clipped
// counts, closest-length brevity penalty and no smoothing, x100. Any zero
// modified precision collapses the geometric mean to 0.
double bleu4(const std::vector<EvalInstance>& instances);

// ROUGE-L: per instance the reference with the best LCS-based F1 counts;
// corpus scores are instance means, x100. Recall is the headline number.
struct RougeScore {
  double recall = 0;
  double precision = 0;
  double f1 = 0;
};
RougeScore rouge_l(const std::vector<EvalInstance>& instances);

// One extracted edit: source token range [start, end) replaced by the given
// tokens. Insertions have start == end; deletions an empty replacement.
struct EditSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<std::string> replacement;

  bool operator==(const EditSpan&) const = default;
  auto operator<=>(const EditSpan&) const = default;
};

// Edits of target relative to source via LCS diff; adjacent insertions and
// deletions merge into one replacement span.
std::vector<EditSpan> extract_edits(const TokenSequence& source,
                                    const TokenSequence& target);

// Edit-level precision/recall/F0.5 as fractions in [0,1]. A true positive is
// a predicted edit exactly matching a reference edit under the best-matching
// reference of its instance. No predicted edits means precision 1; recall of
// an edit-free reference set is 1 only when nothing was predicted either.
struct GecScore {
  double precision = 0;
  double recall = 0;
  double f_half = 0;
};
GecScore gec_scores(const std::vector<EvalInstance>& instances);

// Flat report with values printed at four decimal places, serializable as a
// key-value text block and as JSON.
struct MetricsReport {
  std::string corpus_id;
  std::vector<std::pair<std::string, double>> values;

  std::string to_text() const;
  std::string to_json() const;
};

// Runs the named metrics ("exact", "sari", "bleu", "rouge", "gec") and
// collects one report. Throws std::invalid_argument on an unknown name.
MetricsReport evaluate(const std::vector<EvalInstance>& instances,
                       const std::vector<std::string>& metric_names,
                       std::string corpus_id);

}  // namespace editkit

#endif  // EDITKIT_METRICS_HPP_
