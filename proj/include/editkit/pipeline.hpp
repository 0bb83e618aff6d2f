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

#ifndef EDITKIT_PIPELINE_HPP_
#define EDITKIT_PIPELINE_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "editkit/corpus.hpp"
#include "editkit/metrics.hpp"
#include "editkit/model.hpp"

// The pipeline stages behind the editkit tool. Each stage reads and writes
// versioned files, is deterministic given identical inputs, and writes
// atomically. Diagnostics go to the stream the caller passes; errors are
// thrown.
namespace editkit::pipeline {

struct VocabStage {
  std::string corpus_path;
  std::string output_path;
  TaskKind kind = TaskKind::kGeneric;
  std::string method = "frequency";  // or "greedy"
  std::size_t vocab_size = 500;
  // Partition the candidate phrases come from; nullopt uses the whole corpus.
  std::optional<Split> vocab_split = Split::kTrain;
  bool swap_enabled = true;
  bool use_sentinel = false;
};
void run_vocab(const VocabStage& stage, std::ostream& diagnostics);

struct ConvertStage {
  std::string corpus_path;
  std::string vocab_path;
  std::string output_path;
  TaskKind kind = TaskKind::kGeneric;
  bool swap_enabled = true;
  bool use_sentinel = false;
};
ConversionStats run_convert(const ConvertStage& stage, std::ostream& diagnostics);

struct TrainStage {
  std::string tagged_path;
  std::string vocab_path;
  std::string output_path;
  std::string model_kind = "perceptron";  // or "majority"
  TrainConfig config;
  // Restrict training to one split when the tagged file carries labels; the
  // tagged format keeps no split column, so this stage trains on all records.
};
void run_train(const TrainStage& stage, std::ostream& diagnostics);

struct PredictStage {
  std::string model_path;
  std::string sources_path;  // one source text per line
  std::string output_path;   // tagged records with empty targets
};
void run_predict(const PredictStage& stage, std::ostream& diagnostics);

struct RealizeStage {
  std::string sources_path;
  std::string tags_path;
  std::string vocab_path;
  std::string output_path;  // one realized text per line
};
void run_realize(const RealizeStage& stage, std::ostream& diagnostics);

struct EvalStage {
  std::string sources_path;
  std::string predictions_path;
  std::vector<std::string> reference_paths;
  std::vector<std::string> metrics = {"exact", "sari", "bleu", "rouge"};
  std::string text_output_path;
  std::string json_output_path;
  std::string corpus_id;
};
MetricsReport run_eval(const EvalStage& stage, std::ostream& diagnostics);

struct StatsStage {
  std::string corpus_path;
  std::string output_path;
  TaskKind kind = TaskKind::kGeneric;
  std::vector<std::size_t> sweep;
  bool swap_enabled = true;
  bool use_sentinel = false;
};
void run_stats(const StatsStage& stage, std::ostream& diagnostics);

// Tagged-file header: "editkit-tagged v1 labels <n> swap <0|1> sentinel <0|1>".
struct TaggedFileHeader {
  std::size_t label_count = 0;
  bool swap_enabled = false;
  bool use_sentinel = false;
};
std::string format_tagged_header(const TaggedFileHeader& header);
TaggedFileHeader parse_tagged_header(const std::string& line);

}  // namespace editkit::pipeline

#endif  // EDITKIT_PIPELINE_HPP_
