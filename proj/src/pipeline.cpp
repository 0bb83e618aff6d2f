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

#include "editkit/pipeline.hpp"

#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "editkit/io.hpp"
#include "editkit/realize.hpp"

namespace editkit::pipeline {
namespace {

PhraseVocabulary select_with_method(const std::vector<PhraseSet>& sets,
                                    const std::string& method,
                                    std::size_t budget) {
  if (method == "frequency") return select_frequency(sets, budget);
  if (method == "greedy") return select_greedy(sets, budget);
  throw std::invalid_argument("unknown selection method: " + method);
}

std::size_t count_distinct_phrases(const std::vector<PhraseSet>& sets) {
  std::set<Phrase> pool;
  for (const PhraseSet& set : sets) {
    pool.insert(set.phrases.begin(), set.phrases.end());
  }
  return pool.size();
}

}  // namespace

std::string format_tagged_header(const TaggedFileHeader& header) {
  std::ostringstream out;
  out << "editkit-tagged v1 labels " << header.label_count << " swap "
      << (header.swap_enabled ? 1 : 0) << " sentinel "
      << (header.use_sentinel ? 1 : 0);
  return out.str();
}

TaggedFileHeader parse_tagged_header(const std::string& line) {
  std::istringstream in(line);
  std::string magic, version, labels_word, swap_word, sentinel_word;
  TaggedFileHeader header;
  int swap_flag = 0;
  int sentinel_flag = 0;
  if (!(in >> magic >> version >> labels_word >> header.label_count >>
        swap_word >> swap_flag >> sentinel_word >> sentinel_flag) ||
      magic != "editkit-tagged" || version != "v1" || labels_word != "labels" ||
      swap_word != "swap" || sentinel_word != "sentinel") {
    throw std::runtime_error("bad tagged-file header: " + line);
  }
  header.swap_enabled = swap_flag != 0;
  header.use_sentinel = sentinel_flag != 0;
  return header;
}

void run_vocab(const VocabStage& stage, std::ostream& diagnostics) {
  const ParallelCorpus corpus = read_tsv(stage.corpus_path, stage.kind);
  const CorpusOptions options{stage.swap_enabled, stage.use_sentinel};
  const std::vector<PhraseSet> sets =
      corpus_phrase_sets(corpus, stage.vocab_split, options);
  const std::size_t pool = count_distinct_phrases(sets);
  if (stage.vocab_size > pool) {
    diagnostics << "warning: budget " << stage.vocab_size
                << " exceeds the candidate pool of " << pool
                << " phrases; vocabulary is clamped to the pool\n";
  }
  const PhraseVocabulary vocab =
      select_with_method(sets, stage.method, stage.vocab_size);
  save_vocabulary(vocab, stage.output_path);
  diagnostics << "vocab: " << vocab.size() << " phrases from "
              << sets.size() << " phrase sets -> " << stage.output_path << "\n";
}

ConversionStats run_convert(const ConvertStage& stage, std::ostream& diagnostics) {
  const ParallelCorpus corpus = read_tsv(stage.corpus_path, stage.kind);
  const PhraseVocabulary vocab = load_vocabulary(stage.vocab_path);
  const CorpusOptions options{stage.swap_enabled, stage.use_sentinel};
  const auto [tagged, stats] = convert_corpus(corpus, vocab, options);

  const TagLabelIndex index(vocab, stage.swap_enabled);
  TaggedFileHeader header{index.size(), stage.swap_enabled, stage.use_sentinel};
  std::ostringstream out;
  out << format_tagged_header(header) << "\n";
  for (const EditExample& example : tagged.examples) {
    out << format_tagged_record(
               {example.source_text, example.target_text, example.tags}, index)
        << "\n";
  }
  atomic_write_file(stage.output_path, out.str());
  diagnostics << "convert: " << stats.convertible << "/" << stats.total
              << " examples convertible ("
              << format_fixed4(100.0 * stats.convertible_fraction())
              << "%), filtered " << stats.filtered << " -> "
              << stage.output_path << "\n";
  return stats;
}

void run_train(const TrainStage& stage, std::ostream& diagnostics) {
  const PhraseVocabulary vocab = load_vocabulary(stage.vocab_path);
  // Swap and sentinel settings travel in the tagged header; the index guess
  // is validated against the recorded label count.
  const std::vector<std::string> lines = read_lines(stage.tagged_path);
  if (lines.empty()) throw std::runtime_error(stage.tagged_path + ": empty file");
  const TaggedFileHeader header = parse_tagged_header(lines[0]);
  const TagLabelIndex index(vocab, header.swap_enabled);
  if (header.label_count != index.size()) {
    throw std::runtime_error(
        stage.tagged_path + ": version mismatch: tagged file was built over " +
        std::to_string(header.label_count) +
        " labels but the supplied vocabulary induces " +
        std::to_string(index.size()));
  }

  std::vector<LabeledExample> examples;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    TaggedRecord record = parse_tagged_record(lines[i], index, i + 1);
    if (!record.tags.convertible) continue;
    examples.emplace_back(tokenize(record.source), std::move(record.tags));
  }
  if (examples.empty()) {
    throw std::runtime_error(stage.tagged_path +
                             ": no convertible examples to train on");
  }

  TrainConfig config = stage.config;
  config.use_sentinel = header.use_sentinel;
  config.vocab_id = vocab.corpus_id();
  if (stage.model_kind == "perceptron") {
    const PerceptronModel model = PerceptronModel::train(examples, index, config);
    save_model(model, stage.output_path);
  } else if (stage.model_kind == "majority") {
    const MajorityModel model = MajorityModel::train(examples, index);
    save_model(model, stage.output_path);
  } else {
    throw std::invalid_argument("unknown model kind: " + stage.model_kind);
  }
  diagnostics << "train: " << stage.model_kind << " over " << examples.size()
              << " examples, " << index.size() << " labels -> "
              << stage.output_path << "\n";
}

void run_predict(const PredictStage& stage, std::ostream& diagnostics) {
  const std::unique_ptr<TaggerModel> model = load_model(stage.model_path);
  const std::vector<std::string> sources = read_lines(stage.sources_path);
  const TagLabelIndex& index = model->label_index();

  bool sentinel = false;
  if (const auto* perceptron = dynamic_cast<const PerceptronModel*>(model.get())) {
    sentinel = perceptron->use_sentinel();
  }
  TaggedFileHeader header{index.size(), index.swap_enabled(), sentinel};
  std::ostringstream out;
  out << format_tagged_header(header) << "\n";
  for (const std::string& source : sources) {
    if (source.empty()) continue;
    const TagSequence tags = model->predict(tokenize(source));
    out << format_tagged_record({source, "", tags}, index) << "\n";
  }
  atomic_write_file(stage.output_path, out.str());
  diagnostics << "predict: " << sources.size() << " sources -> "
              << stage.output_path << "\n";
}

void run_realize(const RealizeStage& stage, std::ostream& diagnostics) {
  const std::vector<std::string> sources = read_lines(stage.sources_path);
  const std::vector<std::string> lines = read_lines(stage.tags_path);
  if (lines.empty()) throw std::runtime_error(stage.tags_path + ": empty file");
  const PhraseVocabulary vocab = load_vocabulary(stage.vocab_path);
  const TaggedFileHeader header = parse_tagged_header(lines[0]);
  const TagLabelIndex index(vocab, header.swap_enabled);
  if (header.label_count != index.size()) {
    throw std::runtime_error(
        stage.tags_path + ": version mismatch: tag file was built over " +
        std::to_string(header.label_count) +
        " labels but the supplied vocabulary induces " +
        std::to_string(index.size()));
  }

  std::vector<TaggedRecord> records;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    records.push_back(parse_tagged_record(lines[i], index, i + 1));
  }
  std::vector<std::string> source_lines;
  for (const std::string& line : sources) {
    if (!line.empty()) source_lines.push_back(line);
  }
  if (source_lines.size() != records.size()) {
    throw std::runtime_error(
        "length mismatch: " + std::to_string(source_lines.size()) +
        " sources vs " + std::to_string(records.size()) + " tag records");
  }

  const Realizer realizer;
  std::ostringstream out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const TokenSequence source = tokenize(source_lines[i]);
    if (!records[i].tags.convertible) {
      // No tags to apply; the source passes through unchanged.
      out << detokenize(source) << "\n";
      continue;
    }
    if (records[i].tags.tags.size() != source.size()) {
      throw std::runtime_error(
          "length mismatch at record " + std::to_string(i + 1) + ": " +
          std::to_string(records[i].tags.tags.size()) + " tags vs " +
          std::to_string(source.size()) + " tokens");
    }
    out << detokenize(realizer.realize(source, records[i].tags)) << "\n";
  }
  atomic_write_file(stage.output_path, out.str());
  diagnostics << "realize: " << records.size() << " records -> "
              << stage.output_path << "\n";
}

MetricsReport run_eval(const EvalStage& stage, std::ostream& diagnostics) {
  const std::vector<std::string> sources = read_lines(stage.sources_path);
  const std::vector<std::string> predictions = read_lines(stage.predictions_path);
  if (sources.size() != predictions.size()) {
    throw std::runtime_error("length mismatch: " +
                             std::to_string(sources.size()) + " sources vs " +
                             std::to_string(predictions.size()) + " predictions");
  }
  std::vector<std::vector<std::string>> references;
  for (const std::string& path : stage.reference_paths) {
    references.push_back(read_lines(path));
    if (references.back().size() != sources.size()) {
      throw std::runtime_error("length mismatch: " + path + " holds " +
                               std::to_string(references.back().size()) +
                               " lines, expected " +
                               std::to_string(sources.size()));
    }
  }
  if (references.empty()) {
    throw std::runtime_error("eval needs at least one reference file");
  }

  std::vector<EvalInstance> instances;
  instances.reserve(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    EvalInstance instance;
    instance.source = sources[i];
    instance.prediction = predictions[i];
    for (const auto& reference_lines : references) {
      instance.references.push_back(reference_lines[i]);
    }
    instances.push_back(std::move(instance));
  }

  const MetricsReport report =
      evaluate(instances, stage.metrics, stage.corpus_id);
  if (!stage.text_output_path.empty()) {
    atomic_write_file(stage.text_output_path, report.to_text());
  }
  if (!stage.json_output_path.empty()) {
    atomic_write_file(stage.json_output_path, report.to_json());
  }
  diagnostics << "eval: " << instances.size() << " instances, "
              << report.values.size() << " metric values\n";
  return report;
}

void run_stats(const StatsStage& stage, std::ostream& diagnostics) {
  const ParallelCorpus corpus = read_tsv(stage.corpus_path, stage.kind);
  const CorpusOptions options{stage.swap_enabled, stage.use_sentinel};
  const std::vector<CoverageCurvePoint> curve =
      stats_report(corpus, stage.sweep, options);
  std::ostringstream out;
  out << "editkit-curve v1\n";
  for (const CoverageCurvePoint& point : curve) {
    out << point.budget << '\t' << format_fixed4(point.coverage) << "\n";
  }
  atomic_write_file(stage.output_path, out.str());
  diagnostics << "stats: " << curve.size() << " sweep points -> "
              << stage.output_path << "\n";
}

}  // namespace editkit::pipeline
