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

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "editkit/io.hpp"
#include "editkit/pipeline.hpp"

namespace {

using editkit::pipeline::ConvertStage;
using editkit::pipeline::EvalStage;
using editkit::pipeline::PredictStage;
using editkit::pipeline::RealizeStage;
using editkit::pipeline::StatsStage;
using editkit::pipeline::TrainStage;
using editkit::pipeline::VocabStage;

// Flat key=value config files; command-line flags win, then environment,
// then the config file.
void attach_config(CLI::App* cmd) {
  cmd->set_config("--config", "", "Flat key=value config file");
  cmd->allow_config_extras(false);
}

std::vector<std::string> parse_metric_list(const std::string& csv) {
  std::vector<std::string> metrics;
  for (const std::string& name : editkit::split_on(csv, ',')) {
    if (!name.empty()) metrics.push_back(name);
  }
  return metrics;
}

std::vector<std::size_t> parse_sweep(const std::string& csv) {
  std::vector<std::size_t> sweep;
  for (const std::string& piece : editkit::split_on(csv, ',')) {
    if (!piece.empty()) sweep.push_back(std::stoul(piece));
  }
  return sweep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"editkit — text editing as sequence tagging"};
  app.require_subcommand(1);

  // vocab
  VocabStage vocab_stage;
  std::string vocab_kind = "generic";
  std::string vocab_split = "train";
  auto* vocab_cmd =
      app.add_subcommand("vocab", "Build a phrase vocabulary from a corpus");
  attach_config(vocab_cmd);
  vocab_cmd->add_option("--input", vocab_stage.corpus_path, "Corpus TSV")
      ->required();
  vocab_cmd->add_option("--output", vocab_stage.output_path, "Vocabulary file")
      ->required();
  vocab_cmd->add_option("--kind", vocab_kind,
                        "fusion|split|summarization|gec|generic");
  vocab_cmd->add_option("--vocab-size", vocab_stage.vocab_size,
                        "Phrase budget");
  vocab_cmd->add_option("--method", vocab_stage.method, "frequency|greedy");
  vocab_cmd->add_option("--vocab-split", vocab_split,
                        "train|validation|test|all");
  vocab_cmd->add_flag("--sentinel", vocab_stage.use_sentinel,
                      "End-sentinel conversion mode");
  vocab_cmd->add_flag("--swap,!--no-swap", vocab_stage.swap_enabled,
                      "Enable the SWAP tag for fusion corpora");

  // convert
  ConvertStage convert_stage;
  std::string convert_kind = "generic";
  auto* convert_cmd =
      app.add_subcommand("convert", "Convert targets into tag sequences");
  attach_config(convert_cmd);
  convert_cmd->add_option("--input", convert_stage.corpus_path, "Corpus TSV")
      ->required();
  convert_cmd->add_option("--vocab", convert_stage.vocab_path, "Vocabulary file")
      ->required();
  convert_cmd->add_option("--output", convert_stage.output_path, "Tagged file")
      ->required();
  convert_cmd->add_option("--kind", convert_kind,
                          "fusion|split|summarization|gec|generic");
  convert_cmd->add_flag("--sentinel", convert_stage.use_sentinel,
                        "End-sentinel conversion mode");
  convert_cmd->add_flag("--swap,!--no-swap", convert_stage.swap_enabled,
                        "Enable the SWAP tag for fusion corpora");

  // train
  TrainStage train_stage;
  std::string train_mode = "ar";
  auto* train_cmd = app.add_subcommand("train", "Train a tagger");
  attach_config(train_cmd);
  train_cmd->add_option("--input", train_stage.tagged_path, "Tagged file")
      ->required();
  train_cmd->add_option("--vocab", train_stage.vocab_path, "Vocabulary file")
      ->required();
  train_cmd->add_option("--output", train_stage.output_path, "Model file")
      ->required();
  train_cmd->add_option("--model", train_stage.model_kind,
                        "perceptron|majority");
  train_cmd->add_option("--epochs", train_stage.config.epochs, "Epochs");
  train_cmd->add_option("--seed", train_stage.config.seed, "Shuffle seed")
      ->envname("EDITKIT_SEED");
  train_cmd->add_option("--mode", train_mode, "ff|ar");
  train_cmd->add_flag("--shuffle,!--no-shuffle", train_stage.config.shuffle,
                      "Shuffle per epoch");

  // predict
  PredictStage predict_stage;
  auto* predict_cmd = app.add_subcommand("predict", "Tag source texts");
  attach_config(predict_cmd);
  predict_cmd->add_option("--model", predict_stage.model_path, "Model file")
      ->required();
  predict_cmd->add_option("--input", predict_stage.sources_path,
                          "Source texts, one per line")
      ->required();
  predict_cmd->add_option("--output", predict_stage.output_path, "Tag file")
      ->required();

  // realize
  RealizeStage realize_stage;
  auto* realize_cmd =
      app.add_subcommand("realize", "Turn tag sequences into texts");
  attach_config(realize_cmd);
  realize_cmd->add_option("--input", realize_stage.sources_path,
                          "Source texts, one per line")
      ->required();
  realize_cmd->add_option("--tags", realize_stage.tags_path, "Tag file")
      ->required();
  realize_cmd->add_option("--vocab", realize_stage.vocab_path, "Vocabulary file")
      ->required();
  realize_cmd->add_option("--output", realize_stage.output_path,
                          "Realized texts")
      ->required();

  // eval
  EvalStage eval_stage;
  std::string eval_metrics = "exact,sari,bleu,rouge";
  auto* eval_cmd = app.add_subcommand("eval", "Score predictions");
  attach_config(eval_cmd);
  eval_cmd->add_option("--sources", eval_stage.sources_path, "Source texts")
      ->required();
  eval_cmd->add_option("--predictions", eval_stage.predictions_path,
                       "Predicted texts")
      ->required();
  eval_cmd
      ->add_option("--references", eval_stage.reference_paths,
                   "Reference files (repeatable)")
      ->required();
  eval_cmd->add_option("--metrics", eval_metrics,
                       "Comma list of exact,sari,bleu,rouge,gec");
  eval_cmd->add_option("--output", eval_stage.json_output_path,
                       "Structured report (JSON)");
  eval_cmd->add_option("--text-output", eval_stage.text_output_path,
                       "Key-value report");
  eval_cmd->add_option("--corpus-id", eval_stage.corpus_id, "Report corpus id");

  // stats
  StatsStage stats_stage;
  std::string stats_kind = "generic";
  std::string stats_sweep = "0,1,2,5,10,20,50,100,500";
  auto* stats_cmd =
      app.add_subcommand("stats", "Coverage curve over vocabulary budgets");
  attach_config(stats_cmd);
  stats_cmd->add_option("--input", stats_stage.corpus_path, "Corpus TSV")
      ->required();
  stats_cmd->add_option("--output", stats_stage.output_path, "Curve file")
      ->required();
  stats_cmd->add_option("--kind", stats_kind,
                        "fusion|split|summarization|gec|generic");
  stats_cmd->add_option("--sweep", stats_sweep, "Comma list of budgets");
  stats_cmd->add_flag("--sentinel", stats_stage.use_sentinel,
                      "End-sentinel conversion mode");
  stats_cmd->add_flag("--swap,!--no-swap", stats_stage.swap_enabled,
                      "Enable the SWAP tag for fusion corpora");

  CLI11_PARSE(app, argc, argv);

  try {
    if (vocab_cmd->parsed()) {
      vocab_stage.kind = editkit::task_kind_from_string(vocab_kind);
      if (vocab_split == "all") {
        vocab_stage.vocab_split = std::nullopt;
      } else if (auto split = editkit::split_from_string(vocab_split)) {
        vocab_stage.vocab_split = *split;
      } else {
        throw std::invalid_argument("unknown split: " + vocab_split);
      }
      editkit::pipeline::run_vocab(vocab_stage, std::cerr);
    } else if (convert_cmd->parsed()) {
      convert_stage.kind = editkit::task_kind_from_string(convert_kind);
      editkit::pipeline::run_convert(convert_stage, std::cerr);
    } else if (train_cmd->parsed()) {
      train_stage.config.mode = editkit::decode_mode_from_string(train_mode);
      editkit::pipeline::run_train(train_stage, std::cerr);
    } else if (predict_cmd->parsed()) {
      editkit::pipeline::run_predict(predict_stage, std::cerr);
    } else if (realize_cmd->parsed()) {
      editkit::pipeline::run_realize(realize_stage, std::cerr);
    } else if (eval_cmd->parsed()) {
      eval_stage.metrics = parse_metric_list(eval_metrics);
      editkit::pipeline::run_eval(eval_stage, std::cerr);
    } else if (stats_cmd->parsed()) {
      stats_stage.kind = editkit::task_kind_from_string(stats_kind);
      stats_stage.sweep = parse_sweep(stats_sweep);
      editkit::pipeline::run_stats(stats_stage, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "editkit: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
