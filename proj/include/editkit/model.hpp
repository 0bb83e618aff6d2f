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

#ifndef EDITKIT_MODEL_HPP_
#define EDITKIT_MODEL_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "editkit/tags.hpp"
#include "editkit/text.hpp"

namespace editkit {

// Autoregressive decoding conditions each position on the previously
// predicted label; feedforward predicts every position independently.
enum class DecodeMode { kFeedforward, kAutoregressive };

std::string to_string(DecodeMode mode);
DecodeMode decode_mode_from_string(const std::string& name);

struct TrainConfig {
  int epochs = 20;
  std::uint64_t seed = 1;
  bool shuffle = true;
  DecodeMode mode = DecodeMode::kAutoregressive;
  // Predict one extra label past the last token, carrying a trailing
  // insertion. Must match how the training data was converted.
  bool use_sentinel = false;
  // Recorded as model metadata.
  std::string vocab_id;
};

using LabeledExample = std::pair<TokenSequence, TagSequence>;

// Sparse indicator features of one position: token identity and shape,
// short prefixes/suffixes, neighbors at offsets 1 and 2, position bucket,
// sentence index, and (autoregressive only) the previous predicted label.
std::vector<std::string> extract_features(const TokenSequence& tokens,
                                          std::size_t position,
                                          long previous_label,
                                          DecodeMode mode);

class TaggerModel {
 public:
  virtual ~TaggerModel() = default;

  // Greedy left-to-right decoding; always one tag per source token, SWAP
  // masked away from ineligible positions.
  virtual TagSequence predict(const TokenSequence& source) const = 0;

  virtual const TagLabelIndex& label_index() const = 0;
  virtual std::string kind() const = 0;
  virtual void write(std::ostream& out) const = 0;
};

// Multiclass averaged perceptron over the tag-label index.
class PerceptronModel final : public TaggerModel {
 public:
  // Throws on an empty training set or on a non-convertible or
  // length-mismatched example. Deterministic for a fixed config.
  static PerceptronModel train(const std::vector<LabeledExample>& examples,
                               const TagLabelIndex& index,
                               const TrainConfig& config);

  TagSequence predict(const TokenSequence& source) const override;
  const TagLabelIndex& label_index() const override { return index_; }
  std::string kind() const override { return "perceptron"; }
  void write(std::ostream& out) const override;

  DecodeMode mode() const { return mode_; }
  bool use_sentinel() const { return use_sentinel_; }

 private:
  friend std::unique_ptr<TaggerModel> read_model(std::istream&);
  PerceptronModel() = default;

  TagLabelIndex index_;
  DecodeMode mode_ = DecodeMode::kAutoregressive;
  bool use_sentinel_ = false;
  int epochs_ = 0;
  std::uint64_t seed_ = 0;
  std::string vocab_id_;
  // feature -> label id -> averaged weight; ordered so persistence is stable.
  std::map<std::string, std::map<std::size_t, double>> weights_;
};

// Sanity floor: each token's most frequent training label, with a global
// majority fallback for unseen tokens.
class MajorityModel final : public TaggerModel {
 public:
  static MajorityModel train(const std::vector<LabeledExample>& examples,
                             const TagLabelIndex& index);

  TagSequence predict(const TokenSequence& source) const override;
  const TagLabelIndex& label_index() const override { return index_; }
  std::string kind() const override { return "majority"; }
  void write(std::ostream& out) const override;

 private:
  friend std::unique_ptr<TaggerModel> read_model(std::istream&);
  MajorityModel() = default;

  TagLabelIndex index_;
  std::map<std::string, std::size_t> token_label_;
  std::size_t global_label_ = 0;
};

// Versioned text persistence ("editkit-model v1 <kind>"). Weights are stored
// as sorted (feature, label, weight) triples whose decimal form parses back
// to the identical double, so predictions are byte-stable across reloads.
void save_model(const TaggerModel& model, const std::string& path);
std::unique_ptr<TaggerModel> read_model(std::istream& in);
std::unique_ptr<TaggerModel> load_model(const std::string& path);

}  // namespace editkit

#endif  // EDITKIT_MODEL_HPP_
