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

#include "editkit/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "editkit/io.hpp"

namespace editkit {
namespace {

std::string word_shape(const std::string& word) {
  std::string shape;
  shape.reserve(word.size());
  for (char c : word) {
    const unsigned char u = static_cast<unsigned char>(c);
    if (std::isupper(u)) {
      shape += 'X';
    } else if (std::islower(u)) {
      shape += 'x';
    } else if (std::isdigit(u)) {
      shape += '9';
    } else {
      shape += c;
    }
  }
  return shape;
}

std::string neighbor(const TokenSequence& tokens, std::size_t position,
                     long offset) {
  const long index = static_cast<long>(position) + offset;
  if (index < 0) return "<s>";
  if (index >= static_cast<long>(tokens.size())) return "</s>";
  return ascii_lower(tokens[static_cast<std::size_t>(index)].surface);
}

// Labels a position may take: SWAP only at the eligible position, and the
// virtual end position (sentinel mode) only KEEP-based labels.
struct LabelMask {
  const TagLabelIndex* index;
  std::optional<std::size_t> swap_position;
  std::size_t token_count;

  bool allowed(std::size_t label, std::size_t position) const {
    const EditTag& tag = index->label(label);
    if (position >= token_count) return tag.base == BaseTag::kKeep;
    if (tag.base == BaseTag::kSwap) {
      return swap_position && position == *swap_position;
    }
    return true;
  }
};

struct WeightCell {
  double weight = 0;
  double accumulated = 0;
  std::uint64_t last_step = 0;
};

using TrainWeights =
    std::unordered_map<std::string, std::unordered_map<std::size_t, WeightCell>>;

void apply_update(TrainWeights& weights, const std::string& feature,
                  std::size_t label, double delta, std::uint64_t step) {
  WeightCell& cell = weights[feature][label];
  cell.accumulated += cell.weight * static_cast<double>(step - cell.last_step);
  cell.weight += delta;
  cell.last_step = step;
}

template <typename Weights>
std::vector<double> score_labels(const Weights& weights,
                                 const std::vector<std::string>& features,
                                 std::size_t label_count) {
  std::vector<double> scores(label_count, 0.0);
  for (const std::string& feature : features) {
    auto it = weights.find(feature);
    if (it == weights.end()) continue;
    for (const auto& [label, value] : it->second) {
      if constexpr (std::is_same_v<std::decay_t<decltype(value)>, WeightCell>) {
        scores[label] += value.weight;
      } else {
        scores[label] += value;
      }
    }
  }
  return scores;
}

std::size_t argmax_allowed(const std::vector<double>& scores,
                           const LabelMask& mask, std::size_t position) {
  std::size_t best = 0;
  double best_score = 0.0;
  bool found = false;
  for (std::size_t label = 0; label < scores.size(); ++label) {
    if (!mask.allowed(label, position)) continue;
    if (!found || scores[label] > best_score) {
      best = label;
      best_score = scores[label];
      found = true;
    }
  }
  return best;
}

// Gold label ids of one example, extended with the bare-KEEP end label in
// sentinel mode.
std::vector<std::size_t> gold_ids(const LabeledExample& example,
                                  const TagLabelIndex& index,
                                  bool use_sentinel) {
  if (!example.second.convertible) {
    throw std::invalid_argument("training example is not convertible");
  }
  if (example.second.tags.size() != example.first.size()) {
    throw std::invalid_argument(
        "training example tag count does not match token count");
  }
  if (example.second.trailing_insertion && !use_sentinel) {
    throw std::invalid_argument(
        "training example carries a trailing insertion but sentinel mode is off");
  }
  std::vector<std::size_t> ids = tags_to_label_ids(example.second, index);
  if (use_sentinel && ids.size() == example.first.size()) {
    ids.push_back(0);  // bare KEEP
  }
  return ids;
}

// Deterministic Fisher-Yates; std::shuffle is implementation-defined.
void shuffle_order(std::vector<std::size_t>& order, std::mt19937_64& rng) {
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
}

std::string expect_line(const std::vector<std::string>& lines,
                        std::size_t index, const std::string& what) {
  if (index >= lines.size()) {
    throw std::runtime_error("model file truncated: missing " + what);
  }
  return lines[index];
}

std::string keyed_value(const std::string& line, const std::string& key) {
  if (line.rfind(key + " ", 0) != 0) {
    throw std::runtime_error("model file: expected '" + key + " ...', got '" +
                             line + "'");
  }
  return line.substr(key.size() + 1);
}

double parse_double_exact(const std::string& text) {
  double value = 0;
  auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw std::runtime_error("model file: bad weight '" + text + "'");
  }
  return value;
}

Phrase parse_phrase_line(const std::string& line) {
  Phrase phrase;
  for (const std::string& word : split_on(line, ' ')) {
    if (!word.empty()) phrase.push_back({word});
  }
  return phrase;
}

struct IndexHeader {
  TagLabelIndex index;
  std::size_t next_line = 0;
};

IndexHeader parse_label_section(const std::vector<std::string>& lines,
                                std::size_t at) {
  std::istringstream header(expect_line(lines, at, "labels header"));
  std::string tag, swap_word;
  std::size_t phrase_count = 0;
  int swap_flag = 0;
  if (!(header >> tag >> phrase_count >> swap_word >> swap_flag) ||
      tag != "labels" || swap_word != "swap") {
    throw std::runtime_error("model file: bad labels header: " + lines[at]);
  }
  std::vector<Phrase> phrases;
  phrases.reserve(phrase_count);
  for (std::size_t i = 0; i < phrase_count; ++i) {
    phrases.push_back(
        parse_phrase_line(expect_line(lines, at + 1 + i, "phrase line")));
  }
  IndexHeader out;
  out.index = TagLabelIndex(PhraseVocabulary(std::move(phrases)), swap_flag != 0);
  out.next_line = at + 1 + phrase_count;
  return out;
}

void write_label_section(const TagLabelIndex& index, std::ostream& out) {
  out << "labels " << index.phrases().size() << " swap "
      << (index.swap_enabled() ? 1 : 0) << "\n";
  for (const Phrase& phrase : index.phrases()) {
    out << phrase_key(phrase) << "\n";
  }
}

}  // namespace

std::string to_string(DecodeMode mode) {
  return mode == DecodeMode::kAutoregressive ? "ar" : "ff";
}

DecodeMode decode_mode_from_string(const std::string& name) {
  if (name == "ar") return DecodeMode::kAutoregressive;
  if (name == "ff") return DecodeMode::kFeedforward;
  throw std::invalid_argument("unknown decode mode: " + name);
}

std::vector<std::string> extract_features(const TokenSequence& tokens,
                                          std::size_t position,
                                          long previous_label,
                                          DecodeMode mode) {
  const std::string& surface = tokens[position].surface;
  const std::string lower = ascii_lower(surface);
  std::vector<std::string> features;
  features.reserve(16);
  features.push_back("w=" + lower);
  features.push_back("shape=" + word_shape(surface));
  for (std::size_t k = 1; k <= 3 && k <= lower.size(); ++k) {
    features.push_back("pre" + std::to_string(k) + "=" + lower.substr(0, k));
    features.push_back("suf" + std::to_string(k) + "=" +
                       lower.substr(lower.size() - k));
  }
  features.push_back("w-1=" + neighbor(tokens, position, -1));
  features.push_back("w-2=" + neighbor(tokens, position, -2));
  features.push_back("w+1=" + neighbor(tokens, position, 1));
  features.push_back("w+2=" + neighbor(tokens, position, 2));
  if (position == 0) {
    features.push_back("pos=first");
  } else if (position + 1 == tokens.size()) {
    features.push_back("pos=last");
  } else {
    features.push_back("pos=interior");
  }
  std::size_t sentence = 0;
  for (std::size_t i = 0; i < position && i < tokens.size(); ++i) {
    if (tokens[i].sentence_final()) ++sentence;
  }
  features.push_back("sent=" + std::to_string(sentence));
  if (mode == DecodeMode::kAutoregressive) {
    features.push_back("prev=" + (previous_label < 0
                                      ? std::string("<bos>")
                                      : std::to_string(previous_label)));
  }
  return features;
}

PerceptronModel PerceptronModel::train(
    const std::vector<LabeledExample>& examples, const TagLabelIndex& index,
    const TrainConfig& config) {
  if (examples.empty()) {
    throw std::invalid_argument("perceptron training needs at least one example");
  }

  struct Prepared {
    TokenSequence tokens;                 // sentinel-extended in sentinel mode
    std::vector<std::size_t> gold;
    std::optional<std::size_t> swap_position;
    std::size_t token_count = 0;
  };
  std::vector<Prepared> prepared;
  prepared.reserve(examples.size());
  for (const LabeledExample& example : examples) {
    Prepared p;
    p.token_count = example.first.size();
    p.gold = gold_ids(example, index, config.use_sentinel);
    p.tokens = example.first;
    if (config.use_sentinel) p.tokens.push_back(end_sentinel());
    p.swap_position = swap_eligible_position(example.first);
    prepared.push_back(std::move(p));
  }

  TrainWeights weights;
  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(prepared.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  std::uint64_t step = 1;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    if (config.shuffle) shuffle_order(order, rng);
    for (const std::size_t example_index : order) {
      const Prepared& p = prepared[example_index];
      const LabelMask mask{&index, p.swap_position, p.token_count};
      long previous = -1;
      for (std::size_t pos = 0; pos < p.gold.size(); ++pos) {
        const std::vector<std::string> features =
            extract_features(p.tokens, pos, previous, config.mode);
        const std::vector<double> scores =
            score_labels(weights, features, index.size());
        const std::size_t predicted = argmax_allowed(scores, mask, pos);
        const std::size_t gold = p.gold[pos];
        if (predicted != gold) {
          for (const std::string& feature : features) {
            apply_update(weights, feature, gold, 1.0, step);
            apply_update(weights, feature, predicted, -1.0, step);
          }
        }
        // Decoding conditions on the predicted history, matching inference.
        previous = static_cast<long>(predicted);
        ++step;
      }
    }
  }

  PerceptronModel model;
  model.index_ = index;
  model.mode_ = config.mode;
  model.use_sentinel_ = config.use_sentinel;
  model.epochs_ = config.epochs;
  model.seed_ = config.seed;
  model.vocab_id_ = config.vocab_id;
  const double total_steps = static_cast<double>(step);
  for (auto& [feature, labels] : weights) {
    for (auto& [label, cell] : labels) {
      cell.accumulated +=
          cell.weight * static_cast<double>(step - cell.last_step);
      const double averaged = cell.accumulated / total_steps;
      if (averaged != 0.0) model.weights_[feature][label] = averaged;
    }
  }
  return model;
}

TagSequence PerceptronModel::predict(const TokenSequence& source) const {
  TokenSequence tokens = source;
  if (use_sentinel_) tokens.push_back(end_sentinel());
  const LabelMask mask{&index_, swap_eligible_position(source), source.size()};

  std::vector<std::size_t> ids(tokens.size());
  long previous = -1;
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    const std::vector<std::string> features =
        extract_features(tokens, pos, previous, mode_);
    const std::vector<double> scores =
        score_labels(weights_, features, index_.size());
    ids[pos] = argmax_allowed(scores, mask, pos);
    previous = static_cast<long>(ids[pos]);
  }

  TagSequence out;
  out.convertible = true;
  for (std::size_t i = 0; i < source.size(); ++i) {
    out.tags.push_back(index_.label(ids[i]));
  }
  if (use_sentinel_) {
    const EditTag& end_tag = index_.label(ids.back());
    if (end_tag.added_phrase) out.trailing_insertion = end_tag.added_phrase;
  }
  return out;
}

void PerceptronModel::write(std::ostream& out) const {
  out << "editkit-model v1 perceptron\n";
  out << "mode " << to_string(mode_) << "\n";
  out << "sentinel " << (use_sentinel_ ? 1 : 0) << "\n";
  out << "epochs " << epochs_ << "\n";
  out << "seed " << seed_ << "\n";
  out << "vocab " << (vocab_id_.empty() ? "-" : vocab_id_) << "\n";
  write_label_section(index_, out);
  std::size_t count = 0;
  for (const auto& [feature, labels] : weights_) count += labels.size();
  out << "weights " << count << "\n";
  for (const auto& [feature, labels] : weights_) {
    for (const auto& [label, weight] : labels) {
      out << feature << '\t' << label << '\t' << format_double(weight) << "\n";
    }
  }
  out << "end\n";
}

MajorityModel MajorityModel::train(const std::vector<LabeledExample>& examples,
                                   const TagLabelIndex& index) {
  if (examples.empty()) {
    throw std::invalid_argument("majority training needs at least one example");
  }
  std::map<std::string, std::map<std::size_t, std::size_t>> counts;
  std::map<std::size_t, std::size_t> global_counts;
  for (const LabeledExample& example : examples) {
    const std::vector<std::size_t> ids = gold_ids(example, index, false);
    for (std::size_t i = 0; i < example.first.size(); ++i) {
      ++counts[example.first[i].surface][ids[i]];
      ++global_counts[ids[i]];
    }
  }
  auto majority = [](const std::map<std::size_t, std::size_t>& histogram) {
    std::size_t best = 0, best_count = 0;
    for (const auto& [label, count] : histogram) {
      if (count > best_count) {
        best = label;
        best_count = count;
      }
    }
    return best;
  };
  MajorityModel model;
  model.index_ = index;
  for (const auto& [token, histogram] : counts) {
    model.token_label_[token] = majority(histogram);
  }
  model.global_label_ = majority(global_counts);
  return model;
}

TagSequence MajorityModel::predict(const TokenSequence& source) const {
  const LabelMask mask{&index_, swap_eligible_position(source), source.size()};
  TagSequence out;
  out.convertible = true;
  for (std::size_t pos = 0; pos < source.size(); ++pos) {
    auto it = token_label_.find(source[pos].surface);
    std::size_t label = it == token_label_.end() ? global_label_ : it->second;
    if (!mask.allowed(label, pos)) {
      label = mask.allowed(global_label_, pos) ? global_label_ : 0;
    }
    out.tags.push_back(index_.label(label));
  }
  return out;
}

void MajorityModel::write(std::ostream& out) const {
  out << "editkit-model v1 majority\n";
  write_label_section(index_, out);
  out << "tokens " << token_label_.size() << "\n";
  for (const auto& [token, label] : token_label_) {
    out << token << '\t' << label << "\n";
  }
  out << "global " << global_label_ << "\n";
  out << "end\n";
}

void save_model(const TaggerModel& model, const std::string& path) {
  std::ostringstream out;
  model.write(out);
  atomic_write_file(path, out.str());
}

std::unique_ptr<TaggerModel> read_model(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  const std::string header = expect_line(lines, 0, "header");
  if (header == "editkit-model v1 perceptron") {
    auto model = std::unique_ptr<PerceptronModel>(new PerceptronModel());
    model->mode_ = decode_mode_from_string(keyed_value(lines.at(1), "mode"));
    model->use_sentinel_ = keyed_value(lines.at(2), "sentinel") == "1";
    model->epochs_ = std::stoi(keyed_value(lines.at(3), "epochs"));
    model->seed_ = std::stoull(keyed_value(lines.at(4), "seed"));
    const std::string vocab_id = keyed_value(lines.at(5), "vocab");
    model->vocab_id_ = vocab_id == "-" ? "" : vocab_id;
    IndexHeader section = parse_label_section(lines, 6);
    model->index_ = std::move(section.index);
    std::size_t cursor = section.next_line;
    const std::size_t weight_count =
        std::stoul(keyed_value(expect_line(lines, cursor, "weights"), "weights"));
    ++cursor;
    for (std::size_t i = 0; i < weight_count; ++i, ++cursor) {
      const std::vector<std::string> fields =
          split_on(expect_line(lines, cursor, "weight line"), '\t');
      if (fields.size() != 3) {
        throw std::runtime_error("model file: bad weight line: " + lines[cursor]);
      }
      model->weights_[fields[0]][std::stoul(fields[1])] =
          parse_double_exact(fields[2]);
    }
    if (expect_line(lines, cursor, "end") != "end") {
      throw std::runtime_error("model file: missing end marker");
    }
    return model;
  }
  if (header == "editkit-model v1 majority") {
    auto model = std::unique_ptr<MajorityModel>(new MajorityModel());
    IndexHeader section = parse_label_section(lines, 1);
    model->index_ = std::move(section.index);
    std::size_t cursor = section.next_line;
    const std::size_t token_count =
        std::stoul(keyed_value(expect_line(lines, cursor, "tokens"), "tokens"));
    ++cursor;
    for (std::size_t i = 0; i < token_count; ++i, ++cursor) {
      const std::vector<std::string> fields =
          split_on(expect_line(lines, cursor, "token line"), '\t');
      if (fields.size() != 2) {
        throw std::runtime_error("model file: bad token line: " + lines[cursor]);
      }
      model->token_label_[fields[0]] = std::stoul(fields[1]);
    }
    model->global_label_ =
        std::stoul(keyed_value(expect_line(lines, cursor, "global"), "global"));
    if (expect_line(lines, cursor + 1, "end") != "end") {
      throw std::runtime_error("model file: missing end marker");
    }
    return model;
  }
  throw std::runtime_error("unrecognized model header: " + header);
}

std::unique_ptr<TaggerModel> load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open for reading");
  return read_model(in);
}

}  // namespace editkit
