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

#include "editkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "editkit/align.hpp"
#include "editkit/io.hpp"

namespace editkit {
namespace {

void require_references(const std::vector<EvalInstance>& instances) {
  for (const EvalInstance& instance : instances) {
    if (instance.references.empty()) {
      throw std::invalid_argument("evaluation instance without references");
    }
  }
}

using NgramSet = std::set<std::string>;

NgramSet ngram_set(const TokenSequence& tokens, std::size_t n) {
  NgramSet out;
  if (tokens.size() < n) return out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (std::size_t j = 0; j < n; ++j) {
      if (j > 0) key += ' ';
      key += tokens[i + j].surface;
    }
    out.insert(std::move(key));
  }
  return out;
}

NgramSet set_minus(const NgramSet& a, const NgramSet& b) {
  NgramSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.begin()));
  return out;
}

NgramSet set_and(const NgramSet& a, const NgramSet& b) {
  NgramSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.begin()));
  return out;
}

// F1 of two operation n-gram sets; both empty counts as a perfect 1.
double set_f1(const NgramSet& predicted, const NgramSet& reference) {
  if (predicted.empty() && reference.empty()) return 1.0;
  const std::size_t inter = set_and(predicted, reference).size();
  const double p = predicted.empty() ? 0.0 : double(inter) / predicted.size();
  const double r = reference.empty() ? 0.0 : double(inter) / reference.size();
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

struct SariParts {
  double add = 0, keep = 0, del = 0;
  double mean() const { return (add + keep + del) / 3.0; }
};

SariParts sari_single_reference(const TokenSequence& source,
                                const TokenSequence& prediction,
                                const TokenSequence& reference) {
  SariParts parts;
  for (std::size_t n = 1; n <= 4; ++n) {
    const NgramSet src = ngram_set(source, n);
    const NgramSet pred = ngram_set(prediction, n);
    const NgramSet ref = ngram_set(reference, n);
    parts.add += set_f1(set_minus(pred, src), set_minus(ref, src));
    parts.keep += set_f1(set_and(pred, src), set_and(ref, src));
    parts.del += set_f1(set_minus(src, pred), set_minus(src, ref));
  }
  parts.add /= 4.0;
  parts.keep /= 4.0;
  parts.del /= 4.0;
  return parts;
}

std::map<std::string, std::size_t> ngram_counts(const TokenSequence& tokens,
                                                std::size_t n) {
  std::map<std::string, std::size_t> out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (std::size_t j = 0; j < n; ++j) {
      if (j > 0) key += ' ';
      key += tokens[i + j].surface;
    }
    ++out[std::move(key)];
  }
  return out;
}

std::size_t lcs_length(const TokenSequence& a, const TokenSequence& b) {
  return lcs(a, b).lcs_pairs.size();
}

}  // namespace

double exact_score(const std::vector<EvalInstance>& instances) {
  require_references(instances);
  if (instances.empty()) return 0.0;
  std::size_t matches = 0;
  for (const EvalInstance& instance : instances) {
    const TokenSequence prediction = tokenize(instance.prediction);
    for (const std::string& reference : instance.references) {
      if (prediction == tokenize(reference)) {
        ++matches;
        break;
      }
    }
  }
  return 100.0 * matches / instances.size();
}

SariScore sari(const std::vector<EvalInstance>& instances) {
  require_references(instances);
  if (instances.empty()) return {};
  SariScore total;
  for (const EvalInstance& instance : instances) {
    const TokenSequence source = tokenize(instance.source);
    const TokenSequence prediction = tokenize(instance.prediction);
    SariParts best;
    bool first = true;
    for (const std::string& reference : instance.references) {
      const SariParts parts =
          sari_single_reference(source, prediction, tokenize(reference));
      if (first || parts.mean() > best.mean()) best = parts;
      first = false;
    }
    total.add += best.add;
    total.keep += best.keep;
    total.del += best.del;
    total.sari += best.mean();
  }
  const double n = static_cast<double>(instances.size());
  return {100.0 * total.sari / n, 100.0 * total.add / n, 100.0 * total.keep / n,
          100.0 * total.del / n};
}

double bleu4(const std::vector<EvalInstance>& instances) {
  require_references(instances);
  if (instances.empty()) return 0.0;
  std::size_t matched[5] = {0, 0, 0, 0, 0};
  std::size_t candidate[5] = {0, 0, 0, 0, 0};
  std::size_t candidate_len = 0;
  std::size_t reference_len = 0;

  for (const EvalInstance& instance : instances) {
    const TokenSequence prediction = tokenize(instance.prediction);
    std::vector<TokenSequence> references;
    references.reserve(instance.references.size());
    for (const std::string& reference : instance.references) {
      references.push_back(tokenize(reference));
    }
    candidate_len += prediction.size();
    // Closest reference length; ties go to the shorter reference.
    std::size_t best_ref_len = references[0].size();
    for (const TokenSequence& reference : references) {
      const auto diff = [&](std::size_t len) {
        return len > prediction.size() ? len - prediction.size()
                                       : prediction.size() - len;
      };
      if (diff(reference.size()) < diff(best_ref_len) ||
          (diff(reference.size()) == diff(best_ref_len) &&
           reference.size() < best_ref_len)) {
        best_ref_len = reference.size();
      }
    }
    reference_len += best_ref_len;

    for (std::size_t n = 1; n <= 4; ++n) {
      const auto pred_counts = ngram_counts(prediction, n);
      std::map<std::string, std::size_t> max_ref_counts;
      for (const TokenSequence& reference : references) {
        for (const auto& [gram, count] : ngram_counts(reference, n)) {
          max_ref_counts[gram] = std::max(max_ref_counts[gram], count);
        }
      }
      for (const auto& [gram, count] : pred_counts) {
        candidate[n] += count;
        auto it = max_ref_counts.find(gram);
        if (it != max_ref_counts.end()) {
          matched[n] += std::min(count, it->second);
        }
      }
    }
  }

  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    // Modified precision with the denominator floored at 1.
    const double p =
        static_cast<double>(matched[n]) / std::max<std::size_t>(1, candidate[n]);
    if (p == 0.0) return 0.0;
    log_sum += 0.25 * std::log(p);
  }
  double brevity = 1.0;
  if (candidate_len < reference_len) {
    brevity = std::exp(1.0 - static_cast<double>(reference_len) /
                                 static_cast<double>(candidate_len));
  }
  return 100.0 * brevity * std::exp(log_sum);
}

RougeScore rouge_l(const std::vector<EvalInstance>& instances) {
  require_references(instances);
  if (instances.empty()) return {};
  RougeScore total;
  for (const EvalInstance& instance : instances) {
    const TokenSequence prediction = tokenize(instance.prediction);
    RougeScore best;
    bool first = true;
    for (const std::string& reference_text : instance.references) {
      const TokenSequence reference = tokenize(reference_text);
      RougeScore score;
      if (prediction.empty() && reference.empty()) {
        score = {1.0, 1.0, 1.0};
      } else {
        const std::size_t overlap = lcs_length(prediction, reference);
        score.recall = reference.empty() ? 0.0 : double(overlap) / reference.size();
        score.precision =
            prediction.empty() ? 0.0 : double(overlap) / prediction.size();
        score.f1 = (score.recall + score.precision) == 0.0
                       ? 0.0
                       : 2.0 * score.recall * score.precision /
                             (score.recall + score.precision);
      }
      if (first || score.f1 > best.f1) best = score;
      first = false;
    }
    total.recall += best.recall;
    total.precision += best.precision;
    total.f1 += best.f1;
  }
  const double n = static_cast<double>(instances.size());
  return {100.0 * total.recall / n, 100.0 * total.precision / n,
          100.0 * total.f1 / n};
}

std::vector<EditSpan> extract_edits(const TokenSequence& source,
                                    const TokenSequence& target) {
  const Alignment alignment = lcs(source, target);
  std::vector<EditSpan> edits;
  std::size_t prev_s = 0;
  std::size_t prev_t = 0;
  auto flush_gap = [&](std::size_t next_s, std::size_t next_t) {
    if (next_s > prev_s || next_t > prev_t) {
      EditSpan span;
      span.start = prev_s;
      span.end = next_s;
      for (std::size_t t = prev_t; t < next_t; ++t) {
        span.replacement.push_back(target[t].surface);
      }
      edits.push_back(std::move(span));
    }
  };
  for (const auto& [si, ti] : alignment.lcs_pairs) {
    flush_gap(si, ti);
    prev_s = si + 1;
    prev_t = ti + 1;
  }
  flush_gap(source.size(), target.size());
  return edits;
}

GecScore gec_scores(const std::vector<EvalInstance>& instances) {
  require_references(instances);
  std::size_t true_positives = 0;
  std::size_t predicted_total = 0;
  std::size_t reference_total = 0;

  for (const EvalInstance& instance : instances) {
    const TokenSequence source = tokenize(instance.source);
    const std::vector<EditSpan> predicted =
        extract_edits(source, tokenize(instance.prediction));

    // Best-matching reference: most true positives, then fewest edits.
    std::size_t best_tp = 0;
    std::size_t best_ref_edits = 0;
    bool first = true;
    for (const std::string& reference_text : instance.references) {
      const std::vector<EditSpan> reference =
          extract_edits(source, tokenize(reference_text));
      std::size_t tp = 0;
      for (const EditSpan& edit : predicted) {
        if (std::find(reference.begin(), reference.end(), edit) !=
            reference.end()) {
          ++tp;
        }
      }
      if (first || tp > best_tp ||
          (tp == best_tp && reference.size() < best_ref_edits)) {
        best_tp = tp;
        best_ref_edits = reference.size();
      }
      first = false;
    }
    true_positives += best_tp;
    predicted_total += predicted.size();
    reference_total += best_ref_edits;
  }

  GecScore score;
  score.precision = predicted_total == 0
                        ? 1.0
                        : double(true_positives) / predicted_total;
  if (reference_total == 0) {
    score.recall = predicted_total == 0 ? 1.0 : 0.0;
  } else {
    score.recall = double(true_positives) / reference_total;
  }
  const double denom = 0.25 * score.precision + score.recall;
  score.f_half = denom == 0.0 ? 0.0 : 1.25 * score.precision * score.recall / denom;
  return score;
}

std::string MetricsReport::to_text() const {
  std::ostringstream out;
  out << "editkit-report v1\n";
  out << "corpus " << corpus_id << "\n";
  for (const auto& [name, value] : values) {
    out << name << " " << format_fixed4(value) << "\n";
  }
  return out.str();
}

std::string MetricsReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["version"] = "editkit-report v1";
  doc["corpus"] = corpus_id;
  nlohmann::ordered_json metrics;
  for (const auto& [name, value] : values) {
    metrics[name] = std::round(value * 1e4) / 1e4;
  }
  doc["metrics"] = metrics;
  return doc.dump(2) + "\n";
}

MetricsReport evaluate(const std::vector<EvalInstance>& instances,
                       const std::vector<std::string>& metric_names,
                       std::string corpus_id) {
  MetricsReport report;
  report.corpus_id = std::move(corpus_id);
  for (const std::string& name : metric_names) {
    if (name == "exact") {
      report.values.emplace_back("exact", exact_score(instances));
    } else if (name == "sari") {
      const SariScore score = sari(instances);
      report.values.emplace_back("sari", score.sari);
      report.values.emplace_back("sari_add", score.add);
      report.values.emplace_back("sari_keep", score.keep);
      report.values.emplace_back("sari_delete", score.del);
    } else if (name == "bleu") {
      report.values.emplace_back("bleu4", bleu4(instances));
    } else if (name == "rouge") {
      const RougeScore score = rouge_l(instances);
      report.values.emplace_back("rouge_l_recall", score.recall);
      report.values.emplace_back("rouge_l_precision", score.precision);
      report.values.emplace_back("rouge_l_f1", score.f1);
    } else if (name == "gec") {
      const GecScore score = gec_scores(instances);
      report.values.emplace_back("gec_precision", score.precision);
      report.values.emplace_back("gec_recall", score.recall);
      report.values.emplace_back("gec_f05", score.f_half);
    } else {
      throw std::invalid_argument("unknown metric: " + name);
    }
  }
  return report;
}

}  // namespace editkit
