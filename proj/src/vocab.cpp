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

#include "editkit/vocab.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "editkit/io.hpp"

namespace editkit {
namespace {

// Phrase-set membership counts: a phrase occurring twice in one example still
// counts once.
std::map<Phrase, std::size_t> phrase_frequencies(
    const std::vector<PhraseSet>& phrase_sets) {
  std::map<Phrase, std::size_t> freq;
  for (const PhraseSet& set : phrase_sets) {
    for (const Phrase& phrase : set.phrases) ++freq[phrase];
  }
  return freq;
}

// Candidate pool ordered by decreasing frequency, lexicographic among ties.
std::vector<std::pair<Phrase, std::size_t>> ranked_pool(
    const std::vector<PhraseSet>& phrase_sets) {
  auto freq = phrase_frequencies(phrase_sets);
  std::vector<std::pair<Phrase, std::size_t>> pool(freq.begin(), freq.end());
  std::stable_sort(pool.begin(), pool.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return pool;
}

bool subset_of(const PhraseSet& set, const std::set<Phrase>& chosen) {
  for (const Phrase& phrase : set.phrases) {
    if (!chosen.count(phrase)) return false;
  }
  return true;
}

}  // namespace

void PhraseTrie::insert(const Phrase& phrase) {
  NodeId node = kRoot;
  for (const Token& token : phrase) {
    auto it = nodes_[node].next.find(token.surface);
    if (it == nodes_[node].next.end()) {
      nodes_.push_back(Node{});
      it = nodes_[node].next.emplace(token.surface, nodes_.size() - 1).first;
    }
    node = it->second;
  }
  nodes_[node].terminal = true;
}

std::optional<PhraseTrie::NodeId> PhraseTrie::advance(NodeId node,
                                                      const Token& token) const {
  auto it = nodes_[node].next.find(token.surface);
  if (it == nodes_[node].next.end()) return std::nullopt;
  return it->second;
}

PhraseVocabulary::PhraseVocabulary(std::vector<Phrase> phrases,
                                   std::string corpus_id)
    : phrases_(std::move(phrases)), corpus_id_(std::move(corpus_id)) {
  for (const Phrase& phrase : phrases_) {
    if (phrase.empty()) {
      throw std::invalid_argument("vocabulary phrase must not be empty");
    }
    if (!lookup_.insert(phrase).second) {
      throw std::invalid_argument("duplicate vocabulary phrase: " +
                                  phrase_key(phrase));
    }
    max_phrase_len_ = std::max(max_phrase_len_, phrase.size());
    trie_.insert(phrase);
  }
}

bool PhraseVocabulary::contains(const Phrase& phrase) const {
  return lookup_.count(phrase) > 0;
}

PhraseVocabulary select_frequency(const std::vector<PhraseSet>& phrase_sets,
                                  std::size_t budget) {
  auto pool = ranked_pool(phrase_sets);
  std::vector<Phrase> chosen;
  for (std::size_t i = 0; i < pool.size() && chosen.size() < budget; ++i) {
    chosen.push_back(pool[i].first);
  }
  return PhraseVocabulary(std::move(chosen));
}

PhraseVocabulary select_greedy(const std::vector<PhraseSet>& phrase_sets,
                               std::size_t budget) {
  auto pool = ranked_pool(phrase_sets);
  std::set<Phrase> chosen;
  std::vector<Phrase> order;
  std::vector<bool> covered(phrase_sets.size(), false);
  for (std::size_t i = 0; i < phrase_sets.size(); ++i) {
    covered[i] = phrase_sets[i].empty();
  }

  while (order.size() < budget && order.size() < pool.size()) {
    const Phrase* best = nullptr;
    std::size_t best_gain = 0;
    for (const auto& [candidate, freq] : pool) {
      if (chosen.count(candidate)) continue;
      std::size_t gain = 0;
      for (std::size_t i = 0; i < phrase_sets.size(); ++i) {
        if (covered[i] || !phrase_sets[i].contains(candidate)) continue;
        bool missing_only_candidate = true;
        for (const Phrase& phrase : phrase_sets[i].phrases) {
          if (phrase != candidate && !chosen.count(phrase)) {
            missing_only_candidate = false;
            break;
          }
        }
        if (missing_only_candidate) ++gain;
      }
      // The pool is already (frequency, lexicographic) ordered, so only a
      // strict improvement displaces the incumbent.
      if (best == nullptr || gain > best_gain) {
        best = &candidate;
        best_gain = gain;
      }
    }
    if (best == nullptr) break;
    chosen.insert(*best);
    order.push_back(*best);
    for (std::size_t i = 0; i < phrase_sets.size(); ++i) {
      if (!covered[i]) covered[i] = subset_of(phrase_sets[i], chosen);
    }
  }
  return PhraseVocabulary(std::move(order));
}

PhraseVocabulary select_exact(const std::vector<PhraseSet>& phrase_sets,
                              std::size_t budget) {
  auto pool = ranked_pool(phrase_sets);
  if (pool.size() > kExactSelectionPhraseLimit) {
    throw std::invalid_argument(
        "select_exact: instance too large: " + std::to_string(pool.size()) +
        " distinct phrases exceed the limit of " +
        std::to_string(kExactSelectionPhraseLimit));
  }
  const std::size_t n = pool.size();
  std::map<Phrase, std::size_t> phrase_bit;
  for (std::size_t i = 0; i < n; ++i) phrase_bit[pool[i].first] = i;

  std::vector<std::uint32_t> set_masks;
  std::size_t always_covered = 0;
  for (const PhraseSet& set : phrase_sets) {
    if (set.empty()) {
      ++always_covered;
      continue;
    }
    std::uint32_t mask = 0;
    for (const Phrase& phrase : set.phrases) {
      mask |= std::uint32_t{1} << phrase_bit.at(phrase);
    }
    set_masks.push_back(mask);
  }

  // Subsets are enumerated in increasing mask value over the ranked pool, so
  // the first maximum found prefers high-frequency phrases — the same
  // tie-break direction as the greedy selector.
  std::uint32_t best_mask = 0;
  std::size_t best_covered = always_covered;
  const std::uint32_t limit = n >= 32 ? 0xffffffffu
                                      : ((std::uint32_t{1} << n) - 1);
  for (std::uint32_t mask = 0;; ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) <= budget) {
      std::size_t covered_count = always_covered;
      for (std::uint32_t set_mask : set_masks) {
        if ((set_mask & ~mask) == 0) ++covered_count;
      }
      if (covered_count > best_covered) {
        best_covered = covered_count;
        best_mask = mask;
      }
    }
    if (mask == limit) break;
  }

  std::vector<Phrase> chosen;
  for (std::size_t i = 0; i < n; ++i) {
    if (best_mask & (std::uint32_t{1} << i)) chosen.push_back(pool[i].first);
  }
  return PhraseVocabulary(std::move(chosen));
}

CoverageReport coverage(const PhraseVocabulary& vocab,
                        const std::vector<PhraseSet>& phrase_sets) {
  CoverageReport report;
  report.total_examples = phrase_sets.size();
  for (const PhraseSet& set : phrase_sets) {
    bool covered_set = true;
    for (const Phrase& phrase : set.phrases) {
      ++report.per_phrase_frequency[phrase];
      if (!vocab.contains(phrase)) covered_set = false;
    }
    if (covered_set) ++report.covered_examples;
  }
  report.coverage =
      report.total_examples == 0
          ? 1.0
          : static_cast<double>(report.covered_examples) / report.total_examples;
  return report;
}

void write_vocabulary(const PhraseVocabulary& vocab, std::ostream& out) {
  out << "editkit-vocab v1 " << vocab.size() << "\n";
  for (const Phrase& phrase : vocab.phrases()) {
    out << phrase_key(phrase) << "\n";
  }
}

PhraseVocabulary read_vocabulary(std::istream& in, std::string corpus_id) {
  std::string header;
  if (!std::getline(in, header)) {
    throw std::runtime_error("vocabulary file is empty");
  }
  if (!header.empty() && header.back() == '\r') header.pop_back();
  std::istringstream header_stream(header);
  std::string magic, version;
  std::size_t count = 0;
  if (!(header_stream >> magic >> version >> count) ||
      magic != "editkit-vocab" || version != "v1") {
    throw std::runtime_error("bad vocabulary header: " + header);
  }
  std::vector<Phrase> phrases;
  phrases.reserve(count);
  std::string line;
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("vocabulary file truncated: expected " +
                               std::to_string(count) + " phrases, got " +
                               std::to_string(i));
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    Phrase phrase;
    for (const std::string& word : split_on(line, ' ')) {
      if (!word.empty()) phrase.push_back({word});
    }
    if (phrase.empty()) {
      throw std::runtime_error("vocabulary line " + std::to_string(i + 2) +
                               " holds no phrase");
    }
    phrases.push_back(std::move(phrase));
  }
  // Distinctness is enforced by the constructor.
  return PhraseVocabulary(std::move(phrases), std::move(corpus_id));
}

void save_vocabulary(const PhraseVocabulary& vocab, const std::string& path) {
  std::ostringstream out;
  write_vocabulary(vocab, out);
  atomic_write_file(path, out.str());
}

PhraseVocabulary load_vocabulary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open for reading");
  return read_vocabulary(in, std::filesystem::path(path).filename().string());
}

}  // namespace editkit
