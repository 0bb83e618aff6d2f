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

#include "editkit/realize.hpp"

#include <cctype>
#include <map>
#include <stdexcept>

namespace editkit {
namespace {

bool is_possessive_pronoun(const std::string& word) {
  const std::string lower = ascii_lower(word);
  return lower == "his" || lower == "her" || lower == "its" ||
         lower == "their" || lower == "my" || lower == "our" ||
         lower == "your";
}

bool is_clitic_token(const Token& token) {
  return token.surface == "'s" || token.surface == "'S";
}

struct Emitted {
  Token token;
  bool from_source = false;
  std::size_t plan_position = 0;
};

bool starts_upper(const std::string& word) {
  return !word.empty() && std::isupper(static_cast<unsigned char>(word[0]));
}

bool starts_alpha(const std::string& word) {
  return !word.empty() && std::isalpha(static_cast<unsigned char>(word[0]));
}

}  // namespace

RealizationRule possessive_clitic_rule() {
  RealizationRule rule;
  rule.name = "possessive-clitic";
  rule.trigger = [](const std::vector<PlanItem>& plan, std::size_t i) {
    return !plan[i].keep && plan[i].insert_before &&
           is_possessive_pronoun(plan[i].insert_before->back().surface) &&
           i + 1 < plan.size() && is_clitic_token(plan[i + 1].token);
  };
  rule.action = [](std::vector<PlanItem>& plan, std::size_t i) {
    plan[i + 1].keep = false;
  };
  return rule;
}

Realizer::Realizer() { register_rule(possessive_clitic_rule()); }

Realizer Realizer::without_default_rules() { return Realizer(BareTag{}); }

void Realizer::register_rule(RealizationRule rule) {
  for (const RealizationRule& existing : rules_) {
    if (existing.name == rule.name) {
      throw std::invalid_argument("realization rule already registered: " +
                                  rule.name);
    }
  }
  rules_.push_back(std::move(rule));
}

TokenSequence Realizer::realize(const TokenSequence& source,
                                const TagSequence& tags) const {
  if (!tags.convertible) {
    throw std::invalid_argument("cannot realize a non-convertible sequence");
  }
  if (tags.tags.size() != source.size()) {
    throw std::invalid_argument(
        "tag count " + std::to_string(tags.tags.size()) +
        " does not match source token count " + std::to_string(source.size()));
  }

  // Reorder the two sentences when a SWAP tag is present; the swapped token
  // itself realizes as kept.
  bool has_swap = false;
  for (const EditTag& tag : tags.tags) {
    if (tag.base == BaseTag::kSwap) has_swap = true;
  }
  std::vector<std::size_t> order(source.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (has_swap) {
    const std::vector<TokenSequence> sentences = split_sentences(source);
    if (sentences.size() == 2) {
      const std::size_t first_len = sentences[0].size();
      std::size_t k = 0;
      for (std::size_t i = first_len; i < source.size(); ++i) order[k++] = i;
      for (std::size_t i = 0; i < first_len; ++i) order[k++] = i;
    }
  }

  std::vector<PlanItem> plan;
  plan.reserve(source.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    PlanItem item;
    item.token = source[i];
    item.keep = tags.tags[i].base != BaseTag::kDelete;
    item.insert_before = tags.tags[i].added_phrase;
    item.position = k;
    plan.push_back(std::move(item));
  }

  for (const RealizationRule& rule : rules_) {
    for (std::size_t i = 0; i < plan.size(); ++i) {
      if (rule.trigger(plan, i)) rule.action(plan, i);
    }
  }

  std::vector<Emitted> emitted;
  for (const PlanItem& item : plan) {
    if (item.insert_before) {
      for (const Token& token : *item.insert_before) {
        emitted.push_back({token, false, item.position});
      }
    }
    if (item.keep) emitted.push_back({item.token, true, item.position});
  }
  if (tags.trailing_insertion) {
    for (const Token& token : *tags.trailing_insertion) {
      emitted.push_back({token, false, 0});
    }
  }

  // Sentence starts of the post-reorder source, for the demotion rule.
  std::vector<bool> source_initial(plan.size(), false);
  for (std::size_t k = 0; k < plan.size(); ++k) {
    source_initial[k] = k == 0 || plan[k - 1].token.sentence_final();
  }
  // A word is exempt from demotion when every occurrence in the source is
  // capitalized — casing evidence of a proper noun.
  std::map<std::string, bool> capitalized_everywhere;
  for (const PlanItem& item : plan) {
    if (!starts_alpha(item.token.surface)) continue;
    const std::string word = ascii_lower(item.token.surface);
    auto [it, inserted] =
        capitalized_everywhere.emplace(word, starts_upper(item.token.surface));
    if (!inserted) it->second = it->second && starts_upper(item.token.surface);
  }

  TokenSequence out;
  out.reserve(emitted.size());
  for (std::size_t e = 0; e < emitted.size(); ++e) {
    const bool output_initial =
        e == 0 || emitted[e - 1].token.sentence_final();
    Token token = emitted[e].token;
    if (output_initial && e > 0) {
      // Capitalization is adjusted at sentence boundaries; the very first
      // token keeps whatever casing the edits produced.
      token.surface = capitalize_first(std::move(token.surface));
    } else if (!output_initial && emitted[e].from_source &&
               source_initial[emitted[e].plan_position] &&
               starts_alpha(token.surface)) {
      const std::string word = ascii_lower(token.surface);
      auto it = capitalized_everywhere.find(word);
      if (it != capitalized_everywhere.end() && !it->second) {
        token.surface = lowercase_first(std::move(token.surface));
      }
    }
    out.push_back(std::move(token));
  }
  return out;
}

}  // namespace editkit
