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

#ifndef EDITKIT_REALIZE_HPP_
#define EDITKIT_REALIZE_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "editkit/tags.hpp"
#include "editkit/text.hpp"

namespace editkit {

// One position of the post-reorder edit plan that rules may rewrite.
struct PlanItem {
  Token token;
  bool keep = false;
  std::optional<Phrase> insert_before;
  // Index into the post-reorder source; sentence starts are computed there.
  std::size_t position = 0;
};

// A specialized realization rule. The trigger is evaluated at every plan
// position left to right; the action rewrites the plan where it fired. Rules
// run after insertion/deletion and before capitalization, in registration
// order.
struct RealizationRule {
  std::string name;
  std::function<bool(const std::vector<PlanItem>&, std::size_t)> trigger;
  std::function<void(std::vector<PlanItem>&, std::size_t)> action;
};

// When a deleted token carries a possessive replacement phrase (one ending in
// his/her/its/... ) and the next token is the clitic 's, the clitic is dropped
// regardless of its own tag.
RealizationRule possessive_clitic_rule();

// Turns (source, tags) into output text: reorders the two sentences when a
// SWAP tag is present, emits added phrases and kept tokens, applies the
// registered rules, then adjusts capitalization at sentence boundaries.
class Realizer {
 public:
  // The default engine ships with the possessive clitic rule installed.
  Realizer();
  static Realizer without_default_rules();

  // Throws std::invalid_argument when a rule of that name already exists.
  void register_rule(RealizationRule rule);

  // Requires tags.convertible and one tag per source token; throws
  // std::invalid_argument otherwise (a corrupted prediction).
  TokenSequence realize(const TokenSequence& source,
                        const TagSequence& tags) const;

 private:
  struct BareTag {};
  explicit Realizer(BareTag) {}

  std::vector<RealizationRule> rules_;
};

}  // namespace editkit

#endif  // EDITKIT_REALIZE_HPP_
