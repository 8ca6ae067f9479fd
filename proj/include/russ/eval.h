// Copyright 2026 The RUSS Authors.
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

#ifndef RUSS_EVAL_H_
#define RUSS_EVAL_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "russ/corpus.h"
#include "russ/mrc.h"
#include "russ/search.h"

namespace russ {

// SQuAD answer normalization: lowercase, drop punctuation and the articles
// a/an/the, split on whitespace.
std::vector<std::string> NormalizeAnswer(std::string_view text);

// Exact-match token F1 over normalized token multisets.
double TokenF1(std::string_view prediction, std::string_view gold);

// Per role, the number of tokens strictly between the matched predicate and
// the nearest occurrence of the gold answer (0 when adjacent or
// overlapping). Roles whose predicate or answer cannot be found are omitted.
std::map<std::string, int> DistanceStats(const EventRecord &record,
                                         std::span<const Token> tokens);

struct RoleReport {
  int n = 0;
  double f1_before = 0.0;
  double f1_after = 0.0;
  // Percentages of the role's records whose F1 went up, down, or stayed.
  double delta_pos = 0.0;
  double delta_neg = 0.0;
  double delta_same = 100.0;
  // Mean predicate-argument distance over records where both the original
  // and the simplified sentence locate predicate and answer.
  int n_distance = 0;
  double distance_before = 0.0;
  double distance_after = 0.0;
};

struct EvalReport {
  std::map<std::string, RoleReport> roles;
  int n_records = 0;
  int n_dropped = 0;
  double mean_len_before = 0.0;
  double mean_len_after = 0.0;

  std::string ToJson() const;
  // Aligned table with F1 and delta columns per role.
  std::string ToTable() const;
};

struct EvalItem {
  EventRecord record;
  Tokens simplified;
};

// Queries the backend on the original and simplified context of every
// record. Records whose backend calls fail are dropped and counted.
EvalReport Evaluate(std::span<const EvalItem> items, const MrcBackend &backend);

EvalReport Evaluate(std::span<const SimplificationResult> results,
                    const MrcBackend &backend);

}  // namespace russ

#endif  // RUSS_EVAL_H_
