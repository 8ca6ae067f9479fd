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

#ifndef RUSS_SCORING_H_
#define RUSS_SCORING_H_

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "russ/lm.h"
#include "russ/treebank.h"

namespace russ {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exponents and search limits for the candidate score
//
//   combined = exp(slor)^a * entity^b * pred^c * prod_i rc_i^r_i
struct ScoreConfig {
  double a = 1.5;
  int b = 1;
  int c = 1;
  std::map<std::string, int> role_exponents = {{"Actor", 1}, {"Target", 1}};
  // Candidates need more than t words.
  int t = 5;
  int max_iter = 10;

  // Throws ConfigError unless a >= 0, b and c are 0 or 1, role exponents
  // are non-negative, t >= 0 and max_iter >= 1.
  void Validate() const;
};

// Parses a role exponent. Only non-negative integers are accepted since raw
// MRC scores may be negative. Throws ConfigError.
int ParseRoleExponent(std::string_view text);

struct ScoreBreakdown {
  double slor = 0.0;
  double nu_lm = 0.0;
  int nu_entity = 0;
  int nu_pred = 0;
  std::map<std::string, double> nu_rc;
  double combined = 0.0;

  bool operator==(const ScoreBreakdown &other) const = default;
};

// 1 iff every original entity still occurs in the candidate.
int EntityScore(std::span<const Token> candidate,
                std::span<const std::string> original_entities);

// 1 iff at least one predicate occurs in the candidate.
int PredicateScore(std::span<const Token> candidate,
                   std::span<const std::string> predicates);

// x^n by repeated multiplication; 0^0 = 1.
double IntPow(double x, int n);

// Combines component scores. Roles with a zero exponent contribute a factor
// of 1 whatever their raw score. Throws ConfigError when a role with a
// positive exponent has no score.
ScoreBreakdown Combine(SlorScore slor, int nu_entity, int nu_pred,
                       const std::map<std::string, double> &nu_rc,
                       const ScoreConfig &cfg);

}  // namespace russ

#endif  // RUSS_SCORING_H_
