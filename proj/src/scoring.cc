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

#include "russ/scoring.h"

#include <cctype>
#include <cmath>
#include <limits>

#include "russ/corpus.h"

namespace russ {

void ScoreConfig::Validate() const {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw ConfigError("lm exponent a must be a finite value >= 0");
  }
  if (b != 0 && b != 1) throw ConfigError("entity exponent b must be 0 or 1");
  if (c != 0 && c != 1) throw ConfigError("predicate exponent c must be 0 or 1");
  for (const auto &[role, r] : role_exponents) {
    if (r < 0) throw ConfigError("role exponent for " + role + " is negative");
  }
  if (t < 0) throw ConfigError("word threshold t must be >= 0");
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
}

int ParseRoleExponent(std::string_view text) {
  if (text.empty()) throw ConfigError("empty role exponent");
  long value = 0;
  for (char ch : text) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw ConfigError("role exponent '" + std::string(text) +
                        "' must be a non-negative integer");
    }
    value = value * 10 + (ch - '0');
    if (value > std::numeric_limits<int>::max()) {
      throw ConfigError("role exponent '" + std::string(text) + "' too large");
    }
  }
  return static_cast<int>(value);
}

int EntityScore(std::span<const Token> candidate,
                std::span<const std::string> original_entities) {
  for (const std::string &entity : original_entities) {
    if (!ContainsPhrase(candidate, entity)) return 0;
  }
  return 1;
}

int PredicateScore(std::span<const Token> candidate,
                   std::span<const std::string> predicates) {
  for (const std::string &predicate : predicates) {
    if (ContainsPhrase(candidate, predicate)) return 1;
  }
  return 0;
}

double IntPow(double x, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= x;
  return out;
}

ScoreBreakdown Combine(SlorScore slor, int nu_entity, int nu_pred,
                       const std::map<std::string, double> &nu_rc,
                       const ScoreConfig &cfg) {
  ScoreBreakdown out;
  out.slor = slor.value;
  out.nu_lm = std::exp(slor.value);
  out.nu_entity = nu_entity;
  out.nu_pred = nu_pred;
  out.nu_rc = nu_rc;

  double combined = std::pow(out.nu_lm, cfg.a);
  combined *= IntPow(nu_entity, cfg.b);
  combined *= IntPow(nu_pred, cfg.c);
  for (const auto &[role, r] : cfg.role_exponents) {
    if (r == 0) continue;
    auto it = nu_rc.find(role);
    if (it == nu_rc.end()) {
      throw ConfigError("no MRC score for role " + role);
    }
    combined *= IntPow(it->second, r);
  }
  out.combined = combined;
  return out;
}

}  // namespace russ
