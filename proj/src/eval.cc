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

#include "russ/eval.h"

#include <cctype>
#include <cstdio>
#include <optional>
#include <unordered_map>

#include "json.hpp"

namespace russ {

using json = nlohmann::json;

std::vector<std::string> NormalizeAnswer(std::string_view text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  for (char c : text) {
    auto u = static_cast<unsigned char>(c);
    if (u < 128 && std::ispunct(u)) continue;
    cleaned += static_cast<char>(std::tolower(u));
  }
  std::vector<std::string> out;
  for (std::string &word : SplitWhitespace(cleaned)) {
    if (word == "a" || word == "an" || word == "the") continue;
    out.push_back(std::move(word));
  }
  return out;
}

double TokenF1(std::string_view prediction, std::string_view gold) {
  std::vector<std::string> pred = NormalizeAnswer(prediction);
  std::vector<std::string> ref = NormalizeAnswer(gold);
  if (pred.empty() || ref.empty()) return pred.empty() && ref.empty() ? 1.0 : 0.0;
  std::unordered_map<std::string, int> counts;
  for (const std::string &w : ref) ++counts[w];
  int common = 0;
  for (const std::string &w : pred) {
    auto it = counts.find(w);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  double precision = static_cast<double>(common) / pred.size();
  double recall = static_cast<double>(common) / ref.size();
  return 2 * precision * recall / (precision + recall);
}

std::map<std::string, int> DistanceStats(const EventRecord &record,
                                         std::span<const Token> tokens) {
  std::map<std::string, int> out;
  std::vector<size_t> preds = FindPhrase(tokens, record.matched_predicate);
  if (preds.empty()) return out;
  long pred_len = static_cast<long>(SplitWhitespace(record.matched_predicate).size());
  for (const auto &[role, gold] : record.gold_answers) {
    std::vector<size_t> golds = FindPhrase(tokens, gold);
    if (golds.empty()) continue;
    long gold_len = static_cast<long>(SplitWhitespace(gold).size());
    long best = -1;
    for (size_t p : preds) {
      long p1 = static_cast<long>(p), p2 = p1 + pred_len - 1;
      for (size_t g : golds) {
        long g1 = static_cast<long>(g), g2 = g1 + gold_len - 1;
        long d = g2 < p1 ? p1 - g2 - 1 : (g1 > p2 ? g1 - p2 - 1 : 0);
        if (best < 0 || d < best) best = d;
      }
    }
    out[role] = static_cast<int>(best);
  }
  return out;
}

namespace {

struct RoleOutcome {
  std::string role;
  double before = 0.0;
  double after = 0.0;
  std::optional<std::pair<int, int>> distance;
};

struct ItemOutcome {
  bool dropped = false;
  std::vector<RoleOutcome> roles;
};

ItemOutcome EvaluateItem(const EvalItem &item, const MrcBackend &backend) {
  ItemOutcome out;
  std::map<std::string, int> dist_before =
      DistanceStats(item.record, item.record.tokens);
  std::map<std::string, int> dist_after =
      DistanceStats(item.record, item.simplified);
  try {
    for (const QAPair &qa : GenerateQuestions(item.record)) {
      RoleOutcome role;
      role.role = qa.role;
      role.before = TokenF1(
          backend.Answer(qa.question, item.record.tokens).text, qa.gold_answer);
      role.after =
          TokenF1(backend.Answer(qa.question, item.simplified).text, qa.gold_answer);
      auto b = dist_before.find(qa.role);
      auto a = dist_after.find(qa.role);
      if (b != dist_before.end() && a != dist_after.end()) {
        role.distance = {b->second, a->second};
      }
      out.roles.push_back(std::move(role));
    }
  } catch (const std::exception &) {
    out.dropped = true;
    out.roles.clear();
  }
  return out;
}

std::string Fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

}  // namespace

EvalReport Evaluate(std::span<const EvalItem> items, const MrcBackend &backend) {
  const long n = static_cast<long>(items.size());
  std::vector<ItemOutcome> outcomes(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) outcomes[i] = EvaluateItem(items[i], backend);

  struct Tally {
    int n = 0, pos = 0, neg = 0, n_distance = 0;
    double before = 0, after = 0, dist_before = 0, dist_after = 0;
  };
  std::map<std::string, Tally> tallies;
  EvalReport report;
  double len_before = 0, len_after = 0;
  for (long i = 0; i < n; ++i) {
    if (outcomes[i].dropped) {
      ++report.n_dropped;
      continue;
    }
    ++report.n_records;
    len_before += static_cast<double>(items[i].record.tokens.size());
    len_after += static_cast<double>(items[i].simplified.size());
    for (const RoleOutcome &role : outcomes[i].roles) {
      Tally &t = tallies[role.role];
      ++t.n;
      t.before += role.before;
      t.after += role.after;
      if (role.after > role.before) ++t.pos;
      if (role.after < role.before) ++t.neg;
      if (role.distance) {
        ++t.n_distance;
        t.dist_before += role.distance->first;
        t.dist_after += role.distance->second;
      }
    }
  }
  if (report.n_records > 0) {
    report.mean_len_before = len_before / report.n_records;
    report.mean_len_after = len_after / report.n_records;
  }
  for (const auto &[name, t] : tallies) {
    RoleReport &role = report.roles[name];
    role.n = t.n;
    role.f1_before = t.before / t.n;
    role.f1_after = t.after / t.n;
    role.delta_pos = 100.0 * t.pos / t.n;
    role.delta_neg = 100.0 * t.neg / t.n;
    role.delta_same = 100.0 * (t.n - t.pos - t.neg) / t.n;
    role.n_distance = t.n_distance;
    if (t.n_distance > 0) {
      role.distance_before = t.dist_before / t.n_distance;
      role.distance_after = t.dist_after / t.n_distance;
    }
  }
  return report;
}

EvalReport Evaluate(std::span<const SimplificationResult> results,
                    const MrcBackend &backend) {
  std::vector<EvalItem> items;
  items.reserve(results.size());
  for (const SimplificationResult &r : results) {
    items.push_back({r.original, r.final_tokens});
  }
  return Evaluate(items, backend);
}

std::string EvalReport::ToJson() const {
  json obj;
  obj["n_records"] = n_records;
  obj["n_dropped"] = n_dropped;
  obj["mean_len_before"] = mean_len_before;
  obj["mean_len_after"] = mean_len_after;
  json roles_obj = json::object();
  for (const auto &[name, r] : roles) {
    roles_obj[name] = {{"n", r.n},
                       {"f1_before", r.f1_before},
                       {"f1_after", r.f1_after},
                       {"delta_pos", r.delta_pos},
                       {"delta_neg", r.delta_neg},
                       {"delta_same", r.delta_same},
                       {"n_distance", r.n_distance},
                       {"distance_before", r.distance_before},
                       {"distance_after", r.distance_after}};
  }
  obj["roles"] = std::move(roles_obj);
  return obj.dump(2);
}

std::string EvalReport::ToTable() const {
  char line[256];
  std::string out;
  std::snprintf(line, sizeof(line), "%-8s %6s %8s %8s %8s %8s %8s %10s\n",
                "Role", "N", "F1", "F1'", "D+ve%", "D-ve%", "Dsame%",
                "dist->dist'");
  out += line;
  for (const auto &[name, r] : roles) {
    std::string dist = Fixed(r.distance_before, 2) + "->" +
                       Fixed(r.distance_after, 2);
    std::snprintf(line, sizeof(line),
                  "%-8s %6d %8.3f %8.3f %8.2f %8.2f %8.2f %10s\n", name.c_str(),
                  r.n, r.f1_before, r.f1_after, r.delta_pos, r.delta_neg,
                  r.delta_same, dist.c_str());
    out += line;
  }
  out += "records " + std::to_string(n_records) + ", dropped " +
         std::to_string(n_dropped) + ", mean length " +
         Fixed(mean_len_before, 2) + " -> " + Fixed(mean_len_after, 2) + "\n";
  return out;
}

}  // namespace russ
