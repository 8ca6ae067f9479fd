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

#include "russ/mrc.h"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace russ {

using json = nlohmann::json;

namespace {

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

std::string Trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

void ValidateSpan(const SpanAnswer &answer, std::span<const Token> context,
                  const std::string &payload) {
  int n = static_cast<int>(context.size());
  if (answer.start_token < 0 || answer.start_token > answer.end_token ||
      answer.end_token >= n) {
    throw BackendError("span [" + std::to_string(answer.start_token) + ", " +
                           std::to_string(answer.end_token) +
                           "] out of bounds for a " + std::to_string(n) +
                           "-token context",
                       payload);
  }
  std::string text = JoinText(
      context.subspan(answer.start_token,
                      answer.end_token - answer.start_token + 1));
  if (text != answer.text) {
    throw BackendError("span text '" + answer.text +
                           "' does not match the context ('" + text + "')",
                       payload);
  }
}

// --- HeuristicOracle ---

HeuristicOracle::HeuristicOracle(EntityDictionary dictionary,
                                 std::vector<std::string> predicates)
    : dictionary_(std::move(dictionary)), predicates_(std::move(predicates)) {
  for (std::string &p : predicates_) p = ToLower(p);
}

std::pair<std::string, bool> HeuristicOracle::ReadQuestion(
    const std::string &question) const {
  std::string lowered = ToLower(Trim(question));
  constexpr std::string_view kPassivePrefix = "who was ";
  constexpr std::string_view kPassiveSuffix = " by someone?";
  constexpr std::string_view kActivePrefix = "who ";
  constexpr std::string_view kActiveSuffix = " someone?";
  bool passive =
      StartsWith(lowered, kPassivePrefix) && EndsWith(lowered, kPassiveSuffix);
  if (passive && lowered.size() > kPassivePrefix.size() + kPassiveSuffix.size()) {
    return {Trim(std::string_view(lowered).substr(
                kPassivePrefix.size(), lowered.size() - kPassivePrefix.size() -
                                           kPassiveSuffix.size())),
            true};
  }
  if (StartsWith(lowered, kActivePrefix) && EndsWith(lowered, kActiveSuffix) &&
      lowered.size() > kActivePrefix.size() + kActiveSuffix.size()) {
    return {Trim(std::string_view(lowered).substr(
                kActivePrefix.size(), lowered.size() - kActivePrefix.size() -
                                          kActiveSuffix.size())),
            false};
  }
  // Not one of our templates: look for the longest known predicate.
  Tokens words;
  for (std::string &w : SplitWhitespace(lowered)) {
    while (!w.empty() && w.back() == '?') w.pop_back();
    if (!w.empty()) words.push_back({w, "", "", static_cast<int>(words.size())});
  }
  const std::string *best = nullptr;
  for (const std::string &p : predicates_) {
    if (ContainsPhrase(words, p) && (best == nullptr || p.size() > best->size())) {
      best = &p;
    }
  }
  if (best == nullptr) {
    throw BackendError("question names no known predicate: " + question);
  }
  return {*best, passive};
}

SpanAnswer HeuristicOracle::Answer(const std::string &question,
                                   std::span<const Token> context) const {
  auto [predicate, passive] = ReadQuestion(question);
  std::vector<size_t> hits = FindPhrase(context, predicate);
  if (hits.empty()) return SpanAnswer{"", -1, -1, kNoPredicateScore};
  long first = static_cast<long>(hits.front());
  long last = first + static_cast<long>(SplitWhitespace(predicate).size()) - 1;

  const EntitySpan *before = nullptr;
  const EntitySpan *after = nullptr;
  long before_d = std::numeric_limits<long>::max();
  long after_d = std::numeric_limits<long>::max();
  std::vector<EntitySpan> spans = FindEntitySpans(context, dictionary_);
  for (const EntitySpan &span : spans) {
    long b = static_cast<long>(span.begin);
    long e = static_cast<long>(span.end) - 1;
    if (e < first) {
      long d = first - e;
      if (d < before_d) before_d = d, before = &span;
    } else if (b > last) {
      long d = b - last;
      if (d < after_d) after_d = d, after = &span;
    }
  }

  const EntitySpan *chosen = passive ? after : before;
  long d = passive ? after_d : before_d;
  if (chosen == nullptr) {
    chosen = passive ? before : after;
    d = passive ? before_d : after_d;
  }
  if (chosen == nullptr) return SpanAnswer{"", -1, -1, kNoEntityScore};

  SpanAnswer answer;
  answer.start_token = static_cast<int>(chosen->begin);
  answer.end_token = static_cast<int>(chosen->end) - 1;
  answer.text = JoinText(context.subspan(chosen->begin,
                                         chosen->end - chosen->begin));
  answer.score = 1.0 / (1.0 + static_cast<double>(d));
  return answer;
}

// --- FixtureOracle ---

void FixtureOracle::Add(const std::string &context, const std::string &question,
                        SpanAnswer answer) {
  table_[{context, question}] = std::move(answer);
}

SpanAnswer FixtureOracle::Answer(const std::string &question,
                                 std::span<const Token> context) const {
  std::string key = JoinText(context);
  auto it = table_.find({key, question});
  if (it == table_.end()) {
    throw BackendError("no recorded answer for question '" + question +
                       "' on context '" + key + "'");
  }
  return it->second;
}

std::string FixtureOracle::Serialize() const {
  std::string out;
  for (const auto &[key, answer] : table_) {
    json obj = {{"context", key.first},
                {"question", key.second},
                {"text", answer.text},
                {"start_token", answer.start_token},
                {"end_token", answer.end_token},
                {"score", answer.score}};
    out += obj.dump();
    out += '\n';
  }
  return out;
}

FixtureOracle FixtureOracle::Parse(const std::string &text) {
  FixtureOracle oracle;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json obj = json::parse(line);
      SpanAnswer answer;
      answer.text = obj.at("text").get<std::string>();
      answer.start_token = obj.at("start_token").get<int>();
      answer.end_token = obj.at("end_token").get<int>();
      answer.score = obj.at("score").get<double>();
      oracle.Add(obj.at("context").get<std::string>(),
                 obj.at("question").get<std::string>(), std::move(answer));
    } catch (const json::exception &e) {
      throw BackendError("fixture line " + std::to_string(line_no) + ": " +
                             e.what(),
                         line);
    }
  }
  return oracle;
}

void FixtureOracle::Save(const std::string &path) const {
  std::ofstream out(path);
  if (!out) throw BackendError("cannot write " + path);
  out << Serialize();
}

FixtureOracle FixtureOracle::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw BackendError("cannot read fixture " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

}  // namespace russ
