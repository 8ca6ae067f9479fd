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

#include "russ/corpus.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace russ {

using json = nlohmann::json;

namespace {

const std::vector<std::string> kNoPredicates;

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

std::string TrimLine(std::string line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
    line.pop_back();
  }
  return line;
}

const json &Require(const json &obj, const char *key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw RecordError(std::string("missing required field '") + key + "'");
  }
  return *it;
}

std::string RequireString(const json &obj, const char *key) {
  const json &value = Require(obj, key);
  if (!value.is_string()) {
    throw RecordError(std::string("field '") + key + "' must be a string");
  }
  return value.get<std::string>();
}

}  // namespace

void PredicateTable::Add(const std::string &event_type,
                         const std::string &predicate) {
  std::string lowered = ToLower(predicate);
  if (lowered.empty()) throw RecordError("empty predicate for " + event_type);
  auto &list = table_[event_type];
  if (std::find(list.begin(), list.end(), lowered) == list.end()) {
    list.push_back(std::move(lowered));
  }
}

const std::vector<std::string> &PredicateTable::For(
    const std::string &event_type) const {
  auto it = table_.find(event_type);
  return it == table_.end() ? kNoPredicates : it->second;
}

std::vector<std::string> PredicateTable::All() const {
  std::set<std::string> all;
  for (const auto &[type, list] : table_) all.insert(list.begin(), list.end());
  return {all.begin(), all.end()};
}

void EntityDictionary::Add(std::string_view surface) {
  std::vector<std::string> tokens = SplitWhitespace(ToLower(surface));
  if (tokens.empty()) return;
  if (std::find(entries_.begin(), entries_.end(), tokens) != entries_.end()) {
    return;
  }
  max_length_ = std::max(max_length_, tokens.size());
  entries_.push_back(std::move(tokens));
}

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

bool IsPunctuation(std::string_view text) {
  if (text.empty()) return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
  });
}

std::vector<size_t> FindPhrase(std::span<const Token> tokens,
                               std::string_view phrase) {
  std::vector<std::string> words = SplitWhitespace(phrase);
  std::vector<size_t> out;
  if (words.empty() || words.size() > tokens.size()) return out;
  for (size_t i = 0; i + words.size() <= tokens.size(); ++i) {
    bool match = true;
    for (size_t j = 0; j < words.size() && match; ++j) {
      match = EqualsIgnoreCase(tokens[i + j].text, words[j]);
    }
    if (match) out.push_back(i);
  }
  return out;
}

bool ContainsPhrase(std::span<const Token> tokens, std::string_view phrase) {
  return !FindPhrase(tokens, phrase).empty();
}

EventRecord ParseRecord(std::string_view line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error &e) {
    throw RecordError(std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw RecordError("record must be a JSON object");

  EventRecord record;
  record.id = RequireString(obj, "id");
  if (record.id.empty()) throw RecordError("empty id");

  const json &tokens = Require(obj, "tokens");
  if (!tokens.is_array() || tokens.empty()) {
    throw RecordError("field 'tokens' must be a non-empty array");
  }
  for (const json &item : tokens) {
    Token token;
    if (item.is_string()) {
      token.text = item.get<std::string>();
    } else if (item.is_object()) {
      token.text = RequireString(item, "text");
      if (item.contains("pos")) token.pos = RequireString(item, "pos");
      if (item.contains("dep")) token.dep = RequireString(item, "dep");
    } else {
      throw RecordError("token must be an object or a string");
    }
    if (token.text.empty()) throw RecordError("empty token text");
    if (std::any_of(token.text.begin(), token.text.end(), [](char c) {
          return std::isspace(static_cast<unsigned char>(c)) != 0;
        })) {
      throw RecordError("token '" + token.text + "' contains whitespace");
    }
    token.index = static_cast<int>(record.tokens.size());
    record.tokens.push_back(std::move(token));
  }

  record.raw_text = RequireString(obj, "raw_text");

  std::string bracketed = RequireString(obj, "parse");
  try {
    record.parse = AlignTokens(ParseBracketed(bracketed), record.tokens);
  } catch (const ParseError &e) {
    throw RecordError(std::string("parse: ") + e.what());
  } catch (const TreeError &e) {
    throw RecordError(std::string("alignment: ") + e.what());
  }
  // Tags missing from the record are filled from the parse preterminals.
  record.tokens = record.parse.Leaves();

  record.event_type = RequireString(obj, "event_type");
  if (record.event_type.empty()) throw RecordError("empty event_type");
  record.matched_predicate = RequireString(obj, "matched_predicate");
  if (record.matched_predicate.empty()) {
    throw RecordError("empty matched_predicate");
  }
  if (!ContainsPhrase(record.tokens, record.matched_predicate)) {
    throw RecordError("matched_predicate '" + record.matched_predicate +
                      "' does not occur in the sentence");
  }

  const json &gold = Require(obj, "gold_answers");
  if (!gold.is_object()) throw RecordError("gold_answers must be an object");
  for (const auto &[role, value] : gold.items()) {
    if (role != kActor && role != kTarget) {
      throw RecordError("unknown role '" + role + "'");
    }
    if (!value.is_string() || value.get<std::string>().empty()) {
      throw RecordError("gold answer for " + role + " must be non-empty");
    }
    record.gold_answers[role] = value.get<std::string>();
  }

  if (obj.contains("entities")) {
    for (const json &e : obj["entities"]) {
      record.entities.push_back(e.get<std::string>());
    }
  }
  return record;
}

std::string SerializeRecord(const EventRecord &record) {
  json obj;
  obj["id"] = record.id;
  json tokens = json::array();
  for (const Token &token : record.tokens) {
    tokens.push_back(
        {{"text", token.text}, {"pos", token.pos}, {"dep", token.dep}});
  }
  obj["tokens"] = std::move(tokens);
  obj["raw_text"] = record.raw_text;
  obj["parse"] = record.parse.ToBracketed();
  obj["event_type"] = record.event_type;
  obj["matched_predicate"] = record.matched_predicate;
  obj["gold_answers"] = record.gold_answers;
  if (!record.entities.empty()) obj["entities"] = record.entities;
  return obj.dump();
}

std::vector<EventRecord> LoadRecords(const std::string &path,
                                     std::vector<std::string> *diagnostics) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read records file " + path);
  std::vector<EventRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = TrimLine(std::move(line));
    if (SplitWhitespace(line).empty()) continue;
    try {
      records.push_back(ParseRecord(line));
    } catch (const RecordError &e) {
      if (diagnostics != nullptr) {
        diagnostics->push_back("line " + std::to_string(line_no) + ": " +
                               e.what());
      }
    }
  }
  return records;
}

PredicateTable LoadPredicateTable(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read predicate table " + path);
  PredicateTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = TrimLine(std::move(line));
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw IoError(path + ":" + std::to_string(line_no) +
                    ": expected event_type<TAB>predicate");
    }
    table.Add(line.substr(0, tab), line.substr(tab + 1));
  }
  return table;
}

EntityDictionary LoadEntityDictionary(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read entity dictionary " + path);
  EntityDictionary dict;
  std::string line;
  while (std::getline(in, line)) {
    line = TrimLine(std::move(line));
    if (line.empty() || line[0] == '#') continue;
    dict.Add(line);
  }
  return dict;
}

std::vector<EntitySpan> FindEntitySpans(std::span<const Token> tokens,
                                        const EntityDictionary &dict) {
  std::vector<EntitySpan> out;
  size_t i = 0;
  while (i < tokens.size()) {
    const std::vector<std::string> *best = nullptr;
    for (const auto &entry : dict.entries()) {
      if (i + entry.size() > tokens.size()) continue;
      if (best != nullptr && entry.size() <= best->size()) continue;
      bool match = true;
      for (size_t j = 0; j < entry.size() && match; ++j) {
        const std::string &text = tokens[i + j].text;
        match = !IsPunctuation(text) && EqualsIgnoreCase(text, entry[j]);
      }
      if (match) best = &entry;
    }
    if (best == nullptr) {
      ++i;
      continue;
    }
    std::string surface;
    for (const std::string &word : *best) {
      if (!surface.empty()) surface += ' ';
      surface += word;
    }
    out.push_back({i, i + best->size(), std::move(surface)});
    i += best->size();
  }
  return out;
}

std::vector<std::string> DetectEntities(std::span<const Token> tokens,
                                        const EntityDictionary &dict) {
  std::vector<std::string> out;
  for (EntitySpan &span : FindEntitySpans(tokens, dict)) {
    if (std::find(out.begin(), out.end(), span.surface) == out.end()) {
      out.push_back(std::move(span.surface));
    }
  }
  return out;
}

std::string ActiveQuestion(std::string_view predicate) {
  return "Who " + std::string(predicate) + " someone?";
}

std::string PassiveQuestion(std::string_view predicate) {
  return "Who was " + std::string(predicate) + " by someone?";
}

std::vector<QAPair> GenerateQuestions(const EventRecord &record,
                                      int *missing) {
  std::vector<QAPair> out;
  const std::pair<std::string_view, std::string> templates[] = {
      {kActor, ActiveQuestion(record.matched_predicate)},
      {kTarget, PassiveQuestion(record.matched_predicate)},
  };
  for (const auto &[role, question] : templates) {
    auto it = record.gold_answers.find(std::string(role));
    if (it == record.gold_answers.end()) {
      if (missing != nullptr) ++*missing;
      continue;
    }
    out.push_back({std::string(role), question, it->second});
  }
  return out;
}

}  // namespace russ
