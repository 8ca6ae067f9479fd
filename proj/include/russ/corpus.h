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

// Event records, dictionaries and question templates.

#ifndef RUSS_CORPUS_H_
#define RUSS_CORPUS_H_

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "russ/treebank.h"

namespace russ {

inline constexpr std::string_view kActor = "Actor";
inline constexpr std::string_view kTarget = "Target";

class RecordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EventRecord {
  std::string id;
  Tokens tokens;
  std::string raw_text;
  ParseTree parse;
  std::string event_type;
  std::string matched_predicate;
  std::map<std::string, std::string> gold_answers;
  std::vector<std::string> entities;

  bool operator==(const EventRecord &other) const = default;
};

struct QAPair {
  std::string role;
  std::string question;
  std::string gold_answer;
};

// Event type -> lowercase predicate surface forms.
class PredicateTable {
 public:
  void Add(const std::string &event_type, const std::string &predicate);

  // Predicates of an event type; empty if the type is unknown.
  const std::vector<std::string> &For(const std::string &event_type) const;

  // Every predicate of every event type, deduplicated, sorted.
  std::vector<std::string> All() const;

  const std::map<std::string, std::vector<std::string>> &entries() const {
    return table_;
  }

 private:
  std::map<std::string, std::vector<std::string>> table_;
};

// Entity surface forms, stored as lowercase token sequences.
class EntityDictionary {
 public:
  void Add(std::string_view surface);

  const std::vector<std::vector<std::string>> &entries() const {
    return entries_;
  }
  size_t max_length() const { return max_length_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<std::vector<std::string>> entries_;
  size_t max_length_ = 0;
};

// An entity occurrence: tokens [begin, end) match dictionary entry `surface`.
struct EntitySpan {
  size_t begin = 0;
  size_t end = 0;
  std::string surface;
};

// --- text helpers ---

std::string ToLower(std::string_view text);
std::vector<std::string> SplitWhitespace(std::string_view text);

// True if the token consists solely of ASCII punctuation.
bool IsPunctuation(std::string_view text);

// Start indices of every case-insensitive contiguous occurrence of phrase
// (a whitespace-separated token sequence) in tokens.
std::vector<size_t> FindPhrase(std::span<const Token> tokens,
                               std::string_view phrase);

bool ContainsPhrase(std::span<const Token> tokens, std::string_view phrase);

// --- operations ---

// Parses and validates one JSON-lines record. Throws RecordError.
EventRecord ParseRecord(std::string_view line);

// Serializes a record to one JSON line (no trailing newline).
std::string SerializeRecord(const EventRecord &record);

// Loads a JSON-lines file. Invalid lines are skipped and described in
// *diagnostics ("line N: reason"). Throws IoError if unreadable.
std::vector<EventRecord> LoadRecords(const std::string &path,
                                     std::vector<std::string> *diagnostics);

// Lines of "event_type<TAB>predicate".
PredicateTable LoadPredicateTable(const std::string &path);

// One entity per line.
EntityDictionary LoadEntityDictionary(const std::string &path);

// Greedy left-to-right longest-match entity occurrences. Matches never
// overlap and never cover punctuation tokens.
std::vector<EntitySpan> FindEntitySpans(std::span<const Token> tokens,
                                        const EntityDictionary &dict);

// Distinct entity surface forms in order of first occurrence.
std::vector<std::string> DetectEntities(std::span<const Token> tokens,
                                        const EntityDictionary &dict);

std::string ActiveQuestion(std::string_view predicate);
std::string PassiveQuestion(std::string_view predicate);

// Actor and Target questions for the record's matched predicate. A role
// without a gold answer is skipped and counted in *missing (if non-null).
std::vector<QAPair> GenerateQuestions(const EventRecord &record,
                                      int *missing = nullptr);

}  // namespace russ

#endif  // RUSS_CORPUS_H_
