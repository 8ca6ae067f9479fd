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

// Reading-comprehension backends: given a question and a tokenized context,
// return the best answer span and its score.

#ifndef RUSS_MRC_H_
#define RUSS_MRC_H_

#include <condition_variable>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "russ/corpus.h"
#include "russ/treebank.h"

namespace russ {

// Best span for one question. Bounds are inclusive token indices. An empty
// answer has start_token = end_token = -1.
struct SpanAnswer {
  std::string text;
  int start_token = -1;
  int end_token = -1;
  double score = 0.0;

  bool empty() const { return start_token < 0; }
  bool operator==(const SpanAnswer &other) const = default;
};

class BackendError : public std::runtime_error {
 public:
  BackendError(const std::string &what, std::string payload = {})
      : std::runtime_error(what), payload_(std::move(payload)) {}
  const std::string &payload() const { return payload_; }

 private:
  std::string payload_;
};

// Implementations must be safe for concurrent Answer calls.
class MrcBackend {
 public:
  virtual ~MrcBackend() = default;
  virtual SpanAnswer Answer(const std::string &question,
                            std::span<const Token> context) const = 0;
};

// Throws BackendError unless 0 <= start <= end < context size and the text
// equals the space-joined context tokens in the span.
void ValidateSpan(const SpanAnswer &answer, std::span<const Token> context,
                  const std::string &payload = {});

// Deterministic rule-based stand-in for a reading-comprehension model.
//
// The predicate is read from the question template (or found among the
// known predicates). Its first occurrence in the context anchors the
// answer: a passive "Who was ... by someone?" question takes the nearest
// dictionary entity after the predicate, any other question the nearest one
// before it, falling back to the other side when the preferred side has
// none. The score is 1 / (1 + d) with d the index distance from the
// predicate to the near edge of the entity. A context without entities
// yields an empty answer scored -1; a context that lost the predicate
// yields an empty answer scored 0.
class HeuristicOracle : public MrcBackend {
 public:
  HeuristicOracle(EntityDictionary dictionary,
                  std::vector<std::string> predicates);

  SpanAnswer Answer(const std::string &question,
                    std::span<const Token> context) const override;

  static constexpr double kNoEntityScore = -1.0;
  static constexpr double kNoPredicateScore = 0.0;

 private:
  // Returns (predicate, passive) or throws BackendError.
  std::pair<std::string, bool> ReadQuestion(const std::string &question) const;

  EntityDictionary dictionary_;
  std::vector<std::string> predicates_;
};

// Plays back recorded answers keyed by (space-joined context, question).
class FixtureOracle : public MrcBackend {
 public:
  using Key = std::pair<std::string, std::string>;

  FixtureOracle() = default;
  explicit FixtureOracle(std::map<Key, SpanAnswer> table)
      : table_(std::move(table)) {}

  void Add(const std::string &context, const std::string &question,
           SpanAnswer answer);

  SpanAnswer Answer(const std::string &question,
                    std::span<const Token> context) const override;

  const std::map<Key, SpanAnswer> &table() const { return table_; }

  // JSON lines: {"context", "question", "text", "start_token", "end_token",
  // "score"}.
  std::string Serialize() const;
  static FixtureOracle Parse(const std::string &text);
  void Save(const std::string &path) const;
  static FixtureOracle Load(const std::string &path);

 private:
  std::map<Key, SpanAnswer> table_;
};

struct HttpClientOptions {
  // Base URL, e.g. "http://127.0.0.1:8080". Requests go to <base>/answer.
  std::string endpoint;
  int timeout_ms = 10000;
  int retries = 2;
  int backoff_ms = 100;
  int max_in_flight = 4;
};

// Wire client for POST /answer:
//   request  {"question": str, "tokens": [str]}
//   response {"text": str, "start_token": int, "end_token": int,
//             "score": float}
// Transport failures and non-2xx statuses are retried with exponential
// backoff; malformed or out-of-bounds responses are not.
class HttpMrcClient : public MrcBackend {
 public:
  explicit HttpMrcClient(HttpClientOptions options);

  SpanAnswer Answer(const std::string &question,
                    std::span<const Token> context) const override;

  // Request body for (question, context); exposed for tests.
  static std::string EncodeRequest(const std::string &question,
                                   std::span<const Token> context);
  // Decodes and validates a response body. Throws BackendError.
  static SpanAnswer DecodeResponse(const std::string &body,
                                   std::span<const Token> context);

 private:
  class Slots {
   public:
    explicit Slots(int n) : free_(n) {}
    void Acquire();
    void Release();

   private:
    std::mutex mu_;
    std::condition_variable cv_;
    int free_;
  };

  HttpClientOptions options_;
  std::string host_;
  std::string path_;
  mutable Slots slots_;
};

}  // namespace russ

#endif  // RUSS_MRC_H_
