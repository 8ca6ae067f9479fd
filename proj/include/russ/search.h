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

// Parse-tree driven simplification search.
//
// Each iteration turns the current sentence into candidates by deleting one
// phrase or extracting one clause, scores every candidate, and adopts the
// best one if its score beats everything adopted so far. The loop stops at
// the first iteration without improvement or after max_iter iterations.

#ifndef RUSS_SEARCH_H_
#define RUSS_SEARCH_H_

#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "russ/corpus.h"
#include "russ/lm.h"
#include "russ/mrc.h"
#include "russ/scoring.h"
#include "russ/treebank.h"

namespace russ {

enum class EditOp { kDelete, kExtract };

std::string_view EditOpName(EditOp op);

struct Candidate {
  Tokens tokens;
  EditOp op = EditOp::kDelete;
  // Node of the parent tree the edit applies to.
  Position position;
  int word_count = 0;

  bool operator==(const Candidate &other) const = default;
};

// Phrase labels whose subtrees may be deleted. Noun-phrase labels (NP,
// WHNP, QP) are never deletable.
bool IsDeletableLabel(std::string_view label);

// Clause labels that may be extracted as a whole sentence (S, SBAR).
bool IsExtractableLabel(std::string_view label);

// Category part of a treebank label: "NP-SBJ-1" -> "NP", "-NONE-" kept.
std::string_view BaseLabel(std::string_view label);

// Deletion candidates for every deletable non-root node and extraction
// candidates for every clause node, in preorder with deletion first at the
// same node. Candidates with word_count <= t are dropped, then duplicates
// by token text keep their first provenance. Throws TreeError if the parse
// leaves do not match the tokens.
std::vector<Candidate> GenerateCandidates(std::span<const Token> tokens,
                                          const ParseTree &parse, int t);

// Applies a candidate's edit to the tree it was generated from.
ParseTree ApplyEdit(const ParseTree &parse, const Candidate &candidate);

struct TraceStep {
  int iteration = 0;
  Candidate candidate;
  ScoreBreakdown score;
};

struct ScoredCandidate {
  Candidate candidate;
  ScoreBreakdown score;
};

struct SimplificationResult {
  EventRecord original;
  Tokens final_tokens;
  // Number of adopted edits.
  int iterations = 0;
  std::vector<TraceStep> trace;
  // Every scored candidate per iteration; filled only when requested.
  std::vector<std::vector<ScoredCandidate>> candidates;
};

// Read-only inputs shared by every candidate of one record.
class CandidateScorer {
 public:
  CandidateScorer(const NgramModel &model, const ScoreConfig &cfg,
                  std::vector<std::string> entities,
                  std::vector<std::string> predicates,
                  std::vector<QAPair> questions);

  const std::vector<QAPair> &questions() const { return questions_; }

  // answers[i] is the backend answer to questions()[i] on the candidate.
  ScoreBreakdown Score(std::span<const Token> tokens,
                       std::span<const SpanAnswer> answers) const;

 private:
  const NgramModel &model_;
  ScoreConfig cfg_;
  std::vector<std::string> entities_;
  std::vector<std::string> predicates_;
  std::vector<QAPair> questions_;
};

// Backend answers memoized on (question, candidate text) for one record.
class AnswerCache {
 public:
  using Key = std::pair<std::string, std::string>;

  std::optional<SpanAnswer> Find(const Key &key) const;
  void Insert(const Key &key, SpanAnswer answer);
  size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<Key, SpanAnswer> answers_;
};

// Scores candidates one by one. Reference implementation for the parallel
// kernel.
std::vector<ScoreBreakdown> ScoreCandidatesSerial(
    std::span<const Candidate> candidates, const CandidateScorer &scorer,
    const MrcBackend &backend, AnswerCache *cache);

// Fans backend calls and scoring out over OpenMP threads. Results are
// identical to ScoreCandidatesSerial for a deterministic backend.
std::vector<ScoreBreakdown> ScoreCandidatesParallel(
    std::span<const Candidate> candidates, const CandidateScorer &scorer,
    const MrcBackend &backend, AnswerCache *cache);

// Index of the highest combined score, first one on ties. -1 if empty.
int ArgMax(std::span<const ScoreBreakdown> scores);

struct SearchOptions {
  bool parallel = true;
  bool keep_candidates = false;
};

// Simplifies one record. predicates is the event type's predicate list
// (the record's matched predicate is used when it is empty). Throws
// BackendError if the backend fails.
SimplificationResult Simplify(const EventRecord &record,
                              const std::vector<QAPair> &questions,
                              const MrcBackend &backend,
                              const NgramModel &model, const ScoreConfig &cfg,
                              std::span<const std::string> predicates,
                              const SearchOptions &options = {});

struct RecordOutcome {
  std::optional<SimplificationResult> result;
  std::string error;
};

// Simplifies every record, in parallel over records unless
// options.parallel is false. A failing record leaves the others unaffected.
std::vector<RecordOutcome> SimplifyAll(std::span<const EventRecord> records,
                                       const MrcBackend &backend,
                                       const NgramModel &model,
                                       const ScoreConfig &cfg,
                                       const PredicateTable &predicates,
                                       const SearchOptions &options = {},
                                       int workers = 0);

}  // namespace russ

#endif  // RUSS_SEARCH_H_
