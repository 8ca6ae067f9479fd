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

#include "russ/search.h"

#include <algorithm>
#include <array>
#include <exception>
#include <set>

#include <omp.h>

namespace russ {

namespace {

constexpr std::array<std::string_view, 14> kDeletable = {
    "PP",   "ADVP", "ADJP", "SBAR", "S",      "VP",   "PRT",
    "INTJ", "CONJP", "UCP", "FRAG", "WHADVP", "WHPP", "X"};

Tokens Reindexed(Tokens tokens) {
  for (size_t i = 0; i < tokens.size(); ++i) tokens[i].index = static_cast<int>(i);
  return tokens;
}

void CheckAligned(std::span<const Token> tokens, const ParseTree &parse) {
  Tokens leaves = parse.Leaves();
  if (leaves.size() != tokens.size()) {
    throw TreeError("parse has " + std::to_string(leaves.size()) +
                    " leaves for " + std::to_string(tokens.size()) + " tokens");
  }
  for (size_t i = 0; i < leaves.size(); ++i) {
    if (leaves[i].text != tokens[i].text) {
      throw TreeError("parse leaf '" + leaves[i].text +
                      "' does not match token '" + tokens[i].text + "'");
    }
  }
}

// Rethrows the first exception captured inside a parallel region.
class ErrorSlot {
 public:
  void Capture() {
    std::lock_guard<std::mutex> lock(mu_);
    if (!error_) error_ = std::current_exception();
  }
  void Rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr error_;
};

}  // namespace

std::string_view EditOpName(EditOp op) {
  return op == EditOp::kDelete ? "DELETE" : "EXTRACT";
}

std::string_view BaseLabel(std::string_view label) {
  if (label.empty() || label.front() == '-') return label;
  size_t cut = label.find_first_of("-=");
  return cut == std::string_view::npos ? label : label.substr(0, cut);
}

bool IsDeletableLabel(std::string_view label) {
  std::string_view base = BaseLabel(label);
  return std::find(kDeletable.begin(), kDeletable.end(), base) !=
         kDeletable.end();
}

bool IsExtractableLabel(std::string_view label) {
  std::string_view base = BaseLabel(label);
  return base == "S" || base == "SBAR";
}

std::vector<Candidate> GenerateCandidates(std::span<const Token> tokens,
                                          const ParseTree &parse, int t) {
  CheckAligned(tokens, parse);
  std::vector<Candidate> out;
  std::set<std::string> seen;
  auto emit = [&](Tokens kept, EditOp op, const Position &pos) {
    int words = static_cast<int>(kept.size());
    if (words <= t) return;
    if (!seen.insert(JoinText(kept)).second) return;
    out.push_back({Reindexed(std::move(kept)), op, pos, words});
  };

  for (const Position &pos : Positions(parse)) {
    const std::string &label = parse.At(pos).label();
    auto [begin, end] = LeafRange(parse, pos);
    if (!pos.is_root() && IsDeletableLabel(label)) {
      Tokens kept(tokens.begin(), tokens.begin() + begin);
      kept.insert(kept.end(), tokens.begin() + end, tokens.end());
      emit(std::move(kept), EditOp::kDelete, pos);
    }
    if (IsExtractableLabel(label)) {
      emit(Tokens(tokens.begin() + begin, tokens.begin() + end),
           EditOp::kExtract, pos);
    }
  }
  return out;
}

ParseTree ApplyEdit(const ParseTree &parse, const Candidate &candidate) {
  return candidate.op == EditOp::kDelete
             ? RemoveSubtree(parse, candidate.position)
             : ExtractSubtree(parse, candidate.position);
}

// --- scoring ---

CandidateScorer::CandidateScorer(const NgramModel &model,
                                 const ScoreConfig &cfg,
                                 std::vector<std::string> entities,
                                 std::vector<std::string> predicates,
                                 std::vector<QAPair> questions)
    : model_(model),
      cfg_(cfg),
      entities_(std::move(entities)),
      predicates_(std::move(predicates)),
      questions_(std::move(questions)) {
  // Roles without a question drop out of the product.
  std::map<std::string, int> exponents;
  for (const QAPair &qa : questions_) {
    auto it = cfg.role_exponents.find(qa.role);
    if (it != cfg.role_exponents.end()) exponents[qa.role] = it->second;
  }
  cfg_.role_exponents = std::move(exponents);
}

ScoreBreakdown CandidateScorer::Score(
    std::span<const Token> tokens, std::span<const SpanAnswer> answers) const {
  std::map<std::string, double> nu_rc;
  for (size_t i = 0; i < questions_.size(); ++i) {
    nu_rc[questions_[i].role] = answers[i].score;
  }
  return Combine(model_.Slor(tokens), EntityScore(tokens, entities_),
                 PredicateScore(tokens, predicates_), nu_rc, cfg_);
}

std::optional<SpanAnswer> AnswerCache::Find(const Key &key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = answers_.find(key);
  if (it == answers_.end()) return std::nullopt;
  return it->second;
}

void AnswerCache::Insert(const Key &key, SpanAnswer answer) {
  std::lock_guard<std::mutex> lock(mu_);
  answers_.emplace(key, std::move(answer));
}

size_t AnswerCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return answers_.size();
}

std::vector<ScoreBreakdown> ScoreCandidatesSerial(
    std::span<const Candidate> candidates, const CandidateScorer &scorer,
    const MrcBackend &backend, AnswerCache *cache) {
  const auto &questions = scorer.questions();
  std::vector<ScoreBreakdown> scores;
  scores.reserve(candidates.size());
  std::vector<SpanAnswer> answers(questions.size());
  for (const Candidate &cand : candidates) {
    std::string text = JoinText(cand.tokens);
    for (size_t q = 0; q < questions.size(); ++q) {
      AnswerCache::Key key{questions[q].question, text};
      if (auto hit = cache->Find(key)) {
        answers[q] = *hit;
      } else {
        answers[q] = backend.Answer(questions[q].question, cand.tokens);
        cache->Insert(key, answers[q]);
      }
    }
    scores.push_back(scorer.Score(cand.tokens, answers));
  }
  return scores;
}

std::vector<ScoreBreakdown> ScoreCandidatesParallel(
    std::span<const Candidate> candidates, const CandidateScorer &scorer,
    const MrcBackend &backend, AnswerCache *cache) {
  const auto &questions = scorer.questions();
  const long n = static_cast<long>(candidates.size());
  std::vector<std::string> texts(n);
  for (long i = 0; i < n; ++i) texts[i] = JoinText(candidates[i].tokens);

  // Distinct backend queries not answered yet.
  struct Query {
    AnswerCache::Key key;
    const Candidate *cand;
    size_t question;
  };
  std::vector<Query> missing;
  std::set<AnswerCache::Key> queued;
  for (long i = 0; i < n; ++i) {
    for (size_t q = 0; q < questions.size(); ++q) {
      AnswerCache::Key key{questions[q].question, texts[i]};
      if (queued.count(key) || cache->Find(key)) continue;
      queued.insert(key);
      missing.push_back({std::move(key), &candidates[i], q});
    }
  }

  ErrorSlot error;
  const long m = static_cast<long>(missing.size());
  std::vector<SpanAnswer> fetched(m);
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < m; ++k) {
    try {
      const Query &query = missing[k];
      fetched[k] = backend.Answer(questions[query.question].question,
                                  query.cand->tokens);
    } catch (...) {
      error.Capture();
    }
  }
  error.Rethrow();
  for (long k = 0; k < m; ++k) cache->Insert(missing[k].key, fetched[k]);

  std::vector<ScoreBreakdown> scores(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      std::vector<SpanAnswer> answers(questions.size());
      for (size_t q = 0; q < questions.size(); ++q) {
        answers[q] = *cache->Find({questions[q].question, texts[i]});
      }
      scores[i] = scorer.Score(candidates[i].tokens, answers);
    } catch (...) {
      error.Capture();
    }
  }
  error.Rethrow();
  return scores;
}

int ArgMax(std::span<const ScoreBreakdown> scores) {
  int best = -1;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (best < 0 || scores[i].combined > scores[best].combined) {
      best = static_cast<int>(i);
    }
  }
  return best;
}

// --- search loop ---

SimplificationResult Simplify(const EventRecord &record,
                              const std::vector<QAPair> &questions,
                              const MrcBackend &backend,
                              const NgramModel &model, const ScoreConfig &cfg,
                              std::span<const std::string> predicates,
                              const SearchOptions &options) {
  cfg.Validate();
  std::vector<std::string> preds(predicates.begin(), predicates.end());
  if (preds.empty()) preds.push_back(ToLower(record.matched_predicate));
  CandidateScorer scorer(model, cfg, record.entities, std::move(preds),
                         questions);
  AnswerCache cache;

  SimplificationResult result;
  result.original = record;
  Tokens current = record.tokens;
  ParseTree tree = record.parse;
  double best_score = 0.0;

  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    std::vector<Candidate> candidates = GenerateCandidates(current, tree, cfg.t);
    if (candidates.empty()) break;
    std::vector<ScoreBreakdown> scores =
        options.parallel
            ? ScoreCandidatesParallel(candidates, scorer, backend, &cache)
            : ScoreCandidatesSerial(candidates, scorer, backend, &cache);
    if (options.keep_candidates) {
      auto &log = result.candidates.emplace_back();
      for (size_t i = 0; i < candidates.size(); ++i) {
        log.push_back({candidates[i], scores[i]});
      }
    }
    int best = ArgMax(scores);
    if (!(scores[best].combined > best_score)) break;

    best_score = scores[best].combined;
    tree = ApplyEdit(tree, candidates[best]);
    current = tree.Leaves();
    result.trace.push_back({iter, std::move(candidates[best]), scores[best]});
  }

  result.final_tokens = std::move(current);
  result.iterations = static_cast<int>(result.trace.size());
  return result;
}

std::vector<RecordOutcome> SimplifyAll(std::span<const EventRecord> records,
                                       const MrcBackend &backend,
                                       const NgramModel &model,
                                       const ScoreConfig &cfg,
                                       const PredicateTable &predicates,
                                       const SearchOptions &options,
                                       int workers) {
  cfg.Validate();
  const long n = static_cast<long>(records.size());
  std::vector<RecordOutcome> out(n);
  auto run = [&](long i) {
    const EventRecord &record = records[i];
    try {
      std::vector<QAPair> questions = GenerateQuestions(record);
      out[i].result = Simplify(record, questions, backend, model, cfg,
                               predicates.For(record.event_type), options);
    } catch (const std::exception &e) {
      out[i].error = e.what();
    }
  };
  if (!options.parallel) {
    for (long i = 0; i < n; ++i) run(i);
    return out;
  }
  int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long i = 0; i < n; ++i) run(i);
  return out;
}

}  // namespace russ
