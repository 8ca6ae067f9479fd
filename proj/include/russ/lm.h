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

#ifndef RUSS_LM_H_
#define RUSS_LM_H_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "russ/treebank.h"

namespace russ {

class LmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fluency score: length-normalized log ratio of the LM probability to the
// product of word unigram probabilities.
struct SlorScore {
  double value = 0.0;
};

struct LmOptions {
  int order = 3;
  // Log-linear weight of the POS-tag chain against the word chain.
  double pos_mix = 0.3;
  // Interpolation weights, highest order first. Empty selects defaults:
  // order 1 {1}, order 2 {0.7, 0.3}, order 3 {0.6, 0.3, 0.1}.
  std::vector<double> weights;
};

// Interpolated n-gram model over lowercased words mixed with an n-gram
// model over POS tags.
//
// Sentences are padded with order-1 "<s>" markers and one "</s>" marker.
// An order-1 model uses no markers at all, so its chain probability is the
// plain product of unigram probabilities. Words seen at most once in
// training map to "<unk>". Unigrams are add-one smoothed over the
// vocabulary plus "<unk>" (and "</s>" when it is predicted). Each higher
// order contributes weight * ML estimate; when a context was never seen its
// weight passes down to the next lower order.
class NgramModel {
 public:
  static constexpr const char *kBos = "<s>";
  static constexpr const char *kEos = "</s>";
  static constexpr const char *kUnk = "<unk>";

  // Throws LmError on an empty corpus or invalid options.
  static NgramModel Train(std::span<const Tokens> corpus,
                          const LmOptions &options = {});

  int order() const { return order_; }
  double pos_mix() const { return pos_mix_; }
  const std::vector<double> &weights() const { return weights_; }
  const std::set<std::string> &vocabulary() const { return vocabulary_; }

  // log P_LM(s) = pos_mix * log P_pos(s) + (1 - pos_mix) * log P_word(s).
  double SentenceLogProb(std::span<const Token> tokens) const;
  double WordLogProb(std::span<const Token> tokens) const;
  double PosLogProb(std::span<const Token> tokens) const;

  // Sum of word unigram log-probabilities (no boundary markers).
  double UnigramLogProb(std::span<const Token> tokens) const;

  SlorScore Slor(std::span<const Token> tokens) const;

  // Interpolated P(word | history) in the word chain; history holds raw
  // (possibly padded) symbols, most recent last.
  double WordProb(std::span<const std::string> history,
                  const std::string &word) const;

  // Unsmoothed relative frequency c(history word) / c(history) for the
  // n-gram of order history.size() + 1. Zero if history is unseen.
  double WordRelativeFrequency(std::span<const std::string> history,
                               const std::string &word) const;

  std::string ToJson() const;
  static NgramModel FromJson(const std::string &text);
  void Save(const std::string &path) const;
  static NgramModel Load(const std::string &path);

 private:
  // Count tables for one symbol stream.
  struct Chain {
    // counts[n-1]: n-gram (space-joined) -> count, for n = 1..order.
    std::vector<std::map<std::string, int64_t>> counts;
    // contexts[n-1]: (n-1)-gram -> total continuation count, n >= 2.
    std::vector<std::map<std::string, int64_t>> contexts;
    int64_t unigram_total = 0;
    int64_t event_types = 0;

    void Finalize(int order, bool predicts_eos);
  };

  void Validate() const;
  std::string MapWord(const std::string &word) const;
  std::vector<std::string> WordSymbols(std::span<const Token> tokens) const;
  static std::vector<std::string> PosSymbols(std::span<const Token> tokens);
  double Prob(const Chain &chain, std::span<const std::string> history,
              const std::string &symbol) const;
  double UnigramProb(const Chain &chain, const std::string &symbol) const;
  double ChainLogProb(const Chain &chain,
                      const std::vector<std::string> &symbols) const;
  void Finalize();

  int order_ = 3;
  double pos_mix_ = 0.3;
  std::vector<double> weights_;
  std::set<std::string> vocabulary_;
  std::set<std::string> tags_;
  Chain words_;
  Chain pos_;
};

}  // namespace russ

#endif  // RUSS_LM_H_
