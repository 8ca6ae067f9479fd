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

#include "russ/lm.h"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "russ/corpus.h"

namespace russ {

using json = nlohmann::json;

namespace {

constexpr const char *kFormat = "russ-ngram";
constexpr int kVersion = 1;

std::vector<double> DefaultWeights(int order) {
  switch (order) {
    case 1:
      return {1.0};
    case 2:
      return {0.7, 0.3};
    case 3:
      return {0.6, 0.3, 0.1};
    default: {
      // Halve the weight with each lower order.
      std::vector<double> w(order);
      double total = 0;
      for (int i = 0; i < order; ++i) total += w[i] = std::ldexp(1.0, order - i);
      for (double &x : w) x /= total;
      return w;
    }
  }
}

std::string Join(std::span<const std::string> symbols) {
  std::string out;
  for (size_t i = 0; i < symbols.size(); ++i) {
    if (i > 0) out += ' ';
    out += symbols[i];
  }
  return out;
}

std::vector<std::string> Pad(const std::vector<std::string> &symbols,
                             int order) {
  if (order == 1) return symbols;
  std::vector<std::string> out(order - 1, NgramModel::kBos);
  out.insert(out.end(), symbols.begin(), symbols.end());
  out.push_back(NgramModel::kEos);
  return out;
}

// Counts every n-gram (n = 1..order) whose last symbol is a predicted one.
void CountInto(const std::vector<std::string> &padded, int order,
               std::vector<std::map<std::string, int64_t>> *counts) {
  size_t first = order == 1 ? 0 : order - 1;
  for (size_t i = first; i < padded.size(); ++i) {
    for (int n = 1; n <= order; ++n) {
      if (i + 1 < static_cast<size_t>(n)) break;
      std::span<const std::string> gram(padded.data() + i + 1 - n, n);
      ++(*counts)[n - 1][Join(gram)];
    }
  }
}

}  // namespace

void NgramModel::Chain::Finalize(int order, bool predicts_eos) {
  contexts.assign(order, {});
  for (int n = 2; n <= order; ++n) {
    for (const auto &[gram, count] : counts[n - 1]) {
      contexts[n - 1][gram.substr(0, gram.rfind(' '))] += count;
    }
  }
  unigram_total = 0;
  int64_t types = 1;  // <unk>
  for (const auto &[gram, count] : counts[0]) {
    unigram_total += count;
    if (gram != kUnk && gram != kEos) ++types;
  }
  if (predicts_eos) ++types;
  event_types = types;
}

NgramModel NgramModel::Train(std::span<const Tokens> corpus,
                             const LmOptions &options) {
  if (corpus.empty()) throw LmError("cannot train on an empty corpus");
  NgramModel model;
  model.order_ = options.order;
  model.pos_mix_ = options.pos_mix;
  model.weights_ = options.weights.empty() && options.order >= 1
                       ? DefaultWeights(options.order)
                       : options.weights;
  model.Validate();

  std::unordered_map<std::string, int64_t> freq;
  for (const Tokens &sentence : corpus) {
    for (const Token &token : sentence) ++freq[ToLower(token.text)];
  }
  for (const auto &[word, count] : freq) {
    if (count > 1) model.vocabulary_.insert(word);
  }

  model.words_.counts.assign(model.order_, {});
  model.pos_.counts.assign(model.order_, {});
  for (const Tokens &sentence : corpus) {
    CountInto(Pad(model.WordSymbols(sentence), model.order_), model.order_,
              &model.words_.counts);
    CountInto(Pad(PosSymbols(sentence), model.order_), model.order_,
              &model.pos_.counts);
  }
  model.Finalize();
  return model;
}

void NgramModel::Validate() const {
  if (order_ < 1) throw LmError("order must be >= 1");
  if (!(pos_mix_ >= 0.0 && pos_mix_ <= 1.0)) {
    throw LmError("pos_mix must lie in [0, 1]");
  }
  if (static_cast<int>(weights_.size()) != order_) {
    throw LmError("need one interpolation weight per order");
  }
  double total = 0;
  for (double w : weights_) {
    if (!(w > 0)) throw LmError("interpolation weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw LmError("interpolation weights must sum to 1");
  }
}

void NgramModel::Finalize() {
  bool eos = order_ > 1;
  words_.Finalize(order_, eos);
  pos_.Finalize(order_, eos);
  vocabulary_.clear();
  for (const auto &[gram, count] : words_.counts[0]) {
    if (gram != kUnk && gram != kEos) vocabulary_.insert(gram);
  }
  tags_.clear();
  for (const auto &[gram, count] : pos_.counts[0]) {
    if (gram != kUnk && gram != kEos) tags_.insert(gram);
  }
}

std::string NgramModel::MapWord(const std::string &word) const {
  std::string lowered = ToLower(word);
  return vocabulary_.count(lowered) ? lowered : kUnk;
}

std::vector<std::string> NgramModel::WordSymbols(
    std::span<const Token> tokens) const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token &token : tokens) out.push_back(MapWord(token.text));
  return out;
}

std::vector<std::string> NgramModel::PosSymbols(std::span<const Token> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token &token : tokens) {
    out.push_back(token.pos.empty() ? kUnk : token.pos);
  }
  return out;
}

double NgramModel::UnigramProb(const Chain &chain,
                               const std::string &symbol) const {
  auto it = chain.counts[0].find(symbol);
  int64_t count = it == chain.counts[0].end() ? 0 : it->second;
  return static_cast<double>(count + 1) /
         static_cast<double>(chain.unigram_total + chain.event_types);
}

double NgramModel::Prob(const Chain &chain,
                        std::span<const std::string> history,
                        const std::string &symbol) const {
  double p = 0.0;
  double carry = 0.0;
  for (int n = order_; n >= 2; --n) {
    double weight = weights_[order_ - n] + carry;
    carry = 0.0;
    if (history.size() < static_cast<size_t>(n - 1)) {
      carry = weight;
      continue;
    }
    std::span<const std::string> ctx = history.last(n - 1);
    std::string ctx_key = Join(ctx);
    auto c = chain.contexts[n - 1].find(ctx_key);
    if (c == chain.contexts[n - 1].end()) {
      carry = weight;
      continue;
    }
    auto g = chain.counts[n - 1].find(ctx_key + ' ' + symbol);
    if (g != chain.counts[n - 1].end()) {
      p += weight * static_cast<double>(g->second) /
           static_cast<double>(c->second);
    }
  }
  return p + (weights_[order_ - 1] + carry) * UnigramProb(chain, symbol);
}

double NgramModel::ChainLogProb(const Chain &chain,
                                const std::vector<std::string> &symbols) const {
  std::vector<std::string> padded = Pad(symbols, order_);
  size_t first = order_ == 1 ? 0 : order_ - 1;
  double total = 0.0;
  for (size_t i = first; i < padded.size(); ++i) {
    std::span<const std::string> history(padded.data(), i);
    total += std::log(Prob(chain, history, padded[i]));
  }
  return total;
}

double NgramModel::WordLogProb(std::span<const Token> tokens) const {
  return ChainLogProb(words_, WordSymbols(tokens));
}

double NgramModel::PosLogProb(std::span<const Token> tokens) const {
  std::vector<std::string> tags = PosSymbols(tokens);
  for (std::string &tag : tags) {
    if (!tags_.count(tag)) tag = kUnk;
  }
  return ChainLogProb(pos_, tags);
}

double NgramModel::SentenceLogProb(std::span<const Token> tokens) const {
  if (tokens.empty()) throw LmError("cannot score an empty sentence");
  return pos_mix_ * PosLogProb(tokens) + (1.0 - pos_mix_) * WordLogProb(tokens);
}

double NgramModel::UnigramLogProb(std::span<const Token> tokens) const {
  double total = 0.0;
  for (const std::string &word : WordSymbols(tokens)) {
    total += std::log(UnigramProb(words_, word));
  }
  return total;
}

SlorScore NgramModel::Slor(std::span<const Token> tokens) const {
  if (tokens.empty()) throw LmError("cannot score an empty sentence");
  double lm = SentenceLogProb(tokens);
  double unigram = UnigramLogProb(tokens);
  return {(lm - unigram) / static_cast<double>(tokens.size())};
}

double NgramModel::WordProb(std::span<const std::string> history,
                            const std::string &word) const {
  std::vector<std::string> mapped;
  for (const std::string &h : history) {
    mapped.push_back(h == kBos || h == kEos ? h : MapWord(h));
  }
  return Prob(words_, mapped, word == kEos ? word : MapWord(word));
}

double NgramModel::WordRelativeFrequency(std::span<const std::string> history,
                                         const std::string &word) const {
  int n = static_cast<int>(history.size()) + 1;
  if (n > order_) throw LmError("history longer than the model order");
  std::vector<std::string> gram;
  for (const std::string &h : history) {
    gram.push_back(h == kBos || h == kEos ? h : MapWord(h));
  }
  if (n == 1) {
    auto it = words_.counts[0].find(MapWord(word));
    int64_t count = it == words_.counts[0].end() ? 0 : it->second;
    return static_cast<double>(count) / static_cast<double>(words_.unigram_total);
  }
  auto c = words_.contexts[n - 1].find(Join(gram));
  if (c == words_.contexts[n - 1].end()) return 0.0;
  gram.push_back(word == kEos ? word : MapWord(word));
  auto g = words_.counts[n - 1].find(Join(gram));
  if (g == words_.counts[n - 1].end()) return 0.0;
  return static_cast<double>(g->second) / static_cast<double>(c->second);
}

std::string NgramModel::ToJson() const {
  json obj;
  obj["format"] = kFormat;
  obj["version"] = kVersion;
  obj["order"] = order_;
  obj["pos_mix"] = pos_mix_;
  obj["weights"] = weights_;
  obj["word_counts"] = words_.counts;
  obj["pos_counts"] = pos_.counts;
  return obj.dump();
}

NgramModel NgramModel::FromJson(const std::string &text) {
  NgramModel model;
  try {
    json obj = json::parse(text);
    if (obj.at("format") != kFormat) throw LmError("not an n-gram model file");
    if (obj.at("version") != kVersion) {
      throw LmError("unsupported model version " + obj.at("version").dump());
    }
    model.order_ = obj.at("order").get<int>();
    model.pos_mix_ = obj.at("pos_mix").get<double>();
    model.weights_ = obj.at("weights").get<std::vector<double>>();
    model.words_.counts =
        obj.at("word_counts").get<std::vector<std::map<std::string, int64_t>>>();
    model.pos_.counts =
        obj.at("pos_counts").get<std::vector<std::map<std::string, int64_t>>>();
  } catch (const json::exception &e) {
    throw LmError(std::string("malformed model file: ") + e.what());
  }
  model.Validate();
  if (static_cast<int>(model.words_.counts.size()) != model.order_ ||
      static_cast<int>(model.pos_.counts.size()) != model.order_) {
    throw LmError("count tables do not match the model order");
  }
  model.Finalize();
  return model;
}

void NgramModel::Save(const std::string &path) const {
  std::ofstream out(path);
  if (!out) throw LmError("cannot write " + path);
  out << ToJson() << '\n';
  if (!out) throw LmError("failed writing " + path);
}

NgramModel NgramModel::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LmError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromJson(buffer.str());
}

}  // namespace russ
