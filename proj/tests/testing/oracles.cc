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


#include "testing/oracles.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace russ::testing {

namespace {

void Words(const ParseTree &node, std::vector<std::string> *out) {
  if (node.is_leaf()) {
    out->push_back(node.leaf()->text);
    return;
  }
  for (const ParseTree &child : node.children()) Words(child, out);
}

std::string StripFunctionTag(const std::string &label) {
  if (label.empty() || label[0] == '-') return label;
  std::string out;
  for (char ch : label) {
    if (ch == '-' || ch == '=') break;
    out += ch;
  }
  return out;
}

bool Deletable(const std::string &label) {
  static const char *kTags[] = {"PP",   "ADVP",  "ADJP", "SBAR", "S",
                                "VP",   "PRT",   "INTJ", "CONJP", "UCP",
                                "FRAG", "WHADVP", "WHPP", "X"};
  std::string base = StripFunctionTag(label);
  for (const char *tag : kTags) {
    if (base == tag) return true;
  }
  return false;
}

bool Extractable(const std::string &label) {
  std::string base = StripFunctionTag(label);
  return base == "S" || base == "SBAR";
}

// Walks the tree, tracking the path, and records each edit by comparing the
// full word list with the words under the current node.
void Enumerate(const ParseTree &root, const ParseTree &node,
               std::vector<int> &path, int t, std::vector<BruteEdit> *out) {
  if (node.is_leaf()) return;
  std::vector<std::string> all;
  Words(root, &all);
  // Count leaves before this node by walking the path from the root.
  size_t before = 0;
  const ParseTree *cur = &root;
  for (int step : path) {
    for (int k = 0; k < step; ++k) {
      std::vector<std::string> w;
      Words(cur->children()[k], &w);
      before += w.size();
    }
    cur = &cur->children()[step];
  }
  std::vector<std::string> inside;
  Words(node, &inside);

  if (!path.empty() && Deletable(node.label())) {
    std::vector<std::string> kept(all.begin(), all.begin() + before);
    kept.insert(kept.end(), all.begin() + before + inside.size(), all.end());
    if (static_cast<int>(kept.size()) > t) {
      out->push_back({"DELETE", path, kept});
    }
  }
  if (Extractable(node.label()) && static_cast<int>(inside.size()) > t) {
    out->push_back({"EXTRACT", path, inside});
  }
  for (size_t i = 0; i < node.children().size(); ++i) {
    path.push_back(static_cast<int>(i));
    Enumerate(root, node.children()[i], path, t, out);
    path.pop_back();
  }
}

const char *kWords[] = {"the", "man", "sued", "a",    "firm", "in",
                        "court", "on", "friday", "who", "said", "that"};

ParseTree Grow(std::mt19937 &rng, int budget, int *used, int *word) {
  static const std::vector<std::string> kLabels = {
      "NP", "VP", "PP", "S", "SBAR", "ADVP", "ADJP", "WHNP", "QP", "PRT",
      "S-TPC", "NP-SBJ", "PP-LOC", "SBAR-ADV", "FRAG", "UCP", "X", "INTJ"};
  auto leaf = [&] {
    ++*used;
    std::string text = kWords[(*word)++ % std::size(kWords)];
    return ParseTree::Leaf("NN", Token{text, "NN", "", 0});
  };
  int remaining = budget - *used;
  if (remaining <= 2 || std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
    return leaf();
  }
  ++*used;
  std::string label =
      kLabels[std::uniform_int_distribution<size_t>(0, kLabels.size() - 1)(rng)];
  int arity = std::uniform_int_distribution<int>(1, 3)(rng);
  std::vector<ParseTree> children;
  for (int i = 0; i < arity && budget - *used >= 1; ++i) {
    children.push_back(Grow(rng, budget, used, word));
  }
  if (children.empty()) children.push_back(leaf());
  return ParseTree::Node(label, std::move(children));
}

}  // namespace

std::vector<BruteEdit> BruteForceEdits(const ParseTree &tree, int t) {
  std::vector<BruteEdit> out;
  std::vector<int> path;
  Enumerate(tree, tree, path, t, &out);
  return out;
}

ParseTree RandomTree(std::mt19937 &rng, int max_nodes) {
  int used = 1;
  int word = std::uniform_int_distribution<int>(0, 11)(rng);
  std::vector<ParseTree> children;
  int arity = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < arity && max_nodes - used >= 1; ++i) {
    children.push_back(Grow(rng, max_nodes, &used, &word));
  }
  ParseTree tree = ParseTree::Node("S", std::move(children));
  // Leaves carry their sentence position.
  return ParseBracketed(tree.ToBracketed());
}

Tokens RandomSentence(std::mt19937 &rng, const std::vector<Tokens> &pool,
                      int n) {
  std::vector<const Token *> all;
  for (const Tokens &sentence : pool) {
    for (const Token &token : sentence) all.push_back(&token);
  }
  std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
  Tokens out;
  for (int i = 0; i < n; ++i) {
    Token token = *all[pick(rng)];
    token.index = i;
    out.push_back(token);
  }
  return out;
}

SpanAnswer ShiftedBackend::Answer(const std::string &question,
                                  std::span<const Token> context) const {
  SpanAnswer answer = inner_.Answer(question, context);
  if (selector_(question)) answer.score += shift_;
  return answer;
}

bool IsPassiveQuestion(const std::string &question) {
  const std::string suffix = " by someone?";
  return question.starts_with("Who was ") && question.ends_with(suffix);
}

double ReferenceF1(const std::string &prediction, const std::string &gold) {
  auto bag = [](const std::string &text) {
    std::string clean;
    for (char ch : text) {
      if (std::ispunct(static_cast<unsigned char>(ch))) continue;
      clean += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    std::map<std::string, int> counts;
    std::istringstream in(clean);
    std::string w;
    int n = 0;
    while (in >> w) {
      if (w == "a" || w == "an" || w == "the") continue;
      ++counts[w];
      ++n;
    }
    return std::make_pair(counts, n);
  };
  auto [p, np] = bag(prediction);
  auto [g, ng] = bag(gold);
  if (np == 0 || ng == 0) return np == ng ? 1.0 : 0.0;
  int common = 0;
  for (const auto &[w, c] : p) {
    auto it = g.find(w);
    if (it != g.end()) common += std::min(c, it->second);
  }
  if (common == 0) return 0.0;
  double precision = static_cast<double>(common) / np;
  double recall = static_cast<double>(common) / ng;
  return 2 * precision * recall / (precision + recall);
}

const std::vector<F1Case> &HandF1Cases() {
  static const std::vector<F1Case> cases = {
      {"businessman", "businessman", 1.0},
      // {employee, working, in, secretariat} vs {employee}: P 1/4, R 1.
      {"an employee working in the secretariat", "employee", 0.4},
      {"Nawaz Sharif", "the opposition", 0.0},
      {"the opposition leaders", "opposition leaders", 1.0},
      // P 2/3, R 1.
      {"his former employees", "former employees", 0.8},
      // P 1/3, R 1.
      {"Police in Karachi", "Police", 0.5},
      {"", "the firm", 0.0},
      {"A court, in Cairo!", "court in cairo", 1.0},
      // Multiset overlap counts "rebel" once: P 2/3, R 1.
      {"rebel rebel fighters", "rebel fighters", 0.8},
      // Both normalize to nothing.
      {"the", "a", 1.0},
  };
  return cases;
}

}  // namespace russ::testing
