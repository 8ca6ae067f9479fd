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

#ifndef RUSS_TREEBANK_H_
#define RUSS_TREEBANK_H_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace russ {

// A single word of a sentence together with its tags.
struct Token {
  std::string text;
  std::string pos;
  std::string dep;
  int index = 0;

  bool operator==(const Token &other) const = default;
};

using Tokens = std::vector<Token>;

// Path of child indices from the root. The root is the empty path.
struct Position {
  std::vector<int> path;

  bool is_root() const { return path.empty(); }
  bool operator==(const Position &other) const = default;
  auto operator<=>(const Position &other) const = default;
};

std::string ToString(const Position &pos);

// Error raised for malformed bracket expressions. offset() is the byte
// offset in the input at which the problem was detected.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &what, size_t offset);
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

// Error raised when a position does not resolve within a tree, or when a
// tree does not line up with a token sequence.
class TreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Labeled ordered constituency tree. A node is either internal (non-empty
// children) or a preterminal carrying exactly one leaf token. Trees are
// values; all edits return new trees.
class ParseTree {
 public:
  ParseTree() = default;

  static ParseTree Leaf(std::string label, Token token);
  static ParseTree Node(std::string label, std::vector<ParseTree> children);

  const std::string &label() const { return label_; }
  const std::vector<ParseTree> &children() const { return children_; }
  const std::optional<Token> &leaf() const { return leaf_; }
  bool is_leaf() const { return leaf_.has_value(); }

  // Number of leaf tokens dominated by this node.
  size_t num_leaves() const;

  // Resolves a position; throws TreeError if the path leaves the tree.
  const ParseTree &At(const Position &pos) const;

  // Leaf tokens in left-to-right order.
  Tokens Leaves() const;

  // Renders the tree in single-line bracket form, e.g. "(S (NN a))".
  std::string ToBracketed() const;

  bool operator==(const ParseTree &other) const = default;

 private:
  void CollectLeaves(Tokens *out) const;
  void AppendBracketed(std::string *out) const;

  std::string label_;
  std::vector<ParseTree> children_;
  std::optional<Token> leaf_;
};

// Parses one bracketed tree "(LABEL ...)" whose preterminals have the form
// "(TAG word)". Leaves get indices 0..n-1 and pos = TAG.
ParseTree ParseBracketed(std::string_view text);

// All node positions in preorder (root first, children left to right).
std::vector<Position> Positions(const ParseTree &tree);

// Contiguous token span dominated by the node at pos.
Tokens LeavesUnder(const ParseTree &tree, const Position &pos);

// Half-open leaf range [begin, end) covered by the node at pos.
std::pair<size_t, size_t> LeafRange(const ParseTree &tree,
                                    const Position &pos);

// Tree with the node at pos removed. Ancestors left without children are
// removed as well. Leaf indices are renumbered from 0. Removing the root
// or emptying the whole tree yields a TreeError.
ParseTree RemoveSubtree(const ParseTree &tree, const Position &pos);

// Copy of the subtree at pos as a new root with leaf indices renumbered.
ParseTree ExtractSubtree(const ParseTree &tree, const Position &pos);

// Overwrites leaf POS/dep tags with non-empty tags from tokens. Throws
// TreeError unless the leaves match tokens one to one by text.
ParseTree AlignTokens(const ParseTree &tree, std::span<const Token> tokens);

// Space-joined token texts.
std::string JoinText(std::span<const Token> tokens);

}  // namespace russ

#endif  // RUSS_TREEBANK_H_
