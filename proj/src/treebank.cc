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

#include "russ/treebank.h"

#include <cctype>
#include <utility>

namespace russ {

namespace {

bool IsSpace(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool IsAtomChar(char c) { return !IsSpace(c) && c != '(' && c != ')'; }

// Recursive-descent reader over a bracket string.
class BracketReader {
 public:
  explicit BracketReader(std::string_view text) : text_(text) {}

  ParseTree ReadRoot() {
    SkipSpace();
    if (AtEnd()) throw ParseError("empty tree", pos_);
    if (Peek() != '(') throw ParseError("expected '('", pos_);
    ParseTree root = ReadNode();
    SkipSpace();
    if (!AtEnd()) {
      if (Peek() == ')') throw ParseError("unbalanced ')'", pos_);
      throw ParseError("multiple roots", pos_);
    }
    return root;
  }

 private:
  bool AtEnd() const { return pos_ >= text_.size(); }
  char Peek() const { return text_[pos_]; }

  void SkipSpace() {
    while (!AtEnd() && IsSpace(Peek())) ++pos_;
  }

  std::string_view ReadAtom() {
    size_t start = pos_;
    while (!AtEnd() && IsAtomChar(Peek())) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  ParseTree ReadNode() {
    size_t open = pos_;
    ++pos_;  // '('
    SkipSpace();
    if (AtEnd()) throw ParseError("unbalanced '('", open);
    std::string_view label = ReadAtom();
    if (label.empty()) {
      if (Peek() == ')') throw ParseError("empty tree", open);
      throw ParseError("empty label", pos_);
    }
    SkipSpace();
    if (AtEnd()) throw ParseError("unbalanced '('", open);

    if (Peek() != '(' && Peek() != ')') {
      // Preterminal: (TAG word)
      std::string_view word = ReadAtom();
      SkipSpace();
      if (AtEnd()) throw ParseError("unbalanced '('", open);
      if (Peek() != ')') {
        throw ParseError("preterminal must hold exactly one word", pos_);
      }
      ++pos_;
      Token token;
      token.text = std::string(word);
      token.pos = std::string(label);
      token.index = next_index_++;
      return ParseTree::Leaf(std::string(label), std::move(token));
    }

    std::vector<ParseTree> children;
    while (true) {
      SkipSpace();
      if (AtEnd()) throw ParseError("unbalanced '('", open);
      if (Peek() == ')') {
        ++pos_;
        break;
      }
      if (Peek() != '(') {
        throw ParseError("bare word inside a phrase node", pos_);
      }
      children.push_back(ReadNode());
    }
    if (children.empty()) throw ParseError("node without children", open);
    return ParseTree::Node(std::string(label), std::move(children));
  }

  std::string_view text_;
  size_t pos_ = 0;
  int next_index_ = 0;
};

void PreorderPositions(const ParseTree &node, std::vector<int> *path,
                       std::vector<Position> *out) {
  out->push_back(Position{*path});
  for (size_t i = 0; i < node.children().size(); ++i) {
    path->push_back(static_cast<int>(i));
    PreorderPositions(node.children()[i], path, out);
    path->pop_back();
  }
}

// Copies the tree renumbering leaves from *next.
ParseTree Renumber(const ParseTree &node, int *next) {
  if (node.is_leaf()) {
    Token token = *node.leaf();
    token.index = (*next)++;
    return ParseTree::Leaf(node.label(), std::move(token));
  }
  std::vector<ParseTree> children;
  children.reserve(node.children().size());
  for (const ParseTree &child : node.children()) {
    children.push_back(Renumber(child, next));
  }
  return ParseTree::Node(node.label(), std::move(children));
}

// Returns the tree without the node at path[depth..]; nullopt if the node
// itself disappears.
std::optional<ParseTree> Without(const ParseTree &node,
                                 const std::vector<int> &path, size_t depth) {
  if (depth == path.size()) return std::nullopt;
  std::vector<ParseTree> children;
  for (size_t i = 0; i < node.children().size(); ++i) {
    if (static_cast<int>(i) == path[depth]) {
      auto kept = Without(node.children()[i], path, depth + 1);
      if (kept) children.push_back(std::move(*kept));
    } else {
      children.push_back(node.children()[i]);
    }
  }
  if (children.empty()) return std::nullopt;
  return ParseTree::Node(node.label(), std::move(children));
}

}  // namespace

std::string ToString(const Position &pos) {
  std::string out = "[";
  for (size_t i = 0; i < pos.path.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(pos.path[i]);
  }
  out += "]";
  return out;
}

ParseError::ParseError(const std::string &what, size_t offset)
    : std::runtime_error(what + " at offset " + std::to_string(offset)),
      offset_(offset) {}

ParseTree ParseTree::Leaf(std::string label, Token token) {
  ParseTree tree;
  tree.label_ = std::move(label);
  tree.leaf_ = std::move(token);
  return tree;
}

ParseTree ParseTree::Node(std::string label, std::vector<ParseTree> children) {
  ParseTree tree;
  tree.label_ = std::move(label);
  tree.children_ = std::move(children);
  return tree;
}

size_t ParseTree::num_leaves() const {
  if (is_leaf()) return 1;
  size_t n = 0;
  for (const ParseTree &child : children_) n += child.num_leaves();
  return n;
}

const ParseTree &ParseTree::At(const Position &pos) const {
  const ParseTree *node = this;
  for (int index : pos.path) {
    if (index < 0 || static_cast<size_t>(index) >= node->children_.size()) {
      throw TreeError("position " + ToString(pos) + " does not resolve");
    }
    node = &node->children_[index];
  }
  return *node;
}

Tokens ParseTree::Leaves() const {
  Tokens out;
  CollectLeaves(&out);
  return out;
}

void ParseTree::CollectLeaves(Tokens *out) const {
  if (is_leaf()) {
    out->push_back(*leaf_);
    return;
  }
  for (const ParseTree &child : children_) child.CollectLeaves(out);
}

std::string ParseTree::ToBracketed() const {
  std::string out;
  AppendBracketed(&out);
  return out;
}

void ParseTree::AppendBracketed(std::string *out) const {
  *out += "(";
  *out += label_;
  if (is_leaf()) {
    *out += " ";
    *out += leaf_->text;
  } else {
    for (const ParseTree &child : children_) {
      *out += " ";
      child.AppendBracketed(out);
    }
  }
  *out += ")";
}

ParseTree ParseBracketed(std::string_view text) {
  return BracketReader(text).ReadRoot();
}

std::vector<Position> Positions(const ParseTree &tree) {
  std::vector<Position> out;
  std::vector<int> path;
  PreorderPositions(tree, &path, &out);
  return out;
}

std::pair<size_t, size_t> LeafRange(const ParseTree &tree,
                                    const Position &pos) {
  const ParseTree *node = &tree;
  size_t begin = 0;
  for (int index : pos.path) {
    if (index < 0 || static_cast<size_t>(index) >= node->children().size()) {
      throw TreeError("position " + ToString(pos) + " does not resolve");
    }
    for (int i = 0; i < index; ++i) begin += node->children()[i].num_leaves();
    node = &node->children()[index];
  }
  return {begin, begin + node->num_leaves()};
}

Tokens LeavesUnder(const ParseTree &tree, const Position &pos) {
  return tree.At(pos).Leaves();
}

ParseTree RemoveSubtree(const ParseTree &tree, const Position &pos) {
  if (pos.is_root()) throw TreeError("cannot remove the root");
  tree.At(pos);  // validates the path
  auto kept = Without(tree, pos.path, 0);
  if (!kept) throw TreeError("removal leaves an empty tree");
  int next = 0;
  return Renumber(*kept, &next);
}

ParseTree ExtractSubtree(const ParseTree &tree, const Position &pos) {
  int next = 0;
  return Renumber(tree.At(pos), &next);
}

namespace {

ParseTree Overlay(const ParseTree &node, std::span<const Token> tokens,
                  size_t *next) {
  if (node.is_leaf()) {
    const Token &src = tokens[(*next)++];
    Token token = *node.leaf();
    if (token.text != src.text) {
      throw TreeError("parse leaf '" + token.text + "' does not match token '" +
                      src.text + "' at index " + std::to_string(token.index));
    }
    if (!src.pos.empty()) token.pos = src.pos;
    if (!src.dep.empty()) token.dep = src.dep;
    return ParseTree::Leaf(node.label(), std::move(token));
  }
  std::vector<ParseTree> children;
  children.reserve(node.children().size());
  for (const ParseTree &child : node.children()) {
    children.push_back(Overlay(child, tokens, next));
  }
  return ParseTree::Node(node.label(), std::move(children));
}

}  // namespace

ParseTree AlignTokens(const ParseTree &tree, std::span<const Token> tokens) {
  size_t leaves = tree.num_leaves();
  if (leaves != tokens.size()) {
    throw TreeError("parse has " + std::to_string(leaves) + " leaves for " +
                    std::to_string(tokens.size()) + " tokens");
  }
  size_t next = 0;
  return Overlay(tree, tokens, &next);
}

std::string JoinText(std::span<const Token> tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i].text;
  }
  return out;
}

}  // namespace russ
