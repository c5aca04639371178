#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dsc/errors.hpp"

namespace dsc {

// Category scheme for a corpus. Lexical categories label leaves, phrasal
// categories label internal nodes; the object subsets mark which labels give
// rise to objects. Fully user-configurable; defaults() is a conventional set.
struct CategoryConfig {
  std::set<std::string> lexical;
  std::set<std::string> phrasal;
  std::set<std::string> object_lexical;
  std::set<std::string> object_phrasal;
  std::string conjunction = "Conj";
  bool lowercase = false;

  static CategoryConfig defaults();

  // Throws BadConfig unless: lexical/phrasal non-empty and disjoint, object
  // sets contained in their parent sets, conjunction a lexical category.
  void check() const;

  bool is_lexical(const std::string& c) const { return lexical.count(c) != 0; }
  bool is_phrasal(const std::string& c) const { return phrasal.count(c) != 0; }
  bool is_object_lexical(const std::string& c) const { return object_lexical.count(c) != 0; }
  bool is_object_category(const std::string& c) const {
    return object_lexical.count(c) != 0 || object_phrasal.count(c) != 0;
  }

  bool operator==(const CategoryConfig&) const = default;
};

// A word type: surface form plus lexical category. Two leaves with the same
// surface but different categories are different words.
struct Word {
  std::string surface;
  std::string cat;

  auto operator<=>(const Word&) const = default;

  // "surface/CAT" wire form; parse_word_spec splits on the last '/'.
  std::string spec() const { return surface + "/" + cat; }
};

Word parse_word_spec(const std::string& text);

struct TreeNode {
  std::string label;
  std::string surface;         // leaves only
  int position = 0;            // 1-based leaf position; 0 for internal nodes
  std::vector<TreeNode> children;

  bool is_leaf() const { return children.empty(); }
  bool operator==(const TreeNode&) const = default;
};

// Child-index path from the root; empty path addresses the root itself.
using NodePath = std::vector<int>;

const TreeNode* node_at(const TreeNode& root, const NodePath& path);
std::string path_to_string(const NodePath& path);

struct Sentence {
  std::string id;
  std::vector<Word> words;     // words[p-1] is the word at position p
  TreeNode tree;

  bool operator==(const Sentence&) const = default;
};

// One concrete occurrence of a word: (sentence id, 1-based position).
struct InstanceRef {
  std::string sentence;
  int position = 0;

  auto operator<=>(const InstanceRef&) const = default;
};

struct Corpus {
  CategoryConfig config;
  std::vector<Sentence> sentences;

  const Sentence* find(const std::string& id) const;
  bool operator==(const Corpus&) const = default;
};

enum class ViolationCode {
  NonBinaryNode,
  TernaryMiddleNotConj,
  InternalWithLexicalLabel,
  LeafWithPhrasalLabel,
  RootNotObject,
  ObjectWithoutObjectWord,
};

std::string_view to_string(ViolationCode code);

struct Violation {
  ViolationCode code;
  std::string sentence;
  NodePath path;
  std::string detail;
};

struct ValidationFailed : DscError {
  explicit ValidationFailed(std::vector<Violation> violations);
  std::vector<Violation> violations;
};

// Parses bracketed trees from text. Whitespace-insensitive; '#' starts a
// comment running to end of line; a comment of the form "# id: NAME" names
// the next tree. Unnamed sentences get ids "1", "2", ... in input order.
// Throws SyntaxError / UnknownCategory / LeafShape.
Corpus parse_corpus(std::string_view text, const CategoryConfig& config);

// Inverse of parse_corpus up to whitespace: parse(serialize(c)) == c.
std::string serialize_corpus(const Corpus& corpus);

// Structural checks beyond what the grammar of the format can express:
// arity (binary, or ternary with a conjunction leaf in the middle), label
// placement, object root, and object coverage. Empty result means valid.
std::vector<Violation> validate(const Corpus& corpus);

// All word instances in corpus order.
std::vector<std::pair<InstanceRef, Word>> instances(const Corpus& corpus);

}  // namespace dsc
