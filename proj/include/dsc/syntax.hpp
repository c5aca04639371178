#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dsc/corpus.hpp"

namespace dsc {

// An object: a subtree whose root carries an object category. Objects of one
// sentence form a tree under subtree containment (parent = nearest enclosing
// object); spans are contiguous position ranges.
struct ObjectInfo {
  NodePath path;
  std::string label;
  bool is_word = false;        // object-word leaf?
  int first_pos = 0;           // 1-based span [first_pos, last_pos]
  int last_pos = 0;
  int parent = -1;             // object-tree parent, -1 at the root
  std::vector<int> children;   // object-tree children, left to right
  int depth = 0;               // depth in the object tree
};

// Maximal groups of objects sharing a completion. Each class is a chain
// min <= ... <= max, where max is the common completion. A class whose min
// is an object-word leaf evaluates from that word; otherwise the min is a
// join node splitting into exactly two child classes.
struct ClassNode {
  enum class Kind { Leaf, Join };
  Kind kind = Kind::Leaf;
  int min_obj = -1;
  int max_obj = -1;
  std::vector<int> members;    // object ids, min first
  int leaf_position = 0;       // Kind::Leaf: word position of min
  int left = -1;               // Kind::Join: child class ids
  int right = -1;
};

struct ClassTree {
  std::vector<ClassNode> nodes;
  int root = -1;
  std::vector<int> class_of_object;  // object id -> class id
};

// Raised condition, not an exception: recorded so analysis of the rest of
// the sentence stays available.
struct ConjunctionIssue {
  NodePath path;
  std::string detail;
};

class ObjectAnalysis {
public:
  ObjectAnalysis() = default;

  const std::string& sentence_id() const { return sentence_id_; }
  const std::vector<Word>& words() const { return words_; }
  const Word& word_at(int position) const { return words_[static_cast<std::size_t>(position) - 1]; }
  int word_count() const { return static_cast<int>(words_.size()); }

  const std::vector<ObjectInfo>& objects() const { return objects_; }
  const ObjectInfo& object(int id) const { return objects_[static_cast<std::size_t>(id)]; }
  int object_count() const { return static_cast<int>(objects_.size()); }
  int root_object() const { return root_object_; }

  // Positions of object-word leaves, ascending.
  const std::vector<int>& object_word_positions() const { return object_word_positions_; }

  // 1-based rank of an object-word position among the sentence's object
  // words; 0 if the position is not an object word.
  int object_rank(int position) const;

  // Object id of the object-word leaf at a position, -1 if none.
  int object_at_position(int position) const;

  std::vector<int> span(int obj) const;                 // positions, ascending
  std::set<Word> word_set(int obj) const;

  int completion(int obj) const { return completion_[static_cast<std::size_t>(obj)]; }

  // Instances separating an object from its completion.
  std::vector<int> modifier_instances(int obj) const;

  bool disjoint(int a, int b) const;
  bool left_of(int a, int b) const;                     // disjoint and a before b
  int join(int a, int b) const;                         // nearest common ancestor

  // Instances strictly between the completions of a and b inside their join;
  // empty unless left_of(a, b).
  std::vector<int> interaction_instances(int a, int b) const;

  const std::optional<ClassTree>& class_tree() const { return class_tree_; }
  const std::optional<ConjunctionIssue>& conjunction_issue() const { return conjunction_issue_; }

private:
  friend ObjectAnalysis analyze_sentence(const Sentence&, const CategoryConfig&);
  friend struct AnalysisBuilder;

  std::string sentence_id_;
  std::vector<Word> words_;
  std::vector<ObjectInfo> objects_;
  int root_object_ = -1;
  std::vector<int> completion_;
  std::vector<int> object_word_positions_;
  std::optional<ClassTree> class_tree_;
  std::optional<ConjunctionIssue> conjunction_issue_;
};

// Requires a sentence that passed validate(); behavior on invalid trees is
// unspecified beyond not crashing.
ObjectAnalysis analyze_sentence(const Sentence& sentence, const CategoryConfig& config);

}  // namespace dsc
