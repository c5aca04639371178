#include "dsc/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace dsc {

int ObjectAnalysis::object_rank(int position) const {
  auto it = std::lower_bound(object_word_positions_.begin(), object_word_positions_.end(), position);
  if (it == object_word_positions_.end() || *it != position) return 0;
  return static_cast<int>(it - object_word_positions_.begin()) + 1;
}

int ObjectAnalysis::object_at_position(int position) const {
  for (int i = 0; i < object_count(); ++i) {
    const ObjectInfo& o = objects_[static_cast<std::size_t>(i)];
    if (o.is_word && o.first_pos == position) return i;
  }
  return -1;
}

std::vector<int> ObjectAnalysis::span(int obj) const {
  const ObjectInfo& o = object(obj);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(o.last_pos - o.first_pos + 1));
  for (int p = o.first_pos; p <= o.last_pos; ++p) out.push_back(p);
  return out;
}

std::set<Word> ObjectAnalysis::word_set(int obj) const {
  const ObjectInfo& o = object(obj);
  std::set<Word> out;
  for (int p = o.first_pos; p <= o.last_pos; ++p) out.insert(word_at(p));
  return out;
}

std::vector<int> ObjectAnalysis::modifier_instances(int obj) const {
  const ObjectInfo& o = object(obj);
  const ObjectInfo& c = object(completion(obj));
  std::vector<int> out;
  for (int p = c.first_pos; p < o.first_pos; ++p) out.push_back(p);
  for (int p = o.last_pos + 1; p <= c.last_pos; ++p) out.push_back(p);
  return out;
}

bool ObjectAnalysis::disjoint(int a, int b) const {
  const ObjectInfo& x = object(a);
  const ObjectInfo& y = object(b);
  return x.last_pos < y.first_pos || y.last_pos < x.first_pos;
}

bool ObjectAnalysis::left_of(int a, int b) const {
  return object(a).last_pos < object(b).first_pos;
}

int ObjectAnalysis::join(int a, int b) const {
  int x = a;
  int y = b;
  while (object(x).depth > object(y).depth) x = object(x).parent;
  while (object(y).depth > object(x).depth) y = object(y).parent;
  while (x != y) {
    x = object(x).parent;
    y = object(y).parent;
  }
  return x;
}

std::vector<int> ObjectAnalysis::interaction_instances(int a, int b) const {
  std::vector<int> out;
  if (!left_of(a, b)) return out;
  const ObjectInfo& j = object(join(a, b));
  const ObjectInfo& ca = object(completion(a));
  const ObjectInfo& cb = object(completion(b));
  for (int p = j.first_pos; p <= j.last_pos; ++p) {
    if (p >= ca.first_pos && p <= ca.last_pos) continue;
    if (p >= cb.first_pos && p <= cb.last_pos) continue;
    out.push_back(p);
  }
  return out;
}

struct AnalysisBuilder {
  const Sentence& sentence;
  const CategoryConfig& config;
  ObjectAnalysis& a;

  // Collects objects in preorder; returns the node's span as [first, last].
  std::pair<int, int> walk(const TreeNode& node, NodePath& path, int parent_obj, int depth) {
    bool is_object = config.is_object_category(node.label);
    int my_id = -1;
    if (is_object) {
      my_id = static_cast<int>(a.objects_.size());
      ObjectInfo info;
      info.path = path;
      info.label = node.label;
      info.is_word = node.is_leaf();
      info.parent = parent_obj;
      info.depth = depth;
      a.objects_.push_back(std::move(info));
      if (parent_obj >= 0)
        a.objects_[static_cast<std::size_t>(parent_obj)].children.push_back(my_id);
    }
    int child_parent = is_object ? my_id : parent_obj;
    int child_depth = is_object ? depth + 1 : depth;
    std::pair<int, int> span;
    if (node.is_leaf()) {
      span = {node.position, node.position};
    } else {
      span = {0, 0};
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        path.push_back(static_cast<int>(i));
        auto child_span = walk(node.children[i], path, child_parent, child_depth);
        path.pop_back();
        if (span.first == 0) span.first = child_span.first;
        span.second = child_span.second;
      }
    }
    if (is_object) {
      a.objects_[static_cast<std::size_t>(my_id)].first_pos = span.first;
      a.objects_[static_cast<std::size_t>(my_id)].last_pos = span.second;
    }
    return span;
  }

  // The completion of T is reached by walking up the object tree while the
  // parent has no other object branch: the first parent with a second object
  // child introduces an object disjoint from T and stops the walk.
  void compute_completions() {
    a.completion_.assign(a.objects_.size(), -1);
    for (int id = 0; id < a.object_count(); ++id) {
      const ObjectInfo& o = a.objects_[static_cast<std::size_t>(id)];
      if (o.parent < 0) {
        a.completion_[static_cast<std::size_t>(id)] = id;
        continue;
      }
      const ObjectInfo& p = a.objects_[static_cast<std::size_t>(o.parent)];
      // Parents precede children in preorder, so completion_[parent] is set.
      a.completion_[static_cast<std::size_t>(id)] =
          p.children.size() == 1 ? a.completion_[static_cast<std::size_t>(o.parent)] : id;
    }
  }

  void build_classes() {
    // Refuse coordinated structure up front: an object sitting on a ternary
    // tree node cannot take part in the binary evaluation recursion.
    for (const auto& o : a.objects_) {
      const TreeNode* n = node_at(sentence.tree, o.path);
      assert(n != nullptr);
      if (n->children.size() == 3) {
        a.conjunction_issue_ = ConjunctionIssue{
            o.path, "sentence '" + sentence.id + "': coordinated object at " +
                        path_to_string(o.path)};
        return;
      }
    }

    std::map<int, std::vector<int>> groups;  // completion -> members
    for (int id = 0; id < a.object_count(); ++id)
      groups[a.completion_[static_cast<std::size_t>(id)]].push_back(id);

    ClassTree tree;
    tree.class_of_object.assign(a.objects_.size(), -1);
    std::map<int, int> class_of_max;  // completion object -> class id
    for (const auto& [max_obj, members] : groups) {
      ClassNode node;
      node.max_obj = max_obj;
      node.members = members;
      // Members form a chain; the deepest is the least element.
      std::sort(node.members.begin(), node.members.end(), [&](int x, int y) {
        return a.objects_[static_cast<std::size_t>(x)].depth >
               a.objects_[static_cast<std::size_t>(y)].depth;
      });
      node.min_obj = node.members.front();
      int class_id = static_cast<int>(tree.nodes.size());
      for (int m : members) tree.class_of_object[static_cast<std::size_t>(m)] = class_id;
      class_of_max[max_obj] = class_id;
      tree.nodes.push_back(std::move(node));
    }

    for (auto& node : tree.nodes) {
      const ObjectInfo& min_o = a.objects_[static_cast<std::size_t>(node.min_obj)];
      if (min_o.is_word) {
        node.kind = ClassNode::Kind::Leaf;
        node.leaf_position = min_o.first_pos;
        continue;
      }
      node.kind = ClassNode::Kind::Join;
      // The maximal objects strictly below a class minimum are its object
      // children; on validated input a minimum cannot have fewer than two
      // (a lone child would share its completion and sit deeper).
      if (min_o.children.size() < 2) return;  // unvalidated input; leave no class tree
      if (min_o.children.size() > 2) {
        a.conjunction_issue_ = ConjunctionIssue{
            min_o.path, "sentence '" + sentence.id + "': join at " + path_to_string(min_o.path) +
                            " splits into " + std::to_string(min_o.children.size()) + " objects"};
        return;
      }
      int left_max = min_o.children[0];
      int right_max = min_o.children[1];
      assert(a.completion_[static_cast<std::size_t>(left_max)] == left_max);
      assert(a.completion_[static_cast<std::size_t>(right_max)] == right_max);
      node.left = class_of_max.at(left_max);
      node.right = class_of_max.at(right_max);
    }

    tree.root = class_of_max.at(a.completion_[static_cast<std::size_t>(a.root_object_)]);
    a.class_tree_ = std::move(tree);
  }
};

ObjectAnalysis analyze_sentence(const Sentence& sentence, const CategoryConfig& config) {
  ObjectAnalysis a;
  a.sentence_id_ = sentence.id;
  a.words_ = sentence.words;
  for (std::size_t i = 0; i < sentence.words.size(); ++i)
    if (config.is_object_lexical(sentence.words[i].cat))
      a.object_word_positions_.push_back(static_cast<int>(i) + 1);

  AnalysisBuilder b{sentence, config, a};
  NodePath path;
  b.walk(sentence.tree, path, -1, 0);
  // Preorder puts the tree root first when it is an object; anything else is
  // unvalidated input, for which only the object list is derivable.
  if (a.objects_.empty() || !a.objects_[0].path.empty()) return a;
  a.root_object_ = 0;
  b.compute_completions();
  b.build_classes();
  return a;
}

}  // namespace dsc
