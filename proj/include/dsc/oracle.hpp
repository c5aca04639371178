#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dsc/corpus.hpp"
#include "dsc/semiring.hpp"

// Reference implementations used to certify the sparse pipeline. Everything
// here favors the most literal reading of the definitions over efficiency:
// spans are explicit sets, completions come from a quantifier check rather
// than a tree walk, and sentence evaluation runs on dense matrices built
// from the structure maps. Kept deliberately separate from the production
// code paths so the two can disagree.

namespace dsc::oracle {

// ---------------------------------------------------------------------------
// Dense matrices over a semiring

struct DimensionMismatch : DscError {
  explicit DimensionMismatch(const std::string& detail)
      : DscError("DimensionMismatch", detail) {}
};

template <Semiring S>
class DenseMatrix {
public:
  using Value = typename S::Value;

  DenseMatrix() : rows_(0), cols_(0) {}
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, S::zero()) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = S::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  // decltype(auto) keeps std::vector<bool>'s proxy reference usable here.
  decltype(auto) at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  decltype(auto) at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const DenseMatrix&) const = default;

private:
  std::size_t rows_, cols_;
  std::vector<Value> a_;
};

template <Semiring S>
DenseMatrix<S> dense_compose(const DenseMatrix<S>& a, const DenseMatrix<S>& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("compose: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " with " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  DenseMatrix<S> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a.at(i, k);
      if (aik == S::zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const auto& bkj = b.at(k, j);
        if (bkj == S::zero()) continue;
        out.at(i, j) = S::add(out.at(i, j), S::mul(aik, bkj));
      }
    }
  return out;
}

template <Semiring S>
DenseMatrix<S> dense_add(const DenseMatrix<S>& a, const DenseMatrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("add: shapes differ");
  DenseMatrix<S> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = S::add(a.at(i, j), b.at(i, j));
  return out;
}

// Kronecker product; row (i1, i2) of the result is i1 * b.rows() + i2.
template <Semiring S>
DenseMatrix<S> dense_tensor(const DenseMatrix<S>& a, const DenseMatrix<S>& b) {
  DenseMatrix<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      const auto& v = a.at(i1, j1);
      if (v == S::zero()) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
          out.at(i1 * b.rows() + i2, j1 * b.cols() + j2) = S::mul(v, b.at(i2, j2));
    }
  return out;
}

// Conjugate transpose: star of every entry, flipped.
template <Semiring S>
DenseMatrix<S> dense_dagger(const DenseMatrix<S>& a) {
  DenseMatrix<S> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(j, i) = S::star(a.at(i, j));
  return out;
}

// The four structure maps of the basis-induced Frobenius algebra on an
// n-dimensional free semimodule, as matrices on the standard basis.
template <Semiring S>
struct FrobeniusMaps {
  DenseMatrix<S> mult;    // n  x n^2 : (x, y) -> [x == y == z]
  DenseMatrix<S> unit;    // n  x 1   : all ones
  DenseMatrix<S> comult;  // n^2 x n
  DenseMatrix<S> counit;  // 1  x n   : all ones
};

template <Semiring S>
FrobeniusMaps<S> dense_frobenius(std::size_t n) {
  FrobeniusMaps<S> f;
  f.mult = DenseMatrix<S>(n, n * n);
  for (std::size_t z = 0; z < n; ++z) f.mult.at(z, z * n + z) = S::one();
  f.unit = DenseMatrix<S>(n, 1);
  for (std::size_t z = 0; z < n; ++z) f.unit.at(z, 0) = S::one();
  f.comult = dense_dagger(f.mult);
  f.counit = dense_dagger(f.unit);
  return f;
}

// id (x) counit + counit (x) id : n x n^2.
template <Semiring S>
DenseMatrix<S> plus_box(std::size_t n) {
  FrobeniusMaps<S> f = dense_frobenius<S>(n);
  DenseMatrix<S> id = DenseMatrix<S>::identity(n);
  return dense_add(dense_tensor(id, f.counit), dense_tensor(f.counit, id));
}

// ---------------------------------------------------------------------------
// Literal syntax recomputation

struct ObjectRef {
  NodePath path;
  std::string label;
  bool is_leaf = false;
  std::set<int> span;  // word positions
};

inline bool path_below(const NodePath& a, const NodePath& b) {
  // a is b or a descendant of b.
  if (a.size() < b.size()) return false;
  return std::equal(b.begin(), b.end(), a.begin());
}

inline std::vector<ObjectRef> objects_of(const Sentence& sentence, const CategoryConfig& config) {
  std::vector<ObjectRef> out;
  struct Walk {
    const CategoryConfig& config;
    std::vector<ObjectRef>& out;
    std::set<int> visit(const TreeNode& node, NodePath& path) {
      std::set<int> span;
      if (node.is_leaf()) {
        span.insert(node.position);
      } else {
        for (std::size_t i = 0; i < node.children.size(); ++i) {
          path.push_back(static_cast<int>(i));
          auto child = visit(node.children[i], path);
          path.pop_back();
          span.insert(child.begin(), child.end());
        }
      }
      if (config.is_object_category(node.label))
        out.push_back(ObjectRef{path, node.label, node.is_leaf(), span});
      return span;
    }
  };
  Walk w{config, out};
  NodePath path;
  w.visit(sentence.tree, path);
  return out;
}

inline bool spans_disjoint(const ObjectRef& a, const ObjectRef& b) {
  for (int p : a.span)
    if (b.span.count(p)) return false;
  return true;
}

// The completion of t: the largest object containing t such that every object
// it contains intersects t. Checked by quantifying over all objects.
inline int completion_of(const std::vector<ObjectRef>& objs, int t) {
  int best = t;
  std::size_t best_size = objs[static_cast<std::size_t>(t)].span.size();
  for (std::size_t c = 0; c < objs.size(); ++c) {
    if (!path_below(objs[static_cast<std::size_t>(t)].path, objs[c].path)) continue;
    bool ok = true;
    for (std::size_t o = 0; o < objs.size(); ++o) {
      if (!path_below(objs[o].path, objs[c].path)) continue;
      if (spans_disjoint(objs[o], objs[static_cast<std::size_t>(t)])) {
        ok = false;
        break;
      }
    }
    if (ok && objs[c].span.size() >= best_size) {
      best = static_cast<int>(c);
      best_size = objs[c].span.size();
    }
  }
  return best;
}

inline std::set<int> modifier_set(const std::vector<ObjectRef>& objs, int t) {
  const ObjectRef& comp = objs[static_cast<std::size_t>(completion_of(objs, t))];
  std::set<int> out;
  for (int p : comp.span)
    if (!objs[static_cast<std::size_t>(t)].span.count(p)) out.insert(p);
  return out;
}

// Nearest common ancestor: the smallest object containing both.
inline int join_of(const std::vector<ObjectRef>& objs, int a, int b) {
  int best = -1;
  for (std::size_t c = 0; c < objs.size(); ++c) {
    if (!path_below(objs[static_cast<std::size_t>(a)].path, objs[c].path)) continue;
    if (!path_below(objs[static_cast<std::size_t>(b)].path, objs[c].path)) continue;
    if (best < 0 || objs[c].span.size() < objs[static_cast<std::size_t>(best)].span.size())
      best = static_cast<int>(c);
  }
  return best;
}

inline bool strictly_left(const ObjectRef& a, const ObjectRef& b) {
  if (a.span.empty() || b.span.empty()) return false;
  return *a.span.rbegin() < *b.span.begin();
}

inline std::set<int> interaction_set(const std::vector<ObjectRef>& objs, int a, int b) {
  std::set<int> out;
  const ObjectRef& oa = objs[static_cast<std::size_t>(a)];
  const ObjectRef& ob = objs[static_cast<std::size_t>(b)];
  if (!strictly_left(oa, ob)) return out;
  const ObjectRef& j = objs[static_cast<std::size_t>(join_of(objs, a, b))];
  const ObjectRef& ca = objs[static_cast<std::size_t>(completion_of(objs, a))];
  const ObjectRef& cb = objs[static_cast<std::size_t>(completion_of(objs, b))];
  for (int p : j.span)
    if (!ca.span.count(p) && !cb.span.count(p)) out.insert(p);
  return out;
}

// ---------------------------------------------------------------------------
// Corpus-level supports, from the definitions

struct Supports {
  std::vector<InstanceRef> basis;  // object-word instances in corpus order
  std::map<Word, std::set<std::size_t>> modifier;
  std::map<Word, std::set<std::pair<std::size_t, std::size_t>>> interaction;
};

inline Supports supports_of(const Corpus& corpus) {
  Supports sup;
  std::map<std::pair<std::string, int>, std::size_t> index;
  for (const auto& s : corpus.sentences)
    for (std::size_t i = 0; i < s.words.size(); ++i)
      if (corpus.config.is_object_lexical(s.words[i].cat)) {
        index[{s.id, static_cast<int>(i) + 1}] = sup.basis.size();
        sup.basis.push_back(InstanceRef{s.id, static_cast<int>(i) + 1});
      }

  for (const auto& s : corpus.sentences) {
    auto objs = objects_of(s, corpus.config);
    auto object_instances = [&](int t) {
      std::vector<std::size_t> out;
      for (int p : objs[static_cast<std::size_t>(t)].span)
        if (corpus.config.is_object_lexical(s.words[static_cast<std::size_t>(p) - 1].cat))
          out.push_back(index.at({s.id, p}));
      return out;
    };
    for (std::size_t t = 0; t < objs.size(); ++t) {
      auto below = object_instances(static_cast<int>(t));
      for (int p : modifier_set(objs, static_cast<int>(t))) {
        const Word& u = s.words[static_cast<std::size_t>(p) - 1];
        if (corpus.config.is_object_lexical(u.cat)) continue;
        for (std::size_t x : below) sup.modifier[u].insert(x);
      }
    }
    for (std::size_t a = 0; a < objs.size(); ++a)
      for (std::size_t b = 0; b < objs.size(); ++b) {
        if (a == b) continue;
        auto inter = interaction_set(objs, static_cast<int>(a), static_cast<int>(b));
        if (inter.empty()) continue;
        auto left = object_instances(static_cast<int>(a));
        auto right = object_instances(static_cast<int>(b));
        for (int p : inter) {
          const Word& u = s.words[static_cast<std::size_t>(p) - 1];
          if (corpus.config.is_object_lexical(u.cat)) continue;
          for (std::size_t x : left)
            for (std::size_t y : right) sup.interaction[u].insert({x, y});
        }
      }
  }
  return sup;
}

// ---------------------------------------------------------------------------
// Dense sentence evaluation

template <Semiring S>
struct SentenceEvaluation {
  std::vector<InstanceRef> basis;
  DenseMatrix<S> vector;  // n x 1
};

// Builds the sentence's evaluation diagram with dense structure maps and runs
// it. The n^2 x n^4 multiplication matrix keeps this to small bases.
inline constexpr std::size_t kMaxDenseBasis = 8;

template <Semiring S>
SentenceEvaluation<S> evaluate_sentence_diagram(const Corpus& corpus, const std::string& id) {
  {
    auto violations = validate(corpus);
    if (!violations.empty()) throw ValidationFailed(std::move(violations));
  }
  const Sentence* sentence = corpus.find(id);
  if (sentence == nullptr) throw UnknownSentence("no sentence with id '" + id + "'");

  Supports sup = supports_of(corpus);
  std::size_t n = sup.basis.size();
  if (n > kMaxDenseBasis)
    throw TooLarge("dense evaluation supports at most " + std::to_string(kMaxDenseBasis) +
                   " object-word instances, corpus has " + std::to_string(n));

  auto objs = objects_of(*sentence, corpus.config);

  // Refuse coordinated structure, same rule as the production path.
  for (const auto& o : objs) {
    const TreeNode* node = node_at(sentence->tree, o.path);
    if (node != nullptr && node->children.size() == 3)
      throw ConjunctionJoin("sentence '" + id + "': coordinated object at " +
                            path_to_string(o.path));
  }

  // Group objects into completion classes.
  std::vector<int> comp(objs.size());
  for (std::size_t t = 0; t < objs.size(); ++t) comp[t] = completion_of(objs, static_cast<int>(t));
  std::map<int, std::vector<int>> members;  // completion -> members
  for (std::size_t t = 0; t < objs.size(); ++t) members[comp[t]].push_back(static_cast<int>(t));
  auto class_min = [&](int max_obj) {
    int best = -1;
    for (int m : members.at(max_obj))
      if (best < 0 ||
          objs[static_cast<std::size_t>(m)].span.size() < objs[static_cast<std::size_t>(best)].span.size())
        best = m;
    return best;
  };

  std::map<std::pair<std::string, int>, std::size_t> index;
  for (std::size_t i = 0; i < sup.basis.size(); ++i)
    index[{sup.basis[i].sentence, sup.basis[i].position}] = i;

  FrobeniusMaps<S> f = dense_frobenius<S>(n);
  DenseMatrix<S> plus = plus_box<S>(n);
  DenseMatrix<S> mult_pairs;  // n^2 x n^4, built when first needed
  auto pair_mult = [&]() -> const DenseMatrix<S>& {
    if (mult_pairs.rows() == 0) mult_pairs = dense_frobenius<S>(n * n).mult;
    return mult_pairs;
  };

  auto word_state = [&](const Word& w) {
    DenseMatrix<S> v(n, 1);
    for (std::size_t i = 0; i < sup.basis.size(); ++i) {
      const Sentence* s = corpus.find(sup.basis[i].sentence);
      if (s->words[static_cast<std::size_t>(sup.basis[i].position) - 1] == w)
        v.at(i, 0) = S::one();
    }
    return v;
  };
  auto modifier_state = [&](const Word& w) {
    DenseMatrix<S> v(n, 1);
    auto it = sup.modifier.find(w);
    if (it != sup.modifier.end())
      for (std::size_t i : it->second) v.at(i, 0) = S::one();
    return v;
  };
  auto interaction_state = [&](const Word& w) {
    DenseMatrix<S> v(n * n, 1);
    auto it = sup.interaction.find(w);
    if (it != sup.interaction.end())
      for (const auto& [x, y] : it->second) v.at(x * n + y, 0) = S::one();
    return v;
  };
  auto distinct_words = [&](const std::set<int>& positions) {
    std::set<Word> out;
    for (int p : positions) out.insert(sentence->words[static_cast<std::size_t>(p) - 1]);
    return out;
  };
  auto set_minus = [](const std::set<int>& a, const std::set<int>& b) {
    std::set<int> out;
    for (int p : a)
      if (!b.count(p)) out.insert(p);
    return out;
  };

  // Evaluate a class given by its maximum object.
  auto eval = [&](auto&& self, int max_obj) -> DenseMatrix<S> {
    int min_obj = class_min(max_obj);
    const ObjectRef& min_ref = objs[static_cast<std::size_t>(min_obj)];
    const ObjectRef& max_ref = objs[static_cast<std::size_t>(max_obj)];
    DenseMatrix<S> state;
    std::set<int> covered;
    if (min_ref.is_leaf) {
      int pos = *min_ref.span.begin();
      state = word_state(sentence->words[static_cast<std::size_t>(pos) - 1]);
      covered = min_ref.span;
    } else {
      // The two maximal objects strictly below the minimum.
      std::vector<int> below;
      for (std::size_t o = 0; o < objs.size(); ++o) {
        if (static_cast<int>(o) == min_obj) continue;
        if (!path_below(objs[o].path, min_ref.path)) continue;
        bool maximal = true;
        for (std::size_t o2 = 0; o2 < objs.size(); ++o2) {
          if (o2 == o || static_cast<int>(o2) == min_obj) continue;
          if (path_below(objs[o2].path, min_ref.path) && path_below(objs[o].path, objs[o2].path)) {
            maximal = false;
            break;
          }
        }
        if (maximal) below.push_back(static_cast<int>(o));
      }
      if (below.size() != 2)
        throw ConjunctionJoin("sentence '" + id + "': join at " + path_to_string(min_ref.path) +
                              " splits into " + std::to_string(below.size()) + " objects");
      std::sort(below.begin(), below.end(), [&](int x, int y) {
        return *objs[static_cast<std::size_t>(x)].span.begin() <
               *objs[static_cast<std::size_t>(y)].span.begin();
      });
      DenseMatrix<S> l = self(self, below[0]);
      DenseMatrix<S> r = self(self, below[1]);
      DenseMatrix<S> pair = dense_tensor(l, r);
      std::set<int> both = objs[static_cast<std::size_t>(below[0])].span;
      both.insert(objs[static_cast<std::size_t>(below[1])].span.begin(),
                  objs[static_cast<std::size_t>(below[1])].span.end());
      for (const Word& u : distinct_words(set_minus(min_ref.span, both)))
        pair = dense_compose(pair_mult(), dense_tensor(pair, interaction_state(u)));
      state = dense_compose(plus, pair);
      covered = min_ref.span;
    }
    for (const Word& u : distinct_words(set_minus(max_ref.span, covered)))
      state = dense_compose(f.mult, dense_tensor(state, modifier_state(u)));
    return state;
  };

  // The root class is the one holding the whole-sentence object.
  int root_obj = -1;
  for (std::size_t o = 0; o < objs.size(); ++o)
    if (objs[o].path.empty()) root_obj = static_cast<int>(o);
  SentenceEvaluation<S> out;
  out.basis = sup.basis;
  out.vector = eval(eval, comp[static_cast<std::size_t>(root_obj)]);
  return out;
}

}  // namespace dsc::oracle
