#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dsc/corpus.hpp"
#include "dsc/semimodule.hpp"
#include "dsc/semiring.hpp"
#include "dsc/syntax.hpp"

namespace dsc {

// Everything query evaluation needs, derived once from a corpus. The basis
// lists all object-word instances in corpus order; supports are stored as
// sorted index (pair) lists. Sentence analyses are kept so sentence vectors
// can be evaluated; models restored from their serialized form lack them and
// answer word-level queries only.
struct SemanticModel {
  CategoryConfig config;
  std::vector<InstanceRef> basis;
  std::map<InstanceRef, std::size_t> basis_index;
  std::map<Word, std::vector<std::size_t>> word_index;
  std::map<Word, std::vector<std::size_t>> modifier_support;
  std::map<Word, std::vector<std::pair<std::size_t, std::size_t>>> interaction_support;
  std::vector<int> object_rank;  // per basis entry, 1-based within its sentence
  std::map<std::string, ObjectAnalysis> analyses;
  bool has_analyses = false;

  bool is_object_word(const Word& w) const { return config.is_object_lexical(w.cat); }

  const std::vector<std::size_t>& word_positions(const Word& w) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = word_index.find(w);
    return it == word_index.end() ? kEmpty : it->second;
  }

  const std::vector<std::size_t>& modifier_positions(const Word& w) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = modifier_support.find(w);
    return it == modifier_support.end() ? kEmpty : it->second;
  }

  const std::vector<std::pair<std::size_t, std::size_t>>& interaction_pairs(const Word& w) const {
    static const std::vector<std::pair<std::size_t, std::size_t>> kEmpty;
    auto it = interaction_support.find(w);
    return it == interaction_support.end() ? kEmpty : it->second;
  }
};

// Validates, analyzes every sentence, and assembles supports. Throws
// ValidationFailed when the corpus has violations. Input order only permutes
// the basis; the supports are the same instance sets regardless.
SemanticModel build_model(const Corpus& corpus);

// ---------------------------------------------------------------------------
// Word-level queries

template <Semiring S>
SparseVec<S> word_vector(const SemanticModel& m, const Word& w) {
  if (!m.is_object_word(w))
    throw NotAnObjectWord("'" + w.spec() + "' is not an object word");
  return SparseVec<S>::indicator(m.basis.size(), m.word_positions(w));
}

template <Semiring S>
typename S::Value squared_norm(const SemanticModel& m, const Word& w) {
  auto v = word_vector<S>(m, w);
  return inner_product(v, v);
}

// Counts ordered instance pairs of (w, w2) inside one sentence whose object
// ranks differ by at most k.
template <Semiring S>
typename S::Value ip_k(const SemanticModel& m, int k, const Word& w, const Word& w2) {
  if (!m.is_object_word(w)) throw NotAnObjectWord("'" + w.spec() + "' is not an object word");
  if (!m.is_object_word(w2)) throw NotAnObjectWord("'" + w2.spec() + "' is not an object word");
  typename S::Value acc = S::zero();
  for (std::size_t x : m.word_positions(w))
    for (std::size_t y : m.word_positions(w2)) {
      if (m.basis[x].sentence != m.basis[y].sentence) continue;
      int d = m.object_rank[x] - m.object_rank[y];
      if (d < 0) d = -d;
      if (d <= k) acc = S::add(acc, S::one());
    }
  return acc;
}

// ---------------------------------------------------------------------------
// Modifiers

// A projector onto a set of basis indices, in support form.
struct ModifierOp {
  std::vector<std::size_t> support;  // sorted
  bool operator==(const ModifierOp&) const = default;
};

inline ModifierOp modifier_op(const SemanticModel& m, const Word& u) {
  if (m.is_object_word(u))
    throw NotAModifierCandidate("'" + u.spec() + "' is an object word");
  return ModifierOp{m.modifier_positions(u)};
}

template <Semiring S>
SparseVec<S> indicator_vector(const SemanticModel& m, const ModifierOp& op) {
  return SparseVec<S>::indicator(m.basis.size(), op.support);
}

template <Semiring S>
SparseVec<S> modifier_apply(const SemanticModel& m, const Word& u, const SparseVec<S>& v) {
  if (m.is_object_word(u))
    throw NotAModifierCandidate("'" + u.spec() + "' is an object word");
  return apply_pointwise(SparseVec<S>::indicator(m.basis.size(), m.modifier_positions(u)), v);
}

// Meet of projectors is composition; on indicator supports it is the
// intersection, well defined over any semiring.
inline ModifierOp modifier_meet(const ModifierOp& a, const ModifierOp& b) {
  ModifierOp out;
  std::set_intersection(a.support.begin(), a.support.end(), b.support.begin(), b.support.end(),
                        std::back_inserter(out.support));
  return out;
}

// Join needs inclusion-exclusion, a + b - a*b per coordinate, so it is only
// available over cancellative semirings. On indicator inputs the subtraction
// never comes up short; that is checked while building the result.
template <Semiring S>
ModifierOp modifier_join(const ModifierOp& a, const ModifierOp& b) {
  if (!S::cancellative)
    throw UnsupportedInstance("join of modifiers needs additive cancellation; semiring '" +
                              std::string(S::name()) + "' has none");
  std::vector<std::size_t> merged;
  std::set_union(a.support.begin(), a.support.end(), b.support.begin(), b.support.end(),
                 std::back_inserter(merged));
  ModifierOp out;
  for (std::size_t x : merged) {
    bool ina = std::binary_search(a.support.begin(), a.support.end(), x);
    bool inb = std::binary_search(b.support.begin(), b.support.end(), x);
    typename S::Value va = ina ? S::one() : S::zero();
    typename S::Value vb = inb ? S::one() : S::zero();
    auto c = S::try_subtract(S::add(va, vb), S::mul(va, vb));
    if (!c)
      throw DscError("Internal", "inclusion-exclusion came up short on indicator coordinates");
    if (!(*c == S::zero())) out.support.push_back(x);
  }
  return out;
}

// Complement, identity minus the projector; cancellative semirings only.
template <Semiring S>
ModifierOp modifier_complement(const ModifierOp& a, std::size_t basis_size) {
  if (!S::cancellative)
    throw UnsupportedInstance("complement of a modifier needs additive cancellation; semiring '" +
                              std::string(S::name()) + "' has none");
  ModifierOp out;
  for (std::size_t x = 0; x < basis_size; ++x) {
    bool ina = std::binary_search(a.support.begin(), a.support.end(), x);
    auto c = S::try_subtract(S::one(), ina ? S::one() : S::zero());
    if (!c) throw DscError("Internal", "complement subtraction came up short");
    if (!(*c == S::zero())) out.support.push_back(x);
  }
  return out;
}

inline ModifierOp modifier_meet(const SemanticModel& m, const Word& u, const Word& u2) {
  return modifier_meet(modifier_op(m, u), modifier_op(m, u2));
}

template <Semiring S>
ModifierOp modifier_join(const SemanticModel& m, const Word& u, const Word& u2) {
  return modifier_join<S>(modifier_op(m, u), modifier_op(m, u2));
}

template <Semiring S>
ModifierOp modifier_complement(const SemanticModel& m, const Word& u) {
  return modifier_complement<S>(modifier_op(m, u), m.basis.size());
}

// ---------------------------------------------------------------------------
// Interactions

struct InteractionOp {
  std::vector<std::pair<std::size_t, std::size_t>> support;  // sorted, ordered pairs
  bool operator==(const InteractionOp&) const = default;
};

inline InteractionOp interaction_op(const SemanticModel& m, const Word& u) {
  if (m.is_object_word(u))
    throw NotAnInteractionCandidate("'" + u.spec() + "' is an object word");
  return InteractionOp{m.interaction_pairs(u)};
}

inline InteractionOp interaction_meet(const SemanticModel& m, const Word& u, const Word& u2) {
  InteractionOp a = interaction_op(m, u);
  InteractionOp b = interaction_op(m, u2);
  InteractionOp out;
  std::set_intersection(a.support.begin(), a.support.end(), b.support.begin(), b.support.end(),
                        std::back_inserter(out.support));
  return out;
}

// I_u(a, b): restrict a (x) b to u's interaction pairs, then fold each pair
// back onto its two components.
template <Semiring S>
SparseVec<S> interaction_apply(const SemanticModel& m, const Word& u, const SparseVec<S>& a,
                               const SparseVec<S>& b) {
  if (m.is_object_word(u))
    throw NotAnInteractionCandidate("'" + u.spec() + "' is an object word");
  auto ind = SparseBiVec<S>::indicator(m.basis.size(), m.interaction_pairs(u));
  return plus_map(bi_mult(ind, tensor(a, b)));
}

// ---------------------------------------------------------------------------
// Sentence evaluation

namespace detail {

template <Semiring S>
SparseVec<S> eval_class(const SemanticModel& m, const ObjectAnalysis& a, const ClassTree& tree,
                        int class_id) {
  const ClassNode& node = tree.nodes[static_cast<std::size_t>(class_id)];
  const ObjectInfo& max_o = a.object(node.max_obj);
  const ObjectInfo& min_o = a.object(node.min_obj);

  SparseVec<S> state(m.basis.size());
  if (node.kind == ClassNode::Kind::Leaf) {
    state = word_vector<S>(m, a.word_at(node.leaf_position));
  } else {
    const ClassNode& lnode = tree.nodes[static_cast<std::size_t>(node.left)];
    const ClassNode& rnode = tree.nodes[static_cast<std::size_t>(node.right)];
    SparseVec<S> l = eval_class<S>(m, a, tree, node.left);
    SparseVec<S> r = eval_class<S>(m, a, tree, node.right);
    SparseBiVec<S> pair = tensor(l, r);
    const ObjectInfo& lmax = a.object(lnode.max_obj);
    const ObjectInfo& rmax = a.object(rnode.max_obj);
    std::set<Word> iwords;
    for (int p = min_o.first_pos; p <= min_o.last_pos; ++p) {
      if (p >= lmax.first_pos && p <= lmax.last_pos) continue;
      if (p >= rmax.first_pos && p <= rmax.last_pos) continue;
      assert(!m.is_object_word(a.word_at(p)));
      iwords.insert(a.word_at(p));
    }
    // No interaction words means the all-ones pair state: skip the product.
    for (const Word& u : iwords)
      pair = bi_mult(pair, SparseBiVec<S>::indicator(m.basis.size(), m.interaction_pairs(u)));
    state = plus_map(pair);
  }
  // Modifiers between the class minimum and its completion: both spans are
  // contiguous, so the difference is two runs around the minimum.
  std::set<Word> mwords;
  for (int p = max_o.first_pos; p < min_o.first_pos; ++p) mwords.insert(a.word_at(p));
  for (int p = min_o.last_pos + 1; p <= max_o.last_pos; ++p) mwords.insert(a.word_at(p));
  for (const Word& u : mwords) {
    assert(!m.is_object_word(u));
    state = frobenius_mult(state,
                           SparseVec<S>::indicator(m.basis.size(), m.modifier_positions(u)));
  }
  return state;
}

}  // namespace detail

// The sentence vector: evaluate the completion-class tree bottom-up. Leaf
// classes start from the word vector and absorb their modifiers; join
// classes pair up their children, restrict by the interaction words between
// them, fold pairs down, and absorb any modifiers above the join.
template <Semiring S>
SparseVec<S> sentence_vector(const SemanticModel& m, const std::string& sentence_id) {
  if (!m.has_analyses)
    throw DscError("NeedsCorpus",
                   "sentence evaluation needs a model built from a corpus; this one was "
                   "restored from its serialized form");
  auto it = m.analyses.find(sentence_id);
  if (it == m.analyses.end())
    throw UnknownSentence("no sentence with id '" + sentence_id + "'");
  const ObjectAnalysis& a = it->second;
  if (a.conjunction_issue()) throw ConjunctionJoin(a.conjunction_issue()->detail);
  if (!a.class_tree()) throw DscError("Internal", "sentence has no completion-class tree");
  const ClassTree& tree = *a.class_tree();
  return detail::eval_class<S>(m, a, tree, tree.root);
}

}  // namespace dsc
