#include "dsc/semantics.hpp"

#include <cassert>
#include <future>
#include <set>
#include <thread>

namespace dsc {

namespace {

// Sentences are analyzed independently; spread them over a few threads when
// there are enough to matter. Results land in input order either way.
std::vector<ObjectAnalysis> analyze_all(const Corpus& corpus) {
  std::size_t n = corpus.sentences.size();
  std::vector<ObjectAnalysis> out(n);
  unsigned hw = std::thread::hardware_concurrency();
  if (n < 8 || hw < 2) {
    for (std::size_t i = 0; i < n; ++i)
      out[i] = analyze_sentence(corpus.sentences[i], corpus.config);
    return out;
  }
  std::size_t parts = std::min<std::size_t>(hw, n);
  std::vector<std::future<void>> futures;
  futures.reserve(parts);
  for (std::size_t p = 0; p < parts; ++p) {
    futures.push_back(std::async(std::launch::async, [&, p] {
      for (std::size_t i = p; i < n; i += parts)
        out[i] = analyze_sentence(corpus.sentences[i], corpus.config);
    }));
  }
  for (auto& f : futures) f.get();
  return out;
}

}  // namespace

SemanticModel build_model(const Corpus& corpus) {
  {
    auto violations = validate(corpus);
    if (!violations.empty()) throw ValidationFailed(std::move(violations));
  }

  SemanticModel m;
  m.config = corpus.config;

  for (const auto& s : corpus.sentences)
    for (std::size_t i = 0; i < s.words.size(); ++i)
      if (corpus.config.is_object_lexical(s.words[i].cat)) {
        InstanceRef ref{s.id, static_cast<int>(i) + 1};
        m.basis_index[ref] = m.basis.size();
        m.basis.push_back(ref);
      }

  auto analyses = analyze_all(corpus);

  std::map<Word, std::set<std::size_t>> word_index;
  std::map<Word, std::set<std::size_t>> modifier;
  std::map<Word, std::set<std::pair<std::size_t, std::size_t>>> interaction;
  m.object_rank.assign(m.basis.size(), 0);

  for (std::size_t si = 0; si < corpus.sentences.size(); ++si) {
    const Sentence& s = corpus.sentences[si];
    const ObjectAnalysis& a = analyses[si];

    for (int p : a.object_word_positions()) {
      std::size_t x = m.basis_index.at(InstanceRef{s.id, p});
      word_index[s.words[static_cast<std::size_t>(p) - 1]].insert(x);
      m.object_rank[x] = a.object_rank(p);
    }

    // Basis indices of the object words inside an object's span.
    auto instances_below = [&](int obj) {
      std::vector<std::size_t> out;
      const ObjectInfo& o = a.object(obj);
      for (int p : a.object_word_positions()) {
        if (p < o.first_pos) continue;
        if (p > o.last_pos) break;
        out.push_back(m.basis_index.at(InstanceRef{s.id, p}));
      }
      return out;
    };

    for (int t = 0; t < a.object_count(); ++t) {
      auto below = instances_below(t);
      for (int p : a.modifier_instances(t)) {
        const Word& u = s.words[static_cast<std::size_t>(p) - 1];
        // An object word strictly between an object and its completion would
        // be an object disjoint from it below the completion.
        assert(!corpus.config.is_object_lexical(u.cat));
        for (std::size_t x : below) modifier[u].insert(x);
      }
    }

    for (int t = 0; t < a.object_count(); ++t)
      for (int t2 = 0; t2 < a.object_count(); ++t2) {
        if (t == t2 || !a.left_of(t, t2)) continue;
        auto inter = a.interaction_instances(t, t2);
        if (inter.empty()) continue;
        auto left = instances_below(t);
        auto right = instances_below(t2);
        for (int p : inter) {
          const Word& u = s.words[static_cast<std::size_t>(p) - 1];
          if (corpus.config.is_object_lexical(u.cat)) continue;  // object words carry no interaction
          for (std::size_t x : left)
            for (std::size_t y : right) interaction[u].insert({x, y});
        }
      }

    m.analyses.emplace(s.id, std::move(analyses[si]));
  }

  for (auto& [w, xs] : word_index)
    m.word_index.emplace(w, std::vector<std::size_t>(xs.begin(), xs.end()));
  for (auto& [w, xs] : modifier)
    m.modifier_support.emplace(w, std::vector<std::size_t>(xs.begin(), xs.end()));
  for (auto& [w, ps] : interaction)
    m.interaction_support.emplace(
        w, std::vector<std::pair<std::size_t, std::size_t>>(ps.begin(), ps.end()));
  m.has_analyses = true;
  return m;
}

}  // namespace dsc
