#include "doctest.h"

#include <map>
#include <set>
#include <vector>

#include "dsc/json_io.hpp"
#include "dsc/oracle.hpp"
#include "dsc/semantics.hpp"
#include "helpers.hpp"

using namespace dsc;
using N = Naturals;
using B = Booleans;
using testutil::corpus_from;
using testutil::load_fixture;

namespace {

using Coeffs = std::map<std::size_t, N::Value>;

Coeffs coeffs_of(const SparseVec<N>& v) {
  Coeffs out;
  for (const auto& [i, c] : v.coeffs()) out[i] = c;
  return out;
}

Coeffs nat(std::initializer_list<std::pair<const std::size_t, int>> xs) {
  Coeffs out;
  for (const auto& [i, c] : xs) out[i] = N::Value(c);
  return out;
}

// Evaluates one fixture sentence against a corpus holding only it.
Coeffs solo_vector(const std::string& file, const std::string& id) {
  auto full = load_fixture(file);
  const Sentence* s = full.find(id);
  REQUIRE(s != nullptr);
  Corpus solo{full.config, {*s}};
  return coeffs_of(sentence_vector<N>(build_model(solo), id));
}

}  // namespace

TEST_CASE("model of the running example") {
  auto c = load_fixture("ex1.txt");
  auto m = build_model(c);

  REQUIRE(m.basis.size() == 3);
  CHECK(m.basis[0] == InstanceRef{"s1", 4});
  CHECK(m.basis[1] == InstanceRef{"s1", 9});
  CHECK(m.basis[2] == InstanceRef{"s1", 13});
  CHECK(m.basis_index.at(InstanceRef{"s1", 9}) == 1);
  CHECK(m.object_rank == std::vector<int>{1, 2, 3});
  CHECK(m.has_analyses);

  using Idx = std::vector<std::size_t>;
  CHECK(m.word_positions({"fox", "N"}) == Idx{0});
  CHECK(m.word_positions({"dog", "N"}) == Idx{1});
  CHECK(m.word_positions({"lady", "N"}) == Idx{2});
  CHECK(m.word_positions({"jumps", "V"}).empty());

  CHECK(m.modifier_positions({"The", "Det"}) == Idx{0});
  CHECK(m.modifier_positions({"quick", "Adj"}) == Idx{0});
  CHECK(m.modifier_positions({"brown", "Adj"}) == Idx{0});
  CHECK(m.modifier_positions({"the", "Det"}) == Idx{1});
  CHECK(m.modifier_positions({"lazy", "Adj"}) == Idx{1});
  CHECK(m.modifier_positions({"a", "Det"}) == Idx{2});
  CHECK(m.modifier_positions({"passing", "Adj"}) == Idx{2});
  CHECK(m.modifier_positions({"over", "P"}).empty());

  using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;
  CHECK(m.interaction_pairs({"jumps", "V"}) == Pairs{{0, 1}, {0, 2}});
  CHECK(m.interaction_pairs({"over", "P"}) == Pairs{{0, 1}, {0, 2}});
  CHECK(m.interaction_pairs({"of", "P"}) == Pairs{{0, 1}, {0, 2}, {1, 2}});
  CHECK(m.interaction_pairs({"the", "Det"}) == Pairs{{0, 2}});
  CHECK(m.interaction_pairs({"lazy", "Adj"}) == Pairs{{0, 2}});
  CHECK(m.interaction_pairs({"a", "Det"}) == Pairs{{0, 1}});
  CHECK(m.interaction_pairs({"passing", "Adj"}) == Pairs{{0, 1}});
  CHECK(m.interaction_pairs({"The", "Det"}).empty());
}

TEST_CASE("building an invalid corpus fails with the violation list") {
  auto bad = corpus_from("(NP (Det the) (Adj big))");
  try {
    build_model(bad);
    FAIL("expected ValidationFailed");
  } catch (const ValidationFailed& e) {
    CHECK(!e.violations.empty());
    CHECK(std::string(e.code()) == "ValidationFailed");
  }
}

TEST_CASE("word vectors and norms over the fixtures") {
  auto m = build_model(load_fixture("fixtures.txt"));
  REQUIRE(m.basis.size() == 24);

  auto dog = word_vector<N>(m, {"dog", "N"});
  CHECK(dog.support() == std::vector<std::size_t>{2, 3, 10, 14, 15});
  CHECK(squared_norm<N>(m, {"dog", "N"}) == N::Value(5));
  CHECK(squared_norm<N>(m, {"park", "N"}) == N::Value(2));
  CHECK(squared_norm<N>(m, {"cat", "N"}) == N::Value(1));
  CHECK(squared_norm<N>(m, {"zebra", "N"}) == N::Value(0));
  CHECK(word_vector<N>(m, {"zebra", "N"}).is_zero());
  CHECK_THROWS_AS(word_vector<N>(m, {"the", "Det"}), NotAnObjectWord);
  CHECK(squared_norm<B>(m, {"dog", "N"}) == true);
}

TEST_CASE("windowed cooccurrence counts") {
  auto m = build_model(load_fixture("fixtures.txt"));
  Word dog{"dog", "N"}, park{"park", "N"}, girl{"girl", "N"}, ball{"ball", "N"};
  Word man{"man", "N"}, telescope{"telescope", "N"};

  CHECK(ip_k<N>(m, 0, dog, dog) == N::Value(5));
  CHECK(ip_k<N>(m, 1, dog, dog) == N::Value(7));
  CHECK(ip_k<N>(m, 1, dog, park) == N::Value(1));
  CHECK(ip_k<N>(m, 0, dog, park) == N::Value(0));
  CHECK(ip_k<N>(m, 1, girl, ball) == N::Value(1));
  CHECK(ip_k<N>(m, 0, girl, ball) == N::Value(0));
  CHECK(ip_k<N>(m, 1, man, telescope) == N::Value(0));
  CHECK(ip_k<N>(m, 2, man, telescope) == N::Value(1));
  CHECK(ip_k<N>(m, 2, telescope, man) == N::Value(1));
  CHECK(ip_k<B>(m, 1, dog, park) == true);
  CHECK(ip_k<B>(m, 0, dog, park) == false);
  CHECK_THROWS_AS(ip_k<N>(m, 1, dog, Word{"sing", "V"}), NotAnObjectWord);

  // symmetry against the brute-force definition
  for (const Word& w : {dog, park, girl, ball, man, telescope})
    for (const Word& w2 : {dog, park, girl, ball, man, telescope})
      for (int k = 0; k <= 2; ++k) CHECK(ip_k<N>(m, k, w, w2) == ip_k<N>(m, k, w2, w));
}

TEST_CASE("modifier operators on the running example") {
  auto m = build_model(load_fixture("ex1.txt"));
  using Idx = std::vector<std::size_t>;

  auto the_cap = modifier_op(m, {"The", "Det"});
  auto lazy = modifier_op(m, {"lazy", "Adj"});
  CHECK(the_cap.support == Idx{0});
  CHECK(lazy.support == Idx{1});
  CHECK_THROWS_AS(modifier_op(m, {"fox", "N"}), NotAModifierCandidate);

  CHECK(modifier_meet(the_cap, lazy).support.empty());
  CHECK(modifier_join<N>(the_cap, lazy).support == Idx{0, 1});
  CHECK(modifier_complement<N>(the_cap, m.basis.size()).support == Idx{1, 2});
  CHECK(modifier_complement<N>(modifier_complement<N>(the_cap, 3), 3) == the_cap);
  CHECK(modifier_meet(m, {"The", "Det"}, {"quick", "Adj"}).support == Idx{0});

  CHECK_THROWS_AS(modifier_join<B>(the_cap, lazy), UnsupportedInstance);
  CHECK_THROWS_AS(modifier_complement<B>(the_cap, 3), UnsupportedInstance);

  auto dog = word_vector<N>(m, {"dog", "N"});
  CHECK(modifier_apply<N>(m, {"lazy", "Adj"}, dog) == dog);
  CHECK(modifier_apply<N>(m, {"The", "Det"}, dog).is_zero());
  CHECK(indicator_vector<N>(m, lazy).support() == Idx{1});
}

TEST_CASE("interaction operators on the running example") {
  auto m = build_model(load_fixture("ex1.txt"));
  using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

  CHECK(interaction_op(m, {"of", "P"}).support == Pairs{{0, 1}, {0, 2}, {1, 2}});
  CHECK(interaction_meet(m, {"jumps", "V"}, {"of", "P"}).support == Pairs{{0, 1}, {0, 2}});
  CHECK(interaction_meet(m, {"the", "Det"}, {"a", "Det"}).support.empty());
  CHECK_THROWS_AS(interaction_op(m, {"dog", "N"}), NotAnInteractionCandidate);

  auto dog = word_vector<N>(m, {"dog", "N"});
  auto lady = word_vector<N>(m, {"lady", "N"});
  auto folded = interaction_apply<N>(m, {"of", "P"}, dog, lady);
  CHECK(coeffs_of(folded) == nat({{1, 1}, {2, 1}}));
  // reversed arguments miss the ordered support
  CHECK(interaction_apply<N>(m, {"of", "P"}, lady, dog).is_zero());

  // independent sum: restrict the tensor by hand and fold
  auto fox = word_vector<N>(m, {"fox", "N"});
  auto mixed = vec_add(fox, scale(N::Value(3), dog));
  auto expected = SparseVec<N>(m.basis.size());
  for (const auto& [x, y] : m.interaction_pairs({"over", "P"})) {
    auto c = N::mul(mixed.at(x), lady.at(y));
    expected.add_to(x, c);
    expected.add_to(y, c);
  }
  CHECK(interaction_apply<N>(m, {"over", "P"}, mixed, lady) == expected);
}

TEST_CASE("sentence vector of the running example") {
  auto m = build_model(load_fixture("ex1.txt"));
  auto v = sentence_vector<N>(m, "s1");
  CHECK(coeffs_of(v) == nat({{0, 2}, {1, 1}, {2, 1}}));

  auto vb = sentence_vector<B>(m, "s1");
  CHECK(vb.support() == std::vector<std::size_t>{0, 1, 2});
  CHECK_THROWS_AS(sentence_vector<N>(m, "nope"), UnknownSentence);
}

TEST_CASE("sentence vectors of each fixture in isolation") {
  CHECK(solo_vector("fixtures.txt", "svo") == nat({{0, 1}, {1, 1}}));
  CHECK(solo_vector("fixtures.txt", "single") == nat({{0, 1}}));
  CHECK(solo_vector("fixtures.txt", "np_only") == nat({{0, 1}}));
  CHECK(solo_vector("fixtures.txt", "intrans") == nat({{0, 1}}));
  CHECK(solo_vector("fixtures.txt", "pron") == nat({{0, 1}, {1, 1}}));
  CHECK(solo_vector("fixtures.txt", "pp_attach") == nat({{0, 1}, {1, 1}}));
  CHECK(solo_vector("fixtures.txt", "adj_stack") == nat({{0, 1}}));
  CHECK(solo_vector("fixtures.txt", "adv_vp") == nat({{0, 1}, {1, 1}}));
  CHECK(solo_vector("fixtures.txt", "poss") == nat({{0, 1}, {1, 1}}));
  CHECK(solo_vector("fixtures.txt", "repeat") == nat({{0, 1}, {1, 1}}));
  CHECK(solo_vector("fixtures.txt", "three_way") == nat({{0, 2}, {1, 1}, {2, 1}}));
  CHECK(solo_vector("fixtures.txt", "kingdom") == nat({{0, 1}, {1, 1}}));
  CHECK(solo_vector("fixtures.txt", "two_pp") == nat({{0, 2}, {1, 1}, {2, 1}}));
  CHECK(solo_vector("conj.txt", "conj2") == nat({{0, 1}}));
}

TEST_CASE("corpus-wide supports reach into sentence evaluation") {
  auto m = build_model(load_fixture("fixtures.txt"));
  // the one-word sentence has no gates, so it keeps the whole word vector
  CHECK(coeffs_of(sentence_vector<N>(m, "single")) ==
        nat({{2, 1}, {3, 1}, {10, 1}, {14, 1}, {15, 1}}));
  // one modifier gate cuts it down to completions mentioning "the"
  CHECK(coeffs_of(sentence_vector<N>(m, "np_only")) ==
        nat({{3, 1}, {10, 1}, {14, 1}, {15, 1}}));
  // interaction gates pin the pair back onto this sentence's instances
  CHECK(coeffs_of(sentence_vector<N>(m, "repeat")) == nat({{14, 1}, {15, 1}}));
  CHECK(coeffs_of(sentence_vector<N>(m, "svo")) == nat({{0, 1}, {1, 1}}));
}

TEST_CASE("sentence evaluation refuses coordinated objects") {
  auto m = build_model(load_fixture("conj.txt"));
  CHECK_THROWS_AS(sentence_vector<N>(m, "conj1"), ConjunctionJoin);
  CHECK(coeffs_of(sentence_vector<N>(m, "conj2")) == nat({{2, 1}}));
}

TEST_CASE("sparse evaluation matches the dense diagram on small corpora") {
  for (const char* file : {"ex1.txt", "conj.txt"}) {
    auto c = load_fixture(file);
    auto m = build_model(c);
    for (const auto& s : c.sentences) {
      bool sparse_refused = false;
      SparseVec<N> sparse;
      try {
        sparse = sentence_vector<N>(m, s.id);
      } catch (const ConjunctionJoin&) {
        sparse_refused = true;
      }
      bool dense_refused = false;
      oracle::SentenceEvaluation<N> dense;
      try {
        dense = oracle::evaluate_sentence_diagram<N>(c, s.id);
      } catch (const ConjunctionJoin&) {
        dense_refused = true;
      }
      REQUIRE(sparse_refused == dense_refused);
      if (sparse_refused) continue;
      REQUIRE(dense.basis == m.basis);
      for (std::size_t i = 0; i < m.basis.size(); ++i) CHECK(sparse.at(i) == dense.vector.at(i, 0));
    }
  }
}

TEST_CASE("boolean evaluation marks exactly the natural support") {
  testutil::RandomCorpora gen(404);
  for (int trial = 0; trial < 25; ++trial) {
    auto c = gen.next();
    auto m = build_model(c);
    for (const auto& s : c.sentences) {
      SparseVec<N> vn;
      SparseVec<B> vb;
      try {
        vn = sentence_vector<N>(m, s.id);
        vb = sentence_vector<B>(m, s.id);
      } catch (const ConjunctionJoin&) {
        continue;
      }
      CHECK(vn.support() == vb.support());
    }
  }
}

TEST_CASE("model building is deterministic") {
  auto c = load_fixture("fixtures.txt");
  auto a = model_to_json(build_model(c), "naturals").dump(2);
  auto b = model_to_json(build_model(c), "naturals").dump(2);
  CHECK(a == b);
}

TEST_CASE("reordering sentences permutes the basis but not the word counts") {
  auto c = load_fixture("fixtures.txt");
  Corpus reversed{c.config, {c.sentences.rbegin(), c.sentences.rend()}};
  auto m1 = build_model(c);
  auto m2 = build_model(reversed);
  REQUIRE(m1.basis.size() == m2.basis.size());
  CHECK(std::set<InstanceRef>(m1.basis.begin(), m1.basis.end()) ==
        std::set<InstanceRef>(m2.basis.begin(), m2.basis.end()));
  for (const auto& [w, xs] : m1.word_index) {
    CHECK(m2.word_positions(w).size() == xs.size());
    CHECK(squared_norm<N>(m1, w) == squared_norm<N>(m2, w));
  }
  for (const auto& [w, xs] : m1.modifier_support) {
    std::set<InstanceRef> lhs, rhs;
    for (std::size_t x : xs) lhs.insert(m1.basis[x]);
    for (std::size_t x : m2.modifier_positions(w)) rhs.insert(m2.basis[x]);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("lowercase corpora merge case variants") {
  auto text = testutil::slurp(testutil::fixture_path("ex1.txt"));
  CategoryConfig cfg = CategoryConfig::defaults();
  cfg.lowercase = true;
  auto m = build_model(parse_corpus(text, cfg));
  // "The" and "the" collapse, so the determiner now modifies fox and dog
  CHECK(m.modifier_positions({"the", "Det"}) == std::vector<std::size_t>{0, 1});
  CHECK(m.modifier_support.count({"The", "Det"}) == 0);
  CHECK(coeffs_of(sentence_vector<N>(m, "s1")) == nat({{0, 2}, {1, 1}, {2, 1}}));
}

TEST_CASE("model json round-trips and keeps answering word queries") {
  auto c = load_fixture("ex1.txt");
  auto m = build_model(c);
  auto j = model_to_json(m, "naturals");
  auto [restored, semiring] = model_from_json(j);
  CHECK(semiring == "naturals");
  CHECK(!restored.has_analyses);
  CHECK(restored.basis == m.basis);
  CHECK(restored.object_rank == m.object_rank);
  CHECK(restored.word_index == m.word_index);
  CHECK(restored.modifier_support == m.modifier_support);
  CHECK(restored.interaction_support == m.interaction_support);
  CHECK(restored.config == m.config);
  CHECK(model_to_json(restored, semiring) == j);

  CHECK(word_vector<N>(restored, {"dog", "N"}) == word_vector<N>(m, {"dog", "N"}));
  CHECK(squared_norm<N>(restored, {"fox", "N"}) == N::Value(1));
  try {
    sentence_vector<N>(restored, "s1");
    FAIL("expected NeedsCorpus");
  } catch (const DscError& e) {
    CHECK(std::string(e.code()) == "NeedsCorpus");
  }
}

TEST_CASE("model json rejects tampering") {
  auto j = model_to_json(build_model(load_fixture("ex1.txt")), "naturals");

  auto drop = j;
  drop.erase("objectRank");
  CHECK_THROWS_AS(model_from_json(drop), ModelFormat);

  auto bad_rank = j;
  bad_rank["objectRank"] = {1, 2};
  CHECK_THROWS_AS(model_from_json(bad_rank), ModelFormat);

  auto bad_pair = j;
  bad_pair["interactionSupport"]["of/P"] = {{1, 0}};
  CHECK_THROWS_AS(model_from_json(bad_pair), ModelFormat);

  auto overlap = j;
  overlap["wordIndex"]["cat/N"] = {0};
  CHECK_THROWS_AS(model_from_json(overlap), ModelFormat);

  auto bad_cat = j;
  bad_cat["modifierSupport"]["stray/N"] = {0};
  CHECK_THROWS_AS(model_from_json(bad_cat), ModelFormat);

  auto bad_basis = j;
  bad_basis["basis"][0][1] = 0;
  CHECK_THROWS_AS(model_from_json(bad_basis), ModelFormat);
}

TEST_CASE("vector json round-trips over both semirings") {
  auto m = build_model(load_fixture("ex1.txt"));
  SparseVec<N> v(3);
  v.set(0, N::Value(2));
  v.set(2, N::Value(1) << 100);
  auto j = vector_to_json<N>(m.basis, v);
  CHECK(j["coeffs"]["0"] == "2");
  CHECK(j["basis"][0][0] == "s1");
  auto back = vector_from_json<N>(j, 3);
  CHECK(back == v);

  SparseVec<B> vb(3);
  vb.set(1, true);
  auto jb = vector_to_json<B>(m.basis, vb);
  CHECK(jb["coeffs"]["1"] == true);
  CHECK(vector_from_json<B>(jb, 3) == vb);

  Json broken = j;
  broken["coeffs"]["9"] = "1";
  CHECK_THROWS_AS(vector_from_json<N>(broken, 3), DscError);
}

TEST_CASE("analysis json lists objects, pairs, and the class tree") {
  auto c = load_fixture("ex1.txt");
  auto j = analysis_to_json(analyze_sentence(*c.find("s1"), c.config));
  CHECK(j["id"] == "s1");
  REQUIRE(j["objects"].size() == 12);
  CHECK(j["objects"][0]["label"] == "S");
  CHECK(j["objects"][0]["span"] == Json::array({1, 13}));
  REQUIRE(j["class_tree"].is_object());
  CHECK(j["class_tree"]["kind"] == "join");
  bool saw_dog_lady = false;
  for (const auto& p : j["pairs"])
    if (p["instances"] == Json::array({10})) saw_dog_lady = true;
  CHECK(saw_dog_lady);

  auto cc = load_fixture("conj.txt");
  auto jc = analysis_to_json(analyze_sentence(*cc.find("conj1"), cc.config));
  CHECK(jc["class_tree"]["error"] == "ConjunctionJoin");
}
