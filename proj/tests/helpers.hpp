#pragma once

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "dsc/corpus.hpp"
#include "dsc/syntax.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& name) {
  return std::string(DSC_FIXTURE_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline dsc::Corpus corpus_from(const std::string& text,
                               dsc::CategoryConfig config = dsc::CategoryConfig::defaults()) {
  return dsc::parse_corpus(text, config);
}

inline dsc::Corpus load_fixture(const std::string& name) {
  return corpus_from(slurp(fixture_path(name)));
}

inline const dsc::Sentence& sentence(const dsc::Corpus& c, const std::string& id) {
  const dsc::Sentence* s = c.find(id);
  REQUIRE(s != nullptr);
  return *s;
}

// Object id of the object whose span is exactly [first, last]; requires it
// to exist and be unique except for word-vs-phrase at equal spans, where the
// phrase (shallower) wins unless want_word is set.
inline int object_by_span(const dsc::ObjectAnalysis& a, int first, int last,
                          bool want_word = false) {
  int found = -1;
  for (int i = 0; i < a.object_count(); ++i) {
    const auto& o = a.object(i);
    if (o.first_pos != first || o.last_pos != last) continue;
    if (o.is_word != want_word) continue;
    REQUIRE(found == -1);
    found = i;
  }
  REQUIRE(found != -1);
  return found;
}

struct CliResult {
  int status = -1;
  std::string out;
};

// Runs the built binary with sh-quoted args, capturing stdout. stderr is
// dropped unless merge_stderr.
inline CliResult run_cli(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string(DSC_BIN) + " " + args +
                    (merge_stderr ? " 2>&1" : " 2>/dev/null");
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int rc = pclose(p);
  REQUIRE(rc != -1);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

inline std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/dsc_test_" + name;
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << content;
  out.close();
  return path;
}

// ---------------------------------------------------------------------------
// Random corpora for differential testing. Trees are sampled directly from
// the grammar shape (binary nodes, phrasal inner labels, lexical leaves) and
// rejection-filtered through validate(), so the generator cannot drift from
// the checked invariants.

class RandomCorpora {
public:
  explicit RandomCorpora(unsigned seed) : rng_(seed) {}

  dsc::Corpus next(std::size_t max_sentences = 3, int max_object_words = 8) {
    const auto config = dsc::CategoryConfig::defaults();
    for (;;) {
      std::ostringstream text;
      std::size_t n_sentences = 1 + rng_() % max_sentences;
      for (std::size_t i = 0; i < n_sentences; ++i) {
        emit_tree(text, 1 + static_cast<int>(rng_() % 4), true);
        text << "\n";
      }
      dsc::Corpus c;
      try {
        c = dsc::parse_corpus(text.str(), config);
      } catch (const dsc::DscError&) {
        continue;
      }
      if (!dsc::validate(c).empty()) continue;
      int object_words = 0;
      for (const auto& s : c.sentences)
        for (const auto& w : s.words)
          if (config.is_object_lexical(w.cat)) ++object_words;
      if (object_words == 0 || object_words > max_object_words) continue;
      return c;
    }
  }

private:
  void emit_tree(std::ostream& out, int leaves, bool root) {
    if (leaves <= 1) {
      emit_leaf(out, root);
      return;
    }
    static const char* kPhrasal[] = {"NP", "VP", "PP", "S", "AdjP"};
    static const char* kRootPhrasal[] = {"NP", "S"};
    const char* label = root ? kRootPhrasal[rng_() % 2] : kPhrasal[rng_() % 5];
    int left = 1 + static_cast<int>(rng_() % static_cast<unsigned>(leaves - 1));
    out << "(" << label << " ";
    emit_tree(out, left, false);
    out << " ";
    emit_tree(out, leaves - left, false);
    out << ")";
  }

  void emit_leaf(std::ostream& out, bool root) {
    struct Entry {
      const char* cat;
      const char* words[4];
      int n;
    };
    static const Entry kObject[] = {
        {"N", {"dog", "cat", "fox", "man"}, 4},
        {"Pron", {"she", "he", nullptr, nullptr}, 2},
    };
    static const Entry kOther[] = {
        {"Det", {"the", "a", nullptr, nullptr}, 2},
        {"Adj", {"big", "red", nullptr, nullptr}, 2},
        {"V", {"runs", "sees", nullptr, nullptr}, 2},
        {"P", {"on", "of", nullptr, nullptr}, 2},
        {"Adv", {"soon", nullptr, nullptr, nullptr}, 1},
    };
    // Lean on object words so rejection sampling converges quickly.
    bool object = root || rng_() % 100 < 55;
    const Entry& e = object ? kObject[rng_() % 10 == 0 ? 1 : 0] : kOther[rng_() % 5];
    out << "(" << e.cat << " " << e.words[rng_() % static_cast<unsigned>(e.n)] << ")";
  }

  std::mt19937 rng_;
};

}  // namespace testutil
