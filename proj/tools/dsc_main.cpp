#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dsc/corpus.hpp"
#include "dsc/json_io.hpp"
#include "dsc/oracle.hpp"
#include "dsc/semantics.hpp"
#include "dsc/semimodule.hpp"
#include "dsc/semiring.hpp"
#include "dsc/syntax.hpp"

namespace {

using dsc::Json;

struct Usage {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dsc::IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dsc::IoError("cannot write '" + path + "'");
  out << content;
  if (!out) throw dsc::IoError("write to '" + path + "' failed");
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

dsc::CategoryConfig load_config(const std::string& path, bool explicit_path) {
  std::ifstream probe(path);
  if (!probe) {
    if (explicit_path) throw dsc::IoError("cannot read config '" + path + "'");
    return dsc::CategoryConfig::defaults();
  }
  probe.close();
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw dsc::BadConfig("config '" + path + "' is not valid JSON: " + e.what());
  }
  return dsc::config_from_json(j);
}

dsc::Corpus load_corpus(const std::string& path, const dsc::CategoryConfig& config) {
  return dsc::parse_corpus(read_file(path), config);
}

// ---------------------------------------------------------------------------
// Modifier logic expressions: m(word/CAT), AND, OR, NOT, parentheses.

template <dsc::Semiring S>
class LogicParser {
public:
  LogicParser(const dsc::SemanticModel& model, std::string_view text)
      : model_(model), text_(text) {}

  dsc::ModifierOp parse() {
    auto op = parse_or();
    skip_ws();
    if (pos_ != text_.size())
      throw dsc::DscError("BadExpression", "unexpected input after expression: '" +
                                                   std::string(text_.substr(pos_)) + "'");
    return op;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool take_keyword(std::string_view kw) {
    skip_ws();
    if (text_.substr(pos_, kw.size()) != kw) return false;
    std::size_t after = pos_ + kw.size();
    if (after < text_.size()) {
      char c = text_[after];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return false;
    }
    pos_ = after;
    return true;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw dsc::DscError("BadExpression", msg + " at offset " + std::to_string(pos_));
  }

  dsc::ModifierOp parse_or() {
    auto left = parse_and();
    while (take_keyword("OR")) {
      auto right = parse_and();
      left = dsc::modifier_join<S>(left, right);
    }
    return left;
  }

  dsc::ModifierOp parse_and() {
    auto left = parse_factor();
    while (take_keyword("AND")) {
      auto right = parse_factor();
      left = dsc::modifier_meet(left, right);
    }
    return left;
  }

  dsc::ModifierOp parse_factor() {
    if (take_keyword("NOT")) {
      auto inner = parse_factor();
      return dsc::modifier_complement<S>(inner, model_.basis.size());
    }
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      auto inner = parse_or();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (pos_ < text_.size() && text_[pos_] == 'm') {
      std::size_t p = pos_ + 1;
      while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
      if (p < text_.size() && text_[p] == '(') {
        std::size_t close = text_.find(')', p + 1);
        if (close == std::string_view::npos) fail("unterminated m(...)");
        std::string spec(text_.substr(p + 1, close - p - 1));
        // trim
        while (!spec.empty() && std::isspace(static_cast<unsigned char>(spec.front())))
          spec.erase(spec.begin());
        while (!spec.empty() && std::isspace(static_cast<unsigned char>(spec.back())))
          spec.pop_back();
        pos_ = close + 1;
        return dsc::modifier_op(model_, dsc::parse_word_spec(spec));
      }
    }
    fail("expected NOT, '(', or m(word/CAT)");
  }

  const dsc::SemanticModel& model_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Query dispatch

struct QueryArgs {
  std::string kind;
  std::vector<std::string> rest;
  int k = 0;
};

template <dsc::Semiring S>
int run_query(const dsc::SemanticModel& model, const QueryArgs& q) {
  auto need = [&](std::size_t n, const char* usage) {
    if (q.rest.size() != n) throw Usage{std::string("query ") + q.kind + " expects " + usage};
  };
  if (q.kind == "vector") {
    need(1, "WORD/CAT");
    auto v = dsc::word_vector<S>(model, dsc::parse_word_spec(q.rest[0]));
    emit(dsc::vector_to_json<S>(model.basis, v));
  } else if (q.kind == "norm") {
    need(1, "WORD/CAT");
    auto n = dsc::squared_norm<S>(model, dsc::parse_word_spec(q.rest[0]));
    Json out;
    out["value"] = dsc::value_to_json<S>(n);
    emit(out);
  } else if (q.kind == "cooccur") {
    need(2, "-k K WORD/CAT WORD/CAT");
    auto n = dsc::ip_k<S>(model, q.k, dsc::parse_word_spec(q.rest[0]),
                          dsc::parse_word_spec(q.rest[1]));
    Json out;
    out["value"] = dsc::value_to_json<S>(n);
    emit(out);
  } else if (q.kind == "modify") {
    need(2, "MODIFIER/CAT WORD/CAT");
    auto v = dsc::word_vector<S>(model, dsc::parse_word_spec(q.rest[1]));
    auto r = dsc::modifier_apply<S>(model, dsc::parse_word_spec(q.rest[0]), v);
    emit(dsc::vector_to_json<S>(model.basis, r));
  } else if (q.kind == "interact") {
    need(3, "INTERACTION/CAT WORD/CAT WORD/CAT");
    auto a = dsc::word_vector<S>(model, dsc::parse_word_spec(q.rest[1]));
    auto b = dsc::word_vector<S>(model, dsc::parse_word_spec(q.rest[2]));
    auto r = dsc::interaction_apply<S>(model, dsc::parse_word_spec(q.rest[0]), a, b);
    emit(dsc::vector_to_json<S>(model.basis, r));
  } else if (q.kind == "logic") {
    need(1, "EXPR");
    auto op = LogicParser<S>(model, q.rest[0]).parse();
    emit(dsc::vector_to_json<S>(model.basis, dsc::indicator_vector<S>(model, op)));
  } else if (q.kind == "sentence-vec") {
    need(1, "SENTENCE_ID");
    auto v = dsc::sentence_vector<S>(model, q.rest[0]);
    emit(dsc::vector_to_json<S>(model.basis, v));
  } else {
    throw Usage{"unknown query kind '" + q.kind +
                "' (expected vector, norm, cooccur, modify, interact, logic, sentence-vec)"};
  }
  return 0;
}

template <dsc::Semiring S>
int run_oracle_sentence_vec(const dsc::Corpus& corpus, const std::string& id) {
  auto eval = dsc::oracle::evaluate_sentence_diagram<S>(corpus, id);
  dsc::SparseVec<S> v(eval.basis.size());
  for (std::size_t i = 0; i < eval.basis.size(); ++i) v.set(i, eval.vector.at(i, 0));
  emit(dsc::vector_to_json<S>(eval.basis, v));
  return 0;
}

int dispatch_semiring(const std::string& name, auto&& fn) {
  if (name == "naturals") return fn(dsc::Naturals{});
  if (name == "boolean") return fn(dsc::Booleans{});
  throw Usage{"unknown semiring '" + name + "' (expected naturals or boolean)"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corpus-to-semantics engine over constituency-annotated corpora"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path = "./categories.json";
  std::string semiring = "naturals";
  app.add_option("--config", config_path, "category config JSON")->capture_default_str();
  auto* semiring_opt =
      app.add_option("--semiring", semiring, "coefficient semiring")
          ->check(CLI::IsMember({"naturals", "boolean"}))
          ->capture_default_str();

  std::string corpus_path, model_path, out_path, sentence_filter, oracle_sentence;

  auto* validate_cmd = app.add_subcommand("validate", "check a corpus for structural violations");
  validate_cmd->add_option("--corpus", corpus_path, "corpus file")->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "dump objects, completions, and interactions");
  analyze_cmd->add_option("--corpus", corpus_path, "corpus file")->required();
  analyze_cmd->add_option("--sentence", sentence_filter, "restrict to one sentence id");

  auto* build_cmd = app.add_subcommand("build", "build a semantic model from a corpus");
  build_cmd->add_option("--corpus", corpus_path, "corpus file")->required();
  build_cmd->add_option("--out", out_path, "model output path")->required();

  QueryArgs query;
  auto* query_cmd = app.add_subcommand("query", "query a model or corpus");
  auto* query_model_opt = query_cmd->add_option("--model", model_path, "model JSON file");
  auto* query_corpus_opt = query_cmd->add_option("--corpus", corpus_path, "corpus file");
  query_cmd->add_option("-k", query.k, "rank window for cooccur")
      ->check(CLI::NonNegativeNumber);
  query_cmd->add_option("kind", query.kind, "query kind")->required();
  query_cmd->add_option("args", query.rest, "query arguments");

  auto* oracle_cmd = app.add_subcommand("oracle", "reference evaluation paths");
  oracle_cmd->group("");  // internal; absent from help
  auto* oracle_vec_cmd = oracle_cmd->add_subcommand("sentence-vec", "dense sentence evaluation");
  oracle_vec_cmd->add_option("--corpus", corpus_path, "corpus file")->required();
  oracle_vec_cmd->add_option("--sentence", oracle_sentence, "sentence id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    Json out;
    out["error"] = "Usage";
    out["detail"] = e.what();
    emit(out);
    app.exit(e);
    return 2;
  }

  try {
    bool config_explicit = app.count("--config") > 0;

    if (validate_cmd->parsed()) {
      auto config = load_config(config_path, config_explicit);
      auto corpus = load_corpus(corpus_path, config);
      auto violations = dsc::validate(corpus);
      emit(dsc::violations_to_json(violations));
      return violations.empty() ? 0 : 1;
    }

    if (analyze_cmd->parsed()) {
      auto config = load_config(config_path, config_explicit);
      auto corpus = load_corpus(corpus_path, config);
      auto violations = dsc::validate(corpus);
      if (!violations.empty()) throw dsc::ValidationFailed(std::move(violations));
      Json sentences = Json::array();
      bool found = sentence_filter.empty();
      for (const auto& s : corpus.sentences) {
        if (!sentence_filter.empty() && s.id != sentence_filter) continue;
        found = true;
        sentences.push_back(dsc::analysis_to_json(dsc::analyze_sentence(s, corpus.config)));
      }
      if (!found) throw dsc::UnknownSentence("no sentence with id '" + sentence_filter + "'");
      Json out;
      out["sentences"] = std::move(sentences);
      emit(out);
      return 0;
    }

    if (build_cmd->parsed()) {
      auto config = load_config(config_path, config_explicit);
      auto corpus = load_corpus(corpus_path, config);
      auto model = dsc::build_model(corpus);
      write_file(out_path, dsc::model_to_json(model, semiring).dump(2) + "\n");
      Json out;
      out["model"] = out_path;
      out["basis"] = model.basis.size();
      out["sentences"] = corpus.sentences.size();
      emit(out);
      return 0;
    }

    if (query_cmd->parsed()) {
      bool have_model = query_model_opt->count() > 0;
      bool have_corpus = query_corpus_opt->count() > 0;
      if (have_model == have_corpus)
        throw Usage{"query needs exactly one of --model or --corpus"};
      dsc::SemanticModel model;
      std::string active = semiring;
      if (have_model) {
        Json j;
        try {
          j = Json::parse(read_file(model_path));
        } catch (const nlohmann::json::exception& e) {
          throw dsc::ModelFormat(std::string("model is not valid JSON: ") + e.what());
        }
        auto [loaded, recorded] = dsc::model_from_json(j);
        model = std::move(loaded);
        if (semiring_opt->count() > 0 && semiring != recorded)
          throw Usage{"--semiring " + semiring + " conflicts with the model's recorded '" +
                      recorded + "'"};
        active = recorded;
      } else {
        auto config = load_config(config_path, config_explicit);
        auto corpus = load_corpus(corpus_path, config);
        model = dsc::build_model(corpus);
      }
      return dispatch_semiring(active, [&]<class Tag>(Tag) { return run_query<Tag>(model, query); });
    }

    if (oracle_vec_cmd->parsed()) {
      auto config = load_config(config_path, config_explicit);
      auto corpus = load_corpus(corpus_path, config);
      return dispatch_semiring(
          semiring, [&]<class Tag>(Tag) { return run_oracle_sentence_vec<Tag>(corpus, oracle_sentence); });
    }

    throw Usage{"no subcommand given"};
  } catch (const Usage& u) {
    Json out;
    out["error"] = "Usage";
    out["detail"] = u.message;
    emit(out);
    std::cerr << "usage error: " << u.message << "\n";
    return 2;
  } catch (const dsc::DscError& e) {
    Json out;
    out["error"] = e.code();
    out["detail"] = e.what();
    if (const auto* vf = dynamic_cast<const dsc::ValidationFailed*>(&e))
      out["violations"] = dsc::violations_to_json(vf->violations)["violations"];
    emit(out);
    std::cerr << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    Json out;
    out["error"] = "Internal";
    out["detail"] = e.what();
    emit(out);
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
