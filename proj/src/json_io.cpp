#include "dsc/json_io.hpp"

#include <algorithm>

namespace dsc {

namespace {

Json path_to_json(const NodePath& path) { return path_to_string(path); }

Json string_set_to_json(const std::set<std::string>& s) {
  Json out = Json::array();
  for (const auto& x : s) out.push_back(x);
  return out;
}

std::set<std::string> string_set_from_json(const Json& j, const std::string& key) {
  if (!j.is_array()) throw BadConfig("'" + key + "' must be an array of category names");
  std::set<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw BadConfig("'" + key + "' must contain strings only");
    out.insert(x.get<std::string>());
  }
  return out;
}

}  // namespace

Json violations_to_json(const std::vector<Violation>& violations) {
  Json list = Json::array();
  for (const auto& v : violations) {
    Json item;
    item["code"] = std::string(to_string(v.code));
    item["sentence"] = v.sentence;
    item["path"] = path_to_json(v.path);
    item["detail"] = v.detail;
    list.push_back(std::move(item));
  }
  Json out;
  out["violations"] = std::move(list);
  return out;
}

Json config_to_json(const CategoryConfig& config) {
  Json out;
  out["lexical"] = string_set_to_json(config.lexical);
  out["phrasal"] = string_set_to_json(config.phrasal);
  out["object_lexical"] = string_set_to_json(config.object_lexical);
  out["object_phrasal"] = string_set_to_json(config.object_phrasal);
  out["conjunction"] = config.conjunction;
  out["lowercase"] = config.lowercase;
  return out;
}

CategoryConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw BadConfig("category config must be a JSON object");
  CategoryConfig c = CategoryConfig::defaults();
  if (j.contains("lexical")) c.lexical = string_set_from_json(j.at("lexical"), "lexical");
  if (j.contains("phrasal")) c.phrasal = string_set_from_json(j.at("phrasal"), "phrasal");
  if (j.contains("object_lexical"))
    c.object_lexical = string_set_from_json(j.at("object_lexical"), "object_lexical");
  if (j.contains("object_phrasal"))
    c.object_phrasal = string_set_from_json(j.at("object_phrasal"), "object_phrasal");
  if (j.contains("conjunction")) {
    if (!j.at("conjunction").is_string()) throw BadConfig("'conjunction' must be a string");
    c.conjunction = j.at("conjunction").get<std::string>();
  }
  if (j.contains("lowercase")) {
    if (!j.at("lowercase").is_boolean()) throw BadConfig("'lowercase' must be a boolean");
    c.lowercase = j.at("lowercase").get<bool>();
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "lexical" && key != "phrasal" && key != "object_lexical" &&
        key != "object_phrasal" && key != "conjunction" && key != "lowercase")
      throw BadConfig("unknown config key '" + key + "'");
  }
  c.check();
  return c;
}

namespace {

Json class_tree_to_json(const ClassTree& tree, int class_id) {
  const ClassNode& node = tree.nodes[static_cast<std::size_t>(class_id)];
  Json out;
  out["kind"] = node.kind == ClassNode::Kind::Leaf ? "leaf" : "join";
  out["min"] = node.min_obj;
  out["max"] = node.max_obj;
  Json members = Json::array();
  for (int m : node.members) members.push_back(m);
  out["members"] = std::move(members);
  if (node.kind == ClassNode::Kind::Leaf) {
    out["position"] = node.leaf_position;
  } else {
    out["left"] = class_tree_to_json(tree, node.left);
    out["right"] = class_tree_to_json(tree, node.right);
  }
  return out;
}

}  // namespace

Json analysis_to_json(const ObjectAnalysis& a) {
  Json out;
  out["id"] = a.sentence_id();

  Json objects = Json::array();
  for (int i = 0; i < a.object_count(); ++i) {
    const ObjectInfo& o = a.object(i);
    Json item;
    item["index"] = i;
    item["path"] = path_to_json(o.path);
    item["label"] = o.label;
    item["span"] = Json::array({o.first_pos, o.last_pos});
    item["word"] = o.is_word;
    item["parent"] = o.parent;
    item["completion"] = a.completion(i);
    Json mods = Json::array();
    for (int p : a.modifier_instances(i)) mods.push_back(p);
    item["modifiers"] = std::move(mods);
    objects.push_back(std::move(item));
  }
  out["objects"] = std::move(objects);

  Json pairs = Json::array();
  for (int i = 0; i < a.object_count(); ++i)
    for (int j = 0; j < a.object_count(); ++j) {
      if (i == j || !a.left_of(i, j)) continue;
      Json item;
      item["left"] = i;
      item["right"] = j;
      item["join"] = a.join(i, j);
      Json inst = Json::array();
      for (int p : a.interaction_instances(i, j)) inst.push_back(p);
      item["instances"] = std::move(inst);
      pairs.push_back(std::move(item));
    }
  out["pairs"] = std::move(pairs);

  if (a.class_tree()) {
    out["class_tree"] = class_tree_to_json(*a.class_tree(), a.class_tree()->root);
  } else if (a.conjunction_issue()) {
    Json err;
    err["error"] = "ConjunctionJoin";
    err["path"] = path_to_json(a.conjunction_issue()->path);
    err["detail"] = a.conjunction_issue()->detail;
    out["class_tree"] = std::move(err);
  } else {
    out["class_tree"] = nullptr;
  }
  return out;
}

Json model_to_json(const SemanticModel& m, std::string_view semiring_name) {
  Json out;
  out["basis"] = basis_to_json(m.basis);

  Json word_index = Json::object();
  for (const auto& [w, xs] : m.word_index) {
    Json list = Json::array();
    for (std::size_t x : xs) list.push_back(x);
    word_index[w.spec()] = std::move(list);
  }
  out["wordIndex"] = std::move(word_index);

  Json modifier = Json::object();
  for (const auto& [w, xs] : m.modifier_support) {
    Json list = Json::array();
    for (std::size_t x : xs) list.push_back(x);
    modifier[w.spec()] = std::move(list);
  }
  out["modifierSupport"] = std::move(modifier);

  Json interaction = Json::object();
  for (const auto& [w, ps] : m.interaction_support) {
    Json list = Json::array();
    for (const auto& [x, y] : ps) list.push_back(Json::array({x, y}));
    interaction[w.spec()] = std::move(list);
  }
  out["interactionSupport"] = std::move(interaction);

  Json ranks = Json::array();
  for (int r : m.object_rank) ranks.push_back(r);
  out["objectRank"] = std::move(ranks);

  Json config = config_to_json(m.config);
  config["semiring"] = std::string(semiring_name);
  out["config"] = std::move(config);
  return out;
}

namespace {

[[noreturn]] void bad_model(const std::string& detail) { throw ModelFormat(detail); }

std::size_t index_from_json(const Json& j, std::size_t basis_size, const std::string& context) {
  if (!j.is_number_unsigned()) bad_model(context + ": index must be a non-negative integer");
  std::size_t x = j.get<std::size_t>();
  if (x >= basis_size)
    bad_model(context + ": index " + std::to_string(x) + " outside basis of size " +
              std::to_string(basis_size));
  return x;
}

}  // namespace

std::pair<SemanticModel, std::string> model_from_json(const Json& j) {
  if (!j.is_object()) bad_model("model must be a JSON object");
  for (const char* key : {"basis", "wordIndex", "modifierSupport", "interactionSupport",
                          "objectRank", "config"})
    if (!j.contains(key)) bad_model(std::string("missing '") + key + "'");

  SemanticModel m;

  const Json& jc = j.at("config");
  if (!jc.is_object() || !jc.contains("semiring") || !jc.at("semiring").is_string())
    bad_model("config must record the semiring");
  std::string semiring = jc.at("semiring").get<std::string>();
  Json config_only = jc;
  config_only.erase("semiring");
  try {
    m.config = config_from_json(config_only);
  } catch (const BadConfig& e) {
    bad_model(std::string("bad config: ") + e.what());
  }

  const Json& jb = j.at("basis");
  if (!jb.is_array()) bad_model("'basis' must be an array");
  for (const auto& entry : jb) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
        !entry[1].is_number_integer())
      bad_model("basis entries must be [sentence, position] pairs");
    InstanceRef ref{entry[0].get<std::string>(), entry[1].get<int>()};
    if (ref.position < 1) bad_model("basis positions are 1-based");
    if (!m.basis_index.emplace(ref, m.basis.size()).second)
      bad_model("duplicate basis entry for " + ref.sentence + ":" +
                std::to_string(ref.position));
    m.basis.push_back(ref);
  }

  auto read_support = [&](const char* key, bool object_words) {
    std::map<Word, std::vector<std::size_t>> out;
    const Json& js = j.at(key);
    if (!js.is_object()) bad_model(std::string("'") + key + "' must be an object");
    for (const auto& [spec, list] : js.items()) {
      Word w;
      try {
        w = parse_word_spec(spec);
      } catch (const BadWordSpec& e) {
        bad_model(std::string(key) + ": " + e.what());
      }
      if (!m.config.is_lexical(w.cat))
        bad_model(std::string(key) + ": '" + spec + "' has no lexical category");
      if (object_words != m.config.is_object_lexical(w.cat))
        bad_model(std::string(key) + ": '" + spec + "' is " +
                  (object_words ? "not an object word" : "an object word"));
      if (!list.is_array()) bad_model(std::string(key) + ": supports must be arrays");
      std::vector<std::size_t> xs;
      for (const auto& x : list) xs.push_back(index_from_json(x, m.basis.size(), key));
      if (!std::is_sorted(xs.begin(), xs.end()) ||
          std::adjacent_find(xs.begin(), xs.end()) != xs.end())
        bad_model(std::string(key) + ": support of '" + spec + "' must be strictly increasing");
      out.emplace(w, std::move(xs));
    }
    return out;
  };

  m.word_index = read_support("wordIndex", true);
  m.modifier_support = read_support("modifierSupport", false);

  const Json& ji = j.at("interactionSupport");
  if (!ji.is_object()) bad_model("'interactionSupport' must be an object");
  for (const auto& [spec, list] : ji.items()) {
    Word w;
    try {
      w = parse_word_spec(spec);
    } catch (const BadWordSpec& e) {
      bad_model(std::string("interactionSupport: ") + e.what());
    }
    if (!m.config.is_lexical(w.cat) || m.config.is_object_lexical(w.cat))
      bad_model("interactionSupport: '" + spec + "' cannot carry interactions");
    if (!list.is_array()) bad_model("interactionSupport: supports must be arrays");
    std::vector<std::pair<std::size_t, std::size_t>> ps;
    for (const auto& entry : list) {
      if (!entry.is_array() || entry.size() != 2)
        bad_model("interactionSupport: pairs must be [left, right]");
      std::size_t x = index_from_json(entry[0], m.basis.size(), "interactionSupport");
      std::size_t y = index_from_json(entry[1], m.basis.size(), "interactionSupport");
      if (x >= y) bad_model("interactionSupport: pair components must be ordered left before right");
      if (m.basis[x].sentence != m.basis[y].sentence)
        bad_model("interactionSupport: pair spans two sentences");
      ps.emplace_back(x, y);
    }
    if (!std::is_sorted(ps.begin(), ps.end()) ||
        std::adjacent_find(ps.begin(), ps.end()) != ps.end())
      bad_model("interactionSupport: support of '" + spec + "' must be strictly increasing");
    m.interaction_support.emplace(w, std::move(ps));
  }

  const Json& jr = j.at("objectRank");
  if (!jr.is_array() || jr.size() != m.basis.size())
    bad_model("'objectRank' must list one rank per basis entry");
  for (const auto& r : jr) {
    if (!r.is_number_integer() || r.get<int>() < 1) bad_model("object ranks are 1-based");
    m.object_rank.push_back(r.get<int>());
  }

  // Word occurrences must pick out exactly the basis, each index once.
  {
    std::vector<bool> seen(m.basis.size(), false);
    for (const auto& [w, xs] : m.word_index)
      for (std::size_t x : xs) {
        if (seen[x]) bad_model("wordIndex: index " + std::to_string(x) + " listed twice");
        seen[x] = true;
      }
    for (std::size_t x = 0; x < seen.size(); ++x)
      if (!seen[x]) bad_model("wordIndex: basis index " + std::to_string(x) + " has no word");
  }

  m.has_analyses = false;
  return {std::move(m), std::move(semiring)};
}

}  // namespace dsc
