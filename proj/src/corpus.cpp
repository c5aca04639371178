#include "dsc/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dsc {

CategoryConfig CategoryConfig::defaults() {
  CategoryConfig c;
  c.lexical = {"Adj", "P", "Adv", "Conj", "Det", "N", "Pron", "Poss", "V"};
  c.phrasal = {"AdjP", "AdvP", "PP", "NP", "VP", "S"};
  c.object_lexical = {"N", "Pron"};
  c.object_phrasal = {"NP", "S"};
  c.conjunction = "Conj";
  c.lowercase = false;
  return c;
}

void CategoryConfig::check() const {
  if (lexical.empty()) throw BadConfig("no lexical categories configured");
  if (phrasal.empty()) throw BadConfig("no phrasal categories configured");
  for (const auto& c : lexical)
    if (phrasal.count(c)) throw BadConfig("category '" + c + "' is both lexical and phrasal");
  for (const auto& c : object_lexical)
    if (!lexical.count(c))
      throw BadConfig("object category '" + c + "' is not a lexical category");
  for (const auto& c : object_phrasal)
    if (!phrasal.count(c))
      throw BadConfig("object category '" + c + "' is not a phrasal category");
  if (!lexical.count(conjunction))
    throw BadConfig("conjunction category '" + conjunction + "' is not a lexical category");
}

Word parse_word_spec(const std::string& text) {
  auto slash = text.rfind('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == text.size())
    throw BadWordSpec("expected surface/CATEGORY, got '" + text + "'");
  return Word{text.substr(0, slash), text.substr(slash + 1)};
}

const TreeNode* node_at(const TreeNode& root, const NodePath& path) {
  const TreeNode* n = &root;
  for (int i : path) {
    if (i < 0 || static_cast<std::size_t>(i) >= n->children.size()) return nullptr;
    n = &n->children[i];
  }
  return n;
}

std::string path_to_string(const NodePath& path) {
  if (path.empty()) return "root";
  std::string s = "root";
  for (int i : path) s += "." + std::to_string(i);
  return s;
}

const Sentence* Corpus::find(const std::string& id) const {
  for (const auto& s : sentences)
    if (s.id == id) return &s;
  return nullptr;
}

std::string_view to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::NonBinaryNode: return "NonBinaryNode";
    case ViolationCode::TernaryMiddleNotConj: return "TernaryMiddleNotConj";
    case ViolationCode::InternalWithLexicalLabel: return "InternalWithLexicalLabel";
    case ViolationCode::LeafWithPhrasalLabel: return "LeafWithPhrasalLabel";
    case ViolationCode::RootNotObject: return "RootNotObject";
    case ViolationCode::ObjectWithoutObjectWord: return "ObjectWithoutObjectWord";
  }
  return "Unknown";
}

namespace {

std::string violations_summary(const std::vector<Violation>& vs) {
  std::ostringstream os;
  os << vs.size() << " violation" << (vs.size() == 1 ? "" : "s");
  for (const auto& v : vs)
    os << "; " << to_string(v.code) << " at " << v.sentence << ":" << path_to_string(v.path);
  return os.str();
}

}  // namespace

ValidationFailed::ValidationFailed(std::vector<Violation> vs)
    : DscError("ValidationFailed", violations_summary(vs)), violations(std::move(vs)) {}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;

  // Token kinds: '(' , ')', atom, end. Comments are consumed here; an
  // "# id: NAME" comment is surfaced through pending_id.
  struct Token {
    enum Kind { LParen, RParen, Atom, End } kind;
    std::string value;
    int line;
  };

  std::string pending_id;
  bool has_pending_id = false;

  void skip_space_and_comments() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '\n') {
        ++line;
        ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else if (c == '#') {
        std::size_t eol = text.find('\n', pos);
        std::string_view comment =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        handle_comment(comment);
        pos = eol == std::string_view::npos ? text.size() : eol;
      } else {
        break;
      }
    }
  }

  void handle_comment(std::string_view comment) {
    // comment starts with '#'; recognize "# id: NAME" (internal spaces free).
    std::size_t i = 1;
    while (i < comment.size() && std::isspace(static_cast<unsigned char>(comment[i]))) ++i;
    if (comment.compare(i, 3, "id:") != 0) return;
    i += 3;
    while (i < comment.size() && std::isspace(static_cast<unsigned char>(comment[i]))) ++i;
    std::size_t j = comment.size();
    while (j > i && std::isspace(static_cast<unsigned char>(comment[j - 1]))) --j;
    if (j <= i) throw SyntaxError("line " + std::to_string(line) + ": empty id directive");
    if (has_pending_id)
      throw SyntaxError("line " + std::to_string(line) + ": id directive without a tree after '" +
                        pending_id + "'");
    pending_id = std::string(comment.substr(i, j - i));
    has_pending_id = true;
  }

  Token next() {
    skip_space_and_comments();
    if (pos >= text.size()) return {Token::End, "", line};
    char c = text[pos];
    if (c == '(') {
      ++pos;
      return {Token::LParen, "(", line};
    }
    if (c == ')') {
      ++pos;
      return {Token::RParen, ")", line};
    }
    std::size_t start = pos;
    while (pos < text.size()) {
      char d = text[pos];
      if (d == '(' || d == ')' || d == '#' || std::isspace(static_cast<unsigned char>(d))) break;
      ++pos;
    }
    return {Token::Atom, std::string(text.substr(start, pos - start)), line};
  }
};

struct Parser {
  Lexer lex;
  const CategoryConfig& config;
  Lexer::Token tok;

  Parser(std::string_view text, const CategoryConfig& cfg) : lex{.text = text}, config(cfg) {
    tok = lex.next();
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw SyntaxError("line " + std::to_string(tok.line) + ": " + msg);
  }

  TreeNode parse_tree() {
    if (tok.kind != Lexer::Token::LParen) fail("expected '('");
    tok = lex.next();
    if (tok.kind != Lexer::Token::Atom) fail("expected a category label after '('");
    TreeNode node;
    node.label = tok.value;
    if (!config.is_lexical(node.label) && !config.is_phrasal(node.label))
      throw UnknownCategory("line " + std::to_string(tok.line) + ": category '" + node.label +
                            "' is not configured");
    tok = lex.next();

    std::vector<std::string> atoms;
    int atom_line = tok.line;
    while (tok.kind != Lexer::Token::RParen) {
      if (tok.kind == Lexer::Token::End) fail("unexpected end of input inside '" + node.label + "'");
      if (tok.kind == Lexer::Token::LParen) {
        node.children.push_back(parse_tree());
      } else {
        atoms.push_back(tok.value);
        atom_line = tok.line;
        tok = lex.next();
      }
    }
    tok = lex.next();  // consume ')'

    if (node.children.empty() && atoms.empty()) fail("empty node '(" + node.label + ")'");
    if (!atoms.empty() && !node.children.empty())
      throw LeafShape("line " + std::to_string(atom_line) + ": node '" + node.label +
                      "' mixes surface tokens and subtrees");
    if (atoms.size() > 1)
      throw LeafShape("line " + std::to_string(atom_line) + ": leaf '" + node.label +
                      "' has more than one surface token");
    if (atoms.size() == 1) node.surface = atoms[0];
    return node;
  }
};

void number_leaves(TreeNode& node, std::vector<Word>& words, bool lowercase) {
  if (node.is_leaf()) {
    if (lowercase) {
      std::transform(node.surface.begin(), node.surface.end(), node.surface.begin(),
                     [](unsigned char c) { return std::tolower(c); });
    }
    node.position = static_cast<int>(words.size()) + 1;
    words.push_back(Word{node.surface, node.label});
    return;
  }
  for (auto& child : node.children) number_leaves(child, words, lowercase);
}

void serialize_node(const TreeNode& node, std::string& out) {
  out += '(';
  out += node.label;
  if (node.is_leaf()) {
    out += ' ';
    out += node.surface;
  } else {
    for (const auto& child : node.children) {
      out += ' ';
      serialize_node(child, out);
    }
  }
  out += ')';
}

}  // namespace

Corpus parse_corpus(std::string_view text, const CategoryConfig& config) {
  config.check();
  Corpus corpus;
  corpus.config = config;
  Parser p(text, config);
  std::set<std::string> seen_ids;
  int counter = 0;
  while (p.tok.kind != Lexer::Token::End) {
    if (p.tok.kind == Lexer::Token::Atom)
      p.fail("stray token '" + p.tok.value + "' outside a tree");
    if (p.tok.kind == Lexer::Token::RParen) p.fail("unmatched ')'");
    Sentence s;
    // Claim the id before parsing: the tree's trailing lookahead may already
    // read the directive that belongs to the sentence after this one.
    bool has_directed_id = p.lex.has_pending_id;
    std::string directed_id = p.lex.pending_id;
    p.lex.has_pending_id = false;
    s.tree = p.parse_tree();
    ++counter;
    s.id = has_directed_id ? directed_id : std::to_string(counter);
    if (!seen_ids.insert(s.id).second)
      throw SyntaxError("duplicate sentence id '" + s.id + "'");
    number_leaves(s.tree, s.words, config.lowercase);
    corpus.sentences.push_back(std::move(s));
  }
  if (p.lex.has_pending_id)
    throw SyntaxError("id directive '" + p.lex.pending_id + "' is not followed by a tree");
  return corpus;
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  for (const auto& s : corpus.sentences) {
    out += "# id: " + s.id + "\n";
    serialize_node(s.tree, out);
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

struct ValidationWalk {
  const CategoryConfig& config;
  const Sentence& sentence;
  std::vector<Violation>& out;

  void add(ViolationCode code, const NodePath& path, std::string detail) {
    out.push_back(Violation{code, sentence.id, path, std::move(detail)});
  }

  // Returns the number of object-word leaves under the node.
  int walk(const TreeNode& node, NodePath& path) {
    int object_words = 0;
    if (node.is_leaf()) {
      if (config.is_phrasal(node.label))
        add(ViolationCode::LeafWithPhrasalLabel, path,
            "leaf '" + node.surface + "' carries phrasal category '" + node.label + "'");
      if (config.is_object_lexical(node.label)) object_words = 1;
    } else {
      if (config.is_lexical(node.label))
        add(ViolationCode::InternalWithLexicalLabel, path,
            "internal node carries lexical category '" + node.label + "'");
      std::size_t n = node.children.size();
      if (n == 3) {
        const TreeNode& mid = node.children[1];
        if (!mid.is_leaf() || mid.label != config.conjunction)
          add(ViolationCode::TernaryMiddleNotConj, path,
              "ternary node's middle child is not a " + config.conjunction + " leaf");
      } else if (n != 2) {
        add(ViolationCode::NonBinaryNode, path,
            "internal node has " + std::to_string(n) + " children");
      }
      for (std::size_t i = 0; i < n; ++i) {
        path.push_back(static_cast<int>(i));
        object_words += walk(node.children[i], path);
        path.pop_back();
      }
    }
    if (config.is_object_category(node.label) && object_words == 0)
      add(ViolationCode::ObjectWithoutObjectWord, path,
          "object with category '" + node.label + "' spans no object word");
    return object_words;
  }
};

}  // namespace

std::vector<Violation> validate(const Corpus& corpus) {
  std::vector<Violation> out;
  for (const auto& s : corpus.sentences) {
    if (!corpus.config.is_object_category(s.tree.label))
      out.push_back(Violation{ViolationCode::RootNotObject, s.id, {},
                              "root category '" + s.tree.label + "' is not an object category"});
    ValidationWalk w{corpus.config, s, out};
    NodePath path;
    w.walk(s.tree, path);
  }
  return out;
}

std::vector<std::pair<InstanceRef, Word>> instances(const Corpus& corpus) {
  std::vector<std::pair<InstanceRef, Word>> out;
  for (const auto& s : corpus.sentences)
    for (std::size_t i = 0; i < s.words.size(); ++i)
      out.emplace_back(InstanceRef{s.id, static_cast<int>(i) + 1}, s.words[i]);
  return out;
}

}  // namespace dsc
