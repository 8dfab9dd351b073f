#include "srl/tree.hpp"

#include <fstream>
#include <sstream>

namespace srl {

NodeLabel NodeLabel::parse(std::string_view raw) {
  NodeLabel label;
  if (raw.empty()) return label;
  // Split on '-'; a leading '-' belongs to the phrase type itself.
  std::vector<std::string> parts;
  std::size_t start = raw.front() == '-' ? 1 : 0;
  std::size_t pos = start;
  while (true) {
    std::size_t dash = raw.find('-', pos);
    if (dash == std::string_view::npos) {
      parts.emplace_back(raw.substr(pos));
      break;
    }
    parts.emplace_back(raw.substr(pos, dash - pos));
    pos = dash + 1;
  }
  if (start == 1) parts.front().insert(0, "-");
  label.phrase_type = parts.front();
  if (parts.size() > 1 && parts.back() == "H") {
    label.head_marker = true;
    parts.pop_back();
  }
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (!label.function_tag.empty()) label.function_tag += '-';
    label.function_tag += parts[i];
  }
  return label;
}

std::string NodeLabel::raw() const {
  std::string out = phrase_type;
  if (!function_tag.empty()) {
    out += '-';
    out += function_tag;
  }
  if (head_marker) out += "-H";
  return out;
}

const TreebankConfig& TreebankConfig::defaults() {
  static const TreebankConfig cfg = [] {
    TreebankConfig c;
    // Best-effort syntactic-category inventory for the Vietnamese treebank;
    // the published tag list is not exhaustive, so this is overridable.
    c.phrasal_tags = {"S",    "SQ",   "SBAR", "NP",   "VP",   "AP",  "PP",
                      "RP",   "QP",   "MDP",  "UCP",  "XP",   "YP",  "WHNP",
                      "WHAP", "WHRP", "WHPP", "WHVP", "WHXP"};
    c.ignore_tags = {".", ",", "...", "!", "?", ":", ";", "\"", "'",
                     "-", "LBKT", "RBKT", "-NONE-", "*E*", "*T*"};
    c.passive_markers = {"bị", "được"};
    return c;
  }();
  return cfg;
}

TreebankConfig TreebankConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tag config: " + path);
  TreebankConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string key;
    if (!(ss >> key) || key[0] == '#') continue;
    std::set<std::string>* target = nullptr;
    if (key == "phrasal") target = &cfg.phrasal_tags;
    else if (key == "ignore") target = &cfg.ignore_tags;
    else if (key == "passive") target = &cfg.passive_markers;
    else
      throw std::runtime_error("tag config line " + std::to_string(lineno) +
                               ": unknown section '" + key + "'");
    std::string tag;
    while (ss >> tag) target->insert(tag);
  }
  return cfg;
}

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  std::vector<TreeNode> nodes;

  void skip_space() {
    while (pos < text.size() && is_space(text[pos])) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at byte " + std::to_string(pos), pos);
  }

  std::string_view atom() {
    std::size_t begin = pos;
    while (pos < text.size() && !is_space(text[pos]) && text[pos] != '(' &&
           text[pos] != ')')
      ++pos;
    return text.substr(begin, pos - begin);
  }

  // Parses "(label child+)" where children are subtrees or a single token.
  int parse_node() {
    skip_space();
    if (pos >= text.size() || text[pos] != '(') fail("expected '('");
    ++pos;
    skip_space();
    std::string_view label = atom();
    if (label.empty()) fail("empty node label");
    int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes[id].label = NodeLabel::parse(label);

    std::vector<int> children;
    std::optional<std::string> token;
    while (true) {
      skip_space();
      if (pos >= text.size()) fail("unbalanced parentheses: unexpected end of input");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == '(') {
        if (token) fail("leaf with children");
        int child = parse_node();
        nodes[child].parent = id;
        children.push_back(child);
      } else {
        std::string_view tok = atom();
        if (!children.empty()) fail("leaf with children");
        if (token) fail("leaf with multiple tokens");
        token = std::string(tok);
      }
    }
    if (children.empty() && !token) fail("empty node");
    nodes[id].children = std::move(children);
    nodes[id].token = std::move(token);
    return id;
  }
};

}  // namespace

BracketedTree BracketedTree::parse(std::string_view text) {
  Parser p{text, 0, {}};
  p.skip_space();
  if (p.pos >= text.size()) throw ParseError("empty input", 0);
  int root = p.parse_node();
  p.skip_space();
  if (p.pos < text.size()) p.fail("trailing content after tree");
  if (root != 0) throw ParseError("internal: root is not node 0", 0);

  BracketedTree tree;
  tree.nodes_ = std::move(p.nodes);
  // Assign leaf spans in a left-to-right depth-first walk.
  std::vector<int> stack{0};
  std::vector<int> order;
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    order.push_back(id);
    const auto& ch = tree.nodes_[id].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  for (int id : order) {
    TreeNode& n = tree.nodes_[id];
    if (n.is_leaf()) {
      n.span_begin = static_cast<int>(tree.leaves_.size());
      n.span_end = n.span_begin + 1;
      tree.leaves_.push_back(id);
    }
  }
  // Internal spans are the union of child spans (children are contiguous).
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    TreeNode& n = tree.nodes_[*it];
    if (!n.is_leaf()) {
      n.span_begin = tree.nodes_[n.children.front()].span_begin;
      n.span_end = tree.nodes_[n.children.back()].span_end;
    }
  }
  return tree;
}

namespace {

void render_node(const BracketedTree& tree, int id, std::string& out) {
  const TreeNode& n = tree.node(id);
  out += '(';
  out += n.label.raw();
  if (n.is_leaf()) {
    out += ' ';
    out += *n.token;
  } else {
    for (int child : n.children) {
      out += ' ';
      render_node(tree, child, out);
    }
  }
  out += ')';
}

}  // namespace

std::string BracketedTree::render() const {
  std::string out;
  render_node(*this, 0, out);
  return out;
}

int BracketedTree::leaf_node(int leaf_index) const {
  if (leaf_index < 0 || leaf_index >= leaf_count())
    throw std::out_of_range("leaf index " + std::to_string(leaf_index) +
                            " out of range (leaf count " +
                            std::to_string(leaf_count()) + ")");
  return leaves_[leaf_index];
}

std::vector<std::pair<std::string, std::string>> BracketedTree::leaf_tokens()
    const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(leaves_.size());
  for (int id : leaves_)
    out.emplace_back(*nodes_[id].token, nodes_[id].label.phrase_type);
  return out;
}

std::vector<int> BracketedTree::path_to_root(int id) const {
  std::vector<int> out;
  for (int p = node(id).parent; p != -1; p = nodes_[p].parent)
    out.push_back(p);
  return out;
}

std::vector<int> BracketedTree::siblings(int id) const {
  int parent = node(id).parent;
  if (parent == -1) return {};
  std::vector<int> out;
  for (int child : nodes_[parent].children)
    if (child != id) out.push_back(child);
  return out;
}

bool BracketedTree::is_phrase(int id, const TreebankConfig& cfg) const {
  const TreeNode& n = node(id);
  return !n.is_leaf() && cfg.phrasal_tags.count(n.label.phrase_type) > 0;
}

std::string BracketedTree::covered_text_span(int begin, int end,
                                             bool human) const {
  std::string out;
  for (int i = begin; i < end; ++i) {
    if (!out.empty()) out += ' ';
    out += *nodes_[leaves_[i]].token;
  }
  if (human)
    for (char& c : out)
      if (c == '_') c = ' ';
  return out;
}

std::string BracketedTree::covered_text(int id, bool human) const {
  const TreeNode& n = node(id);
  return covered_text_span(n.span_begin, n.span_end, human);
}

int predicate_node(const BracketedTree& tree, int leaf_index) {
  return tree.leaf_node(leaf_index);
}

std::vector<int> find_predicates(const BracketedTree& tree,
                                 const std::vector<int>& leaf_indices) {
  std::vector<int> out;
  out.reserve(leaf_indices.size());
  for (int idx : leaf_indices) out.push_back(predicate_node(tree, idx));
  return out;
}

}  // namespace srl
