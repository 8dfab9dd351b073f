#ifndef SRL_TREE_HPP
#define SRL_TREE_HPP

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace srl {

// Thrown by BracketedTree::parse with the byte offset of the offending input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// A raw treebank label such as "NP-SUB" or "V-H", split into its parts.
// raw() reproduces the original label byte-for-byte.
struct NodeLabel {
  std::string phrase_type;
  std::string function_tag;  // empty = none
  bool head_marker = false;

  static NodeLabel parse(std::string_view raw);
  std::string raw() const;

  bool operator==(const NodeLabel&) const = default;
};

struct TreeNode {
  NodeLabel label;
  int parent = -1;                   // -1 for the root
  std::vector<int> children;         // arena indices, surface order
  std::optional<std::string> token;  // present iff leaf (pre-terminal)
  int span_begin = 0;                // [span_begin, span_end) over leaves
  int span_end = 0;

  bool is_leaf() const { return token.has_value(); }
};

// Which labels count as phrasal (vs pre-terminal POS), which leaves are
// ignored during candidate extraction, and the passive-voice marker lexicon.
// All three are config data; the defaults follow the Vietnamese treebank
// conventions but the full tag inventory is user-overridable.
struct TreebankConfig {
  std::set<std::string> phrasal_tags;
  std::set<std::string> ignore_tags;    // punctuation and empty categories
  std::set<std::string> passive_markers;

  static const TreebankConfig& defaults();
  static TreebankConfig load(const std::string& path);
};

// Immutable constituency tree stored as an arena of nodes; node id 0 is the
// root. Safe to share read-only across threads once constructed.
class BracketedTree {
 public:
  static BracketedTree parse(std::string_view text);

  std::string render() const;  // canonical one-line bracketed form

  int root() const { return 0; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const TreeNode& node(int id) const { return nodes_.at(id); }

  int leaf_count() const { return static_cast<int>(leaves_.size()); }
  // Node id of the i-th leaf; throws std::out_of_range on bad index.
  int leaf_node(int leaf_index) const;
  const std::vector<int>& leaves() const { return leaves_; }
  // (token, POS label) for every leaf, left to right.
  std::vector<std::pair<std::string, std::string>> leaf_tokens() const;

  // Ancestors from the node's parent up to and including the root.
  std::vector<int> path_to_root(int id) const;
  // Sisters of the node in surface order, excluding the node itself.
  std::vector<int> siblings(int id) const;
  bool is_phrase(int id, const TreebankConfig& cfg) const;

  // Leaf tokens covered by the node, space-joined. When human is true,
  // underscores inside tokens become spaces (report form).
  std::string covered_text(int id, bool human = false) const;
  std::string covered_text_span(int begin, int end, bool human = false) const;

 private:
  std::vector<TreeNode> nodes_;
  std::vector<int> leaves_;
};

// Pre-terminal node for an annotated predicate leaf index; throws
// std::out_of_range when the index is not a valid leaf position.
int predicate_node(const BracketedTree& tree, int leaf_index);
std::vector<int> find_predicates(const BracketedTree& tree,
                                 const std::vector<int>& leaf_indices);

}  // namespace srl

#endif  // SRL_TREE_HPP
