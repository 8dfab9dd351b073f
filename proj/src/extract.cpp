#include "srl/extract.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace srl {

const char* extractor_name(ExtractorKind kind) {
  switch (kind) {
    case ExtractorKind::Algorithm1: return "algorithm1";
    case ExtractorKind::NodeMapping: return "node-mapping";
    case ExtractorKind::Pruning: return "pruning";
    case ExtractorKind::AllNodes: return "all-nodes";
  }
  return "?";
}

ExtractorKind extractor_from_name(const std::string& name) {
  if (name == "algorithm1") return ExtractorKind::Algorithm1;
  if (name == "node-mapping" || name == "node_mapping")
    return ExtractorKind::NodeMapping;
  if (name == "pruning") return ExtractorKind::Pruning;
  if (name == "all-nodes" || name == "all_nodes")
    return ExtractorKind::AllNodes;
  throw std::runtime_error("unknown extractor: " + name);
}

namespace {

void check_predicate(const BracketedTree& tree, int predicate) {
  if (predicate < 0 || predicate >= tree.size() ||
      !tree.node(predicate).is_leaf())
    throw std::invalid_argument("predicate node is not a pre-terminal of the tree");
}

bool ignored_leaf(const BracketedTree& tree, int id,
                  const TreebankConfig& cfg) {
  const TreeNode& n = tree.node(id);
  return n.is_leaf() && cfg.ignore_tags.count(n.label.phrase_type) > 0;
}

struct Collector {
  const BracketedTree& tree;
  const TreebankConfig& cfg;
  int predicate_leaf;
  ExtractorKind kind;
  std::vector<Candidate> out;

  void collect(int node) {
    if (ignored_leaf(tree, node, cfg)) return;
    const TreeNode& n = tree.node(node);
    out.push_back(Candidate{n.span_begin, n.span_end, node, predicate_leaf, kind});
  }
};

// Duplicate spans from one extractor are merged, keeping the shallower node.
std::vector<Candidate> dedup_by_span(const BracketedTree& tree,
                                     std::vector<Candidate> cands) {
  auto depth = [&tree](int id) {
    int d = 0;
    for (int p = tree.node(id).parent; p != -1; p = tree.node(p).parent) ++d;
    return d;
  };
  std::map<std::pair<int, int>, std::size_t> by_span;
  std::vector<Candidate> out;
  for (const Candidate& c : cands) {
    auto key = std::make_pair(c.span_begin, c.span_end);
    auto it = by_span.find(key);
    if (it == by_span.end()) {
      by_span.emplace(key, out.size());
      out.push_back(c);
    } else if (depth(c.node) < depth(out[it->second].node)) {
      out[it->second] = c;
    }
  }
  return out;
}

}  // namespace

std::vector<Candidate> extract_algorithm1(const BracketedTree& tree,
                                          int predicate,
                                          const TreebankConfig& cfg) {
  check_predicate(tree, predicate);
  Collector col{tree, cfg, tree.node(predicate).span_begin,
                ExtractorKind::Algorithm1, {}};
  int current = predicate;
  while (current != tree.root()) {
    for (int sister : tree.siblings(current)) {
      const TreeNode& s = tree.node(sister);
      bool split = false;
      if (s.children.size() > 1 && tree.is_phrase(s.children.front(), cfg)) {
        const NodeLabel& first = tree.node(s.children.front()).label;
        bool same_type = true;
        bool diff_tag = true;
        for (std::size_t i = 1; i < s.children.size(); ++i) {
          const NodeLabel& li = tree.node(s.children[i]).label;
          if (li.phrase_type != first.phrase_type) {
            same_type = false;
            break;
          }
          if (li.function_tag == first.function_tag) {
            diff_tag = false;
            break;
          }
        }
        if (same_type && diff_tag) {
          for (int child : s.children) col.collect(child);
          split = true;
        }
      }
      if (!split) col.collect(sister);
    }
    current = tree.node(current).parent;
  }
  return dedup_by_span(tree, std::move(col.out));
}

std::vector<Candidate> extract_pruning(const BracketedTree& tree,
                                       int predicate,
                                       const TreebankConfig& cfg) {
  check_predicate(tree, predicate);
  Collector col{tree, cfg, tree.node(predicate).span_begin,
                ExtractorKind::Pruning, {}};
  int current = predicate;
  while (current != tree.root()) {
    std::vector<int> sisters = tree.siblings(current);
    bool coordinated = std::any_of(sisters.begin(), sisters.end(), [&](int s) {
      return tree.node(s).label.phrase_type == "CC";
    });
    if (!coordinated) {
      for (int sister : sisters) {
        col.collect(sister);
        if (tree.node(sister).label.phrase_type == "PP")
          for (int child : tree.node(sister).children) col.collect(child);
      }
    }
    current = tree.node(current).parent;
  }
  return dedup_by_span(tree, std::move(col.out));
}

namespace {

// Shared enumeration for the node-mapping and all-nodes baselines: every
// node whose span excludes the predicate leaf, in document order.
std::vector<Candidate> enumerate_nodes(const BracketedTree& tree,
                                       int predicate,
                                       const TreebankConfig& cfg,
                                       ExtractorKind kind) {
  check_predicate(tree, predicate);
  int pred_leaf = tree.node(predicate).span_begin;
  Collector col{tree, cfg, pred_leaf, kind, {}};
  for (int id = 0; id < tree.size(); ++id) {
    const TreeNode& n = tree.node(id);
    if (n.span_begin <= pred_leaf && pred_leaf < n.span_end) continue;
    col.collect(id);
  }
  return col.out;
}

}  // namespace

std::vector<Candidate> extract_node_mapping(const BracketedTree& tree,
                                            int predicate,
                                            const TreebankConfig& cfg) {
  return dedup_by_span(
      tree, enumerate_nodes(tree, predicate, cfg, ExtractorKind::NodeMapping));
}

std::vector<Candidate> extract_all_nodes(const BracketedTree& tree,
                                         int predicate,
                                         const TreebankConfig& cfg) {
  return enumerate_nodes(tree, predicate, cfg, ExtractorKind::AllNodes);
}

std::vector<Candidate> extract(ExtractorKind kind, const BracketedTree& tree,
                               int predicate, const TreebankConfig& cfg) {
  switch (kind) {
    case ExtractorKind::Algorithm1:
      return extract_algorithm1(tree, predicate, cfg);
    case ExtractorKind::NodeMapping:
      return extract_node_mapping(tree, predicate, cfg);
    case ExtractorKind::Pruning:
      return extract_pruning(tree, predicate, cfg);
    case ExtractorKind::AllNodes:
      return extract_all_nodes(tree, predicate, cfg);
  }
  throw std::logic_error("unreachable");
}

}  // namespace srl
