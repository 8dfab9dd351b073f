#ifndef SRL_EXTRACT_HPP
#define SRL_EXTRACT_HPP

#include <string>
#include <vector>

#include "srl/tree.hpp"

namespace srl {

enum class ExtractorKind { Algorithm1, NodeMapping, Pruning, AllNodes };

const char* extractor_name(ExtractorKind kind);
ExtractorKind extractor_from_name(const std::string& name);

// A constituent span proposed as an argument for one predicate. Spans never
// include the predicate leaf.
struct Candidate {
  int span_begin = 0;  // [span_begin, span_end) token indices
  int span_end = 0;
  int node = -1;              // tree node the span came from
  int predicate_leaf = -1;    // token index of the predicate
  ExtractorKind extractor = ExtractorKind::Algorithm1;
};

// The sister-walk extractor: starting from the predicate pre-terminal, each
// sister along the path to the root is collected, except that a sister whose
// children all share the first child's phrase type (first child phrasal,
// function tags pairwise distinct from the first child's) contributes its
// children instead of itself.
std::vector<Candidate> extract_algorithm1(const BracketedTree& tree,
                                          int predicate,
                                          const TreebankConfig& cfg);

// Classic pruning: collect sisters along the predicate-to-root path; a PP
// sister additionally contributes its children. Levels where the current
// node sits in a coordination (has a CC-tagged sibling) are skipped.
std::vector<Candidate> extract_pruning(const BracketedTree& tree,
                                       int predicate,
                                       const TreebankConfig& cfg);

// 1-1 node mapping: every tree node whose span excludes the predicate leaf,
// deduplicated by span (the shallowest node per span wins).
std::vector<Candidate> extract_node_mapping(const BracketedTree& tree,
                                            int predicate,
                                            const TreebankConfig& cfg);

// Exhaustive search: every node except the predicate pre-terminal and nodes
// overlapping it; no deduplication.
std::vector<Candidate> extract_all_nodes(const BracketedTree& tree,
                                         int predicate,
                                         const TreebankConfig& cfg);

std::vector<Candidate> extract(ExtractorKind kind, const BracketedTree& tree,
                               int predicate, const TreebankConfig& cfg);

}  // namespace srl

#endif  // SRL_EXTRACT_HPP
