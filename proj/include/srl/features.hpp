#ifndef SRL_FEATURES_HPP
#define SRL_FEATURES_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "srl/extract.hpp"
#include "srl/tree.hpp"

namespace srl {

enum class Template {
  PhraseType,
  Path,
  Position,
  Voice,
  HeadWord,
  Subcategorization,
  PredicateWord,
  FunctionTag,
  Distance,
  PredicateType,
};

constexpr int kTemplateCount = 10;
const char* template_name(Template t);
Template template_from_name(const std::string& name);

// Upward/downward steps in the parse tree path feature.
inline constexpr const char* kUpArrow = "↑";
inline constexpr const char* kDownArrow = "↓";

// Single feature templates. candidate/predicate are tree node ids; the
// predicate is always a pre-terminal.
std::string feature_phrase_type(const BracketedTree& tree, int candidate);
std::string feature_path(const BracketedTree& tree, int candidate,
                         int predicate);
int feature_position(const BracketedTree& tree, int candidate, int predicate);
int feature_voice(const BracketedTree& tree, int predicate,
                  const TreebankConfig& cfg);
std::string feature_head_word(const BracketedTree& tree, int candidate);
std::string feature_subcategorization(const BracketedTree& tree,
                                      int predicate);
// Returns the tag or "NONE".
std::string feature_function_tag(const BracketedTree& tree, int candidate);
int feature_distance(const BracketedTree& tree, int candidate, int predicate);
std::string feature_predicate_type(const BracketedTree& tree, int predicate);

// One dense block per substituted lexical template.
struct DenseBlock {
  Template source;
  std::vector<double> values;
};

// Named template values for one candidate, restricted to a feature set.
struct FeatureBundle {
  std::map<Template, std::string> values;
  std::vector<DenseBlock> dense;
};

// A named selection of templates. The stock sets are the basic set (six
// templates plus the predicate word) and its documented extensions.
struct FeatureSetSpec {
  std::string name;
  std::set<Template> included;

  // Accepts the stock names ("Φ0".."Φ13", ASCII aliases "phi0".."phi13",
  // "best" = Φ11) or "custom:<template,template,...>".
  static FeatureSetSpec by_name(const std::string& name);
  static FeatureSetSpec basic();  // Φ0
  // Plain config file: template names separated by whitespace or newlines,
  // '#' starts a comment.
  static FeatureSetSpec load(const std::string& path);
};

// by_name when the string is a stock or custom: name, else a config file.
FeatureSetSpec resolve_feature_set(const std::string& name_or_path);

FeatureBundle assemble(const BracketedTree& tree, const Candidate& candidate,
                       int predicate, const FeatureSetSpec& spec,
                       const TreebankConfig& cfg);

// Indexed encoding: categorical one-hot ids over a fitted dictionary plus
// the concatenation of any dense blocks.
struct FeatureVector {
  std::vector<int> indices;
  std::vector<double> dense;
};

class Vocabulary {
 public:
  static Vocabulary fit(const std::vector<FeatureBundle>& bundles);
  // -1 when the (template, value) pair was not seen at fit time.
  int lookup(Template t, const std::string& value) const;
  int size() const { return static_cast<int>(entries_.size()); }

  struct Entry {
    Template t;
    std::string value;
  };
  const std::vector<Entry>& entries() const { return entries_; }
  static Vocabulary from_entries(std::vector<Entry> entries);

 private:
  std::map<std::pair<int, std::string>, int> index_;
  std::vector<Entry> entries_;
};

// Unseen pairs are dropped; dense blocks are copied through in order.
FeatureVector vectorize(const FeatureBundle& bundle, const Vocabulary& vocab);

}  // namespace srl

#endif  // SRL_FEATURES_HPP
