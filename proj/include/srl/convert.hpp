#ifndef SRL_CONVERT_HPP
#define SRL_CONVERT_HPP

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "srl/learn.hpp"
#include "srl/tree.hpp"

namespace srl {

inline constexpr const char* kRelLabel = "REL";

// One conjunct of a rule trigger.
struct RuleCondition {
  enum class Kind { Tag, Type, Pos, WordList };
  Kind kind;
  // Tag/Type: acceptable label values ('/'-separated in the config);
  // Pos: "before" or "after"; WordList: the list name.
  std::vector<std::string> values;
};

// priority ROLE trigger — trigger is a '|'-separated list of alternatives,
// each a comma-separated conjunction of conditions, evaluated left to right.
struct ConversionRule {
  int priority = 0;
  std::string role;
  std::vector<std::vector<RuleCondition>> alternatives;
};

struct RuleSet {
  std::vector<ConversionRule> rules;  // ascending priority
  std::map<std::string, std::set<std::string>> wordlists;
};

// Rule config: "wordlist NAME w1 w2 ..." and "rule PRIORITY ROLE TRIGGER"
// lines; '#' starts a comment. Errors: duplicate priority, unknown role
// name, reference to an undefined word list.
RuleSet load_rules(const std::string& path,
                   const RoleSet& roles = RoleSet::defaults());
RuleSet parse_rules(std::istream& in, const RoleSet& roles,
                    const std::string& source_name);

// The built-in rule table; data/rules.conf carries the same content.
const std::string& default_rules_text();
RuleSet default_rules();

struct RoleSpan {
  int begin = 0;
  int end = 0;
  std::string role;
};

// Matches the predicate's extracted constituents against the rules in
// priority order; the first matching rule assigns the role, unmatched
// candidates stay unlabelled. The predicate itself is labelled REL.
// Output is ordered by span.
std::vector<RoleSpan> convert_tree(const BracketedTree& tree, int predicate,
                                   const RuleSet& rules,
                                   const TreebankConfig& cfg);

}  // namespace srl

#endif  // SRL_CONVERT_HPP
