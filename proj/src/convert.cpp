#include "srl/convert.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "srl/extract.hpp"
#include "srl/features.hpp"

namespace srl {

const std::string& default_rules_text() {
  static const std::string text =
      "# Coarse-grained role conversion rules.\n"
      "# wordlist NAME word...\n"
      "# rule PRIORITY ROLE TRIGGER  with TRIGGER = alt ('|' alt)*,\n"
      "# alt = cond (',' cond)*, cond = TAG=X | TYPE=X[/Y...] |\n"
      "# POS=before|after | WORDLIST=name\n"
      "wordlist negation không chẳng chớ chả chưa\n"
      "wordlist causal do bởi_vì vì bởi tại\n"
      "rule 10 Arg0 TAG=SUB | TYPE=NP, POS=before\n"
      "rule 20 Arg1 TAG=DOB | TYPE=NP, POS=after\n"
      "rule 30 Arg2 TAG=IOB\n"
      "rule 40 ArgM-NEG WORDLIST=negation\n"
      "rule 50 ArgM-LOC TAG=LOC\n"
      "rule 60 ArgM-MNR TAG=MNR\n"
      "rule 70 ArgM-CAU TAG=PRP | WORDLIST=causal\n"
      "rule 80 ArgM-DIR TAG=DIR\n"
      "rule 90 ArgM-DIS TYPE=CC/C\n"
      "rule 100 ArgM-EXT TAG=EXT\n";
  return text;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

RuleCondition parse_condition(const std::string& text,
                              const std::string& where) {
  std::size_t eq = text.find('=');
  if (eq == std::string::npos)
    throw std::runtime_error(where + ": condition '" + text +
                             "' is not KEY=VALUE");
  std::string key = trim(text.substr(0, eq));
  std::string value = trim(text.substr(eq + 1));
  if (value.empty())
    throw std::runtime_error(where + ": empty value in '" + text + "'");
  RuleCondition cond;
  if (key == "TAG") {
    cond.kind = RuleCondition::Kind::Tag;
    cond.values = split(value, '/');
  } else if (key == "TYPE") {
    cond.kind = RuleCondition::Kind::Type;
    cond.values = split(value, '/');
  } else if (key == "POS") {
    cond.kind = RuleCondition::Kind::Pos;
    if (value != "before" && value != "after")
      throw std::runtime_error(where + ": POS must be before or after");
    cond.values = {value};
  } else if (key == "WORDLIST") {
    cond.kind = RuleCondition::Kind::WordList;
    cond.values = {value};
  } else {
    throw std::runtime_error(where + ": unknown condition key '" + key + "'");
  }
  return cond;
}

}  // namespace

RuleSet parse_rules(std::istream& in, const RoleSet& roles,
                    const std::string& source_name) {
  RuleSet out;
  std::set<int> priorities;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string where = source_name + ":" + std::to_string(lineno);
    std::string content = trim(line);
    if (content.empty() || content[0] == '#') continue;
    std::istringstream ss(content);
    std::string kind;
    ss >> kind;
    if (kind == "wordlist") {
      std::string name;
      if (!(ss >> name))
        throw std::runtime_error(where + ": wordlist without a name");
      std::string w;
      auto& list = out.wordlists[name];
      while (ss >> w) list.insert(w);
    } else if (kind == "rule") {
      ConversionRule rule;
      std::string role;
      if (!(ss >> rule.priority >> role))
        throw std::runtime_error(where + ": rule needs PRIORITY and ROLE");
      if (!priorities.insert(rule.priority).second)
        throw std::runtime_error(where + ": duplicate priority " +
                                 std::to_string(rule.priority));
      if (roles.index_of(role) < 0 || role == kNullLabel)
        throw std::runtime_error(where + ": unknown role name '" + role + "'");
      rule.role = role;
      std::string trigger;
      std::getline(ss, trigger);
      trigger = trim(trigger);
      if (trigger.empty())
        throw std::runtime_error(where + ": rule without a trigger");
      for (const std::string& alt_text : split(trigger, '|')) {
        std::vector<RuleCondition> alt;
        for (const std::string& cond_text : split(alt_text, ',')) {
          std::string t = trim(cond_text);
          if (t.empty())
            throw std::runtime_error(where + ": empty condition");
          alt.push_back(parse_condition(t, where));
        }
        rule.alternatives.push_back(std::move(alt));
      }
      out.rules.push_back(std::move(rule));
    } else {
      throw std::runtime_error(where + ": unknown directive '" + kind + "'");
    }
  }
  for (const ConversionRule& rule : out.rules)
    for (const auto& alt : rule.alternatives)
      for (const RuleCondition& cond : alt)
        if (cond.kind == RuleCondition::Kind::WordList &&
            out.wordlists.find(cond.values[0]) == out.wordlists.end())
          throw std::runtime_error(source_name + ": rule " +
                                   std::to_string(rule.priority) +
                                   " references undefined word list '" +
                                   cond.values[0] + "'");
  std::sort(out.rules.begin(), out.rules.end(),
            [](const ConversionRule& a, const ConversionRule& b) {
              return a.priority < b.priority;
            });
  return out;
}

RuleSet load_rules(const std::string& path, const RoleSet& roles) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open rule file: " + path);
  return parse_rules(in, roles, path);
}

RuleSet default_rules() {
  std::istringstream in(default_rules_text());
  return parse_rules(in, RoleSet::defaults(), "<built-in rules>");
}

namespace {

// The table's "|" alternatives carry no stated precedence; the most
// specific evidence wins: function-tag triggers are tried across all rules
// first, then positional/type triggers, then word-list triggers.
int alternative_layer(const std::vector<RuleCondition>& alt) {
  bool has_type_or_pos = false;
  for (const RuleCondition& cond : alt) {
    if (cond.kind == RuleCondition::Kind::Tag) return 0;
    if (cond.kind == RuleCondition::Kind::Type ||
        cond.kind == RuleCondition::Kind::Pos)
      has_type_or_pos = true;
  }
  return has_type_or_pos ? 1 : 2;
}

bool condition_matches(const RuleCondition& cond, const BracketedTree& tree,
                       const Candidate& cand, int predicate,
                       const RuleSet& rules) {
  const TreeNode& node = tree.node(cand.node);
  switch (cond.kind) {
    case RuleCondition::Kind::Tag:
      return std::find(cond.values.begin(), cond.values.end(),
                       node.label.function_tag) != cond.values.end();
    case RuleCondition::Kind::Type:
      return std::find(cond.values.begin(), cond.values.end(),
                       node.label.phrase_type) != cond.values.end();
    case RuleCondition::Kind::Pos: {
      bool before = feature_position(tree, cand.node, predicate) == 0;
      return cond.values[0] == "before" ? before : !before;
    }
    case RuleCondition::Kind::WordList: {
      const auto& list = rules.wordlists.at(cond.values[0]);
      return list.count(feature_head_word(tree, cand.node)) > 0;
    }
  }
  return false;
}

}  // namespace

std::vector<RoleSpan> convert_tree(const BracketedTree& tree, int predicate,
                                   const RuleSet& rules,
                                   const TreebankConfig& cfg) {
  std::vector<RoleSpan> out;
  for (const Candidate& cand : extract_algorithm1(tree, predicate, cfg)) {
    bool assigned = false;
    for (int layer = 0; layer < 3 && !assigned; ++layer) {
      for (const ConversionRule& rule : rules.rules) {
        bool matched = false;
        for (const auto& alt : rule.alternatives) {
          if (alternative_layer(alt) != layer) continue;
          bool all = true;
          for (const RuleCondition& cond : alt)
            if (!condition_matches(cond, tree, cand, predicate, rules)) {
              all = false;
              break;
            }
          if (all) {
            matched = true;
            break;
          }
        }
        if (matched) {
          out.push_back(RoleSpan{cand.span_begin, cand.span_end, rule.role});
          assigned = true;
          break;
        }
      }
    }
  }
  int pred_leaf = tree.node(predicate).span_begin;
  out.push_back(RoleSpan{pred_leaf, pred_leaf + 1, kRelLabel});
  std::sort(out.begin(), out.end(), [](const RoleSpan& a, const RoleSpan& b) {
    if (a.begin != b.begin) return a.begin < b.begin;
    if (a.end != b.end) return a.end < b.end;
    return a.role < b.role;
  });
  return out;
}

}  // namespace srl
