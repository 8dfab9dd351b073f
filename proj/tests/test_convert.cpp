#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "srl/convert.hpp"
#include "testutil.hpp"

using namespace srl;
namespace tu = srl::testutil;

namespace {

const TreebankConfig& cfg() { return TreebankConfig::defaults(); }

RuleSet rules_from(const std::string& text) {
  std::istringstream in(text);
  return parse_rules(in, RoleSet::defaults(), "<test>");
}

std::string role_at(const std::vector<RoleSpan>& spans, int begin, int end) {
  for (const RoleSpan& s : spans)
    if (s.begin == begin && s.end == end) return s.role;
  return "";
}

}  // namespace

TEST_CASE("default rule file carries the ten documented rules") {
  RuleSet rules = default_rules();
  CHECK(rules.rules.size() == 10);
  CHECK(rules.wordlists.count("negation") == 1);
  CHECK(rules.wordlists.count("causal") == 1);
  CHECK(rules.wordlists.at("negation").count("không") == 1);
}

TEST_CASE("shipped rules.conf matches the built-in rule text") {
  const char* dir = std::getenv("SRL_DATA_DIR");
  if (!dir) return;
  std::ifstream in(std::string(dir) + "/rules.conf");
  REQUIRE(in);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == default_rules_text());
  RuleSet rules = load_rules(std::string(dir) + "/rules.conf");
  CHECK(rules.rules.size() == 10);
}

TEST_CASE("the conversion example sentence") {
  BracketedTree tree = BracketedTree::parse(tu::kConversionTree);
  int pred = predicate_node(tree, tu::kConversionPredicateLeaf);
  std::vector<RoleSpan> out = convert_tree(tree, pred, default_rules(), cfg());

  // "Kia" is SUB and precedes the predicate; the following NP is Arg1; the
  // predicate itself is REL.
  CHECK(role_at(out, 0, 1) == "Arg0");
  CHECK(role_at(out, 1, 2) == kRelLabel);
  CHECK(role_at(out, 2, 7) == "Arg1");
  CHECK(out.size() == 3);
}

TEST_CASE("negation words trigger ArgM-NEG") {
  BracketedTree tree = BracketedTree::parse(
      "(S (NP-SUB (N-H Nam)) (VP (R không) (V-H học) (NP-DOB (N-H bài))))");
  std::vector<RoleSpan> out =
      convert_tree(tree, predicate_node(tree, 2), default_rules(), cfg());
  CHECK(role_at(out, 1, 2) == "ArgM-NEG");
  CHECK(role_at(out, 0, 1) == "Arg0");
  CHECK(role_at(out, 3, 4) == "Arg1");
}

TEST_CASE("function-tag evidence outranks positional evidence") {
  // NP-IOB follows the predicate; the positional NP rule would say Arg1 but
  // the IOB tag must win.
  BracketedTree tree = BracketedTree::parse(
      "(S (NP-SUB (N-H Nam)) (VP (V-H chữa) (NP-DOB (N-H xe)) "
      "(NP-IOB (N-H Lan))))");
  std::vector<RoleSpan> out =
      convert_tree(tree, predicate_node(tree, 1), default_rules(), cfg());
  CHECK(role_at(out, 2, 3) == "Arg1");
  CHECK(role_at(out, 3, 4) == "Arg2");
}

TEST_CASE("unmatched candidates stay unlabelled") {
  BracketedTree tree =
      BracketedTree::parse("(S (AP (A-H nhanh)) (VP (V-H chạy)))");
  std::vector<RoleSpan> out =
      convert_tree(tree, predicate_node(tree, 1), default_rules(), cfg());
  REQUIRE(out.size() == 1);
  CHECK(out[0].role == kRelLabel);
}

TEST_CASE("rule config parsing") {
  CHECK(rules_from("").rules.empty());

  RuleSet one = rules_from("rule 5 Arg0 TAG=SUB\n");
  REQUIRE(one.rules.size() == 1);
  CHECK(one.rules[0].priority == 5);
  CHECK(one.rules[0].role == "Arg0");
  REQUIRE(one.rules[0].alternatives.size() == 1);

  RuleSet alts = rules_from("rule 1 Arg1 TAG=DOB | TYPE=NP, POS=after\n");
  REQUIRE(alts.rules[0].alternatives.size() == 2);
  CHECK(alts.rules[0].alternatives[1].size() == 2);

  CHECK_THROWS_AS(rules_from("rule 1 Arg0 TAG=SUB\nrule 1 Arg1 TAG=DOB\n"),
                  std::runtime_error);  // duplicate priority
  CHECK_THROWS_AS(rules_from("rule 1 NotARole TAG=SUB\n"), std::runtime_error);
  CHECK_THROWS_AS(rules_from("rule 1 Arg0 WORDLIST=missing\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(rules_from("rule 1 Arg0 POS=sideways\n"), std::runtime_error);
  CHECK_THROWS_AS(rules_from("rule 1 Arg0\n"), std::runtime_error);
  CHECK_THROWS_AS(rules_from("nonsense 1 2 3\n"), std::runtime_error);
}

TEST_CASE("rules applied in priority order within a layer") {
  // Two tag rules both match; the lower priority number wins.
  RuleSet rules = rules_from(
      "rule 10 ArgM-LOC TAG=LOC\n"
      "rule 20 ArgM-DIR TAG=LOC\n");
  BracketedTree tree = BracketedTree::parse(
      "(S (VP (V-H đi) (PP-LOC (E-H ở) (NP (N-H nhà)))))");
  std::vector<RoleSpan> out =
      convert_tree(tree, predicate_node(tree, 0), rules, cfg());
  CHECK(role_at(out, 1, 3) == "ArgM-LOC");
}

TEST_CASE("conversion is pure") {
  BracketedTree tree = BracketedTree::parse(tu::kConversionTree);
  int pred = predicate_node(tree, 1);
  RuleSet rules = default_rules();
  auto a = convert_tree(tree, pred, rules, cfg());
  auto b = convert_tree(tree, pred, rules, cfg());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].begin == b[i].begin);
    CHECK(a[i].end == b[i].end);
    CHECK(a[i].role == b[i].role);
  }
}
