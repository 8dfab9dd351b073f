#include "srl/synth.hpp"

#include <map>

#include "srl/extract.hpp"
#include "srl/features.hpp"
#include "srl/rng.hpp"
#include "srl/tree.hpp"

namespace srl {

namespace {

const std::vector<std::string> kNames = {"Nam",  "Huy", "Lan",
                                         "Minh", "bà",  "ông"};
const std::vector<std::string> kNouns = {"nhà", "xe",  "sách",   "trường",
                                         "bài", "cầu", "vườn",   "chợ",
                                         "phố", "việc_làm", "con_trai"};
const std::vector<std::string> kVerbs = {"giúp", "học", "đá",  "nói", "chữa",
                                         "xây",  "đọc", "mua", "bán", "phá"};
const std::vector<std::string> kAdverbs = {"đã", "sẽ", "đang", "cũng", "vẫn"};
const std::vector<std::string> kNegation = {"không", "chẳng", "chớ"};
const std::vector<std::string> kPassive = {"bị", "được"};
const std::vector<std::string> kLocPreps = {"ở", "tại", "trong"};
const std::vector<std::string> kDirPreps = {"đến", "về", "ra"};
const std::vector<std::string> kCausal = {"vì", "do"};
const std::vector<std::string> kConjunctions = {"nhưng", "và", "rồi"};
const std::vector<std::string> kClassifiers = {"con", "cái", "ngôi"};

std::string np(Rng& rng, const std::string& tag) {
  std::string suffix = tag.empty() ? "" : "-" + tag;
  switch (rng.below(3)) {
    case 0:
      return "(NP" + suffix + " (N-H " + rng.pick(kNames) + "))";
    case 1:
      return "(NP" + suffix + " (N-H " + rng.pick(kNouns) + "))";
    default:
      return "(NP" + suffix + " (Nc-H " + rng.pick(kClassifiers) + ") (N " +
             rng.pick(kNouns) + "))";
  }
}

std::string pp(Rng& rng, const std::string& tag,
               const std::vector<std::string>& preps) {
  return "(PP-" + tag + " (E-H " + rng.pick(preps) + ") " + np(rng, "") + ")";
}

// Verb phrase with the predicate head; the caller locates the predicate
// leaf by counting tokens in the rendered text.
std::string vp(Rng& rng, bool allow_clause, int depth);

std::string clause(Rng& rng, int depth) {
  std::string s = "(S ";
  if (depth == 0 && rng.chance(0.15))
    s += "(CC " + rng.pick(kConjunctions) + ") ";
  if (depth == 0 && rng.chance(0.15))
    s += pp(rng, "PRP", kCausal) + " ";
  s += np(rng, "SUB") + " ";
  s += vp(rng, depth == 0, depth);
  s += ")";
  return s;
}

std::string vp(Rng& rng, bool allow_clause, int depth) {
  std::string s = "(VP ";
  if (rng.chance(0.25)) s += "(R " + rng.pick(kAdverbs) + ") ";
  if (rng.chance(0.15)) s += "(R " + rng.pick(kNegation) + ") ";
  if (rng.chance(0.12)) s += "(V " + rng.pick(kPassive) + ") ";
  s += "(V-H " + rng.pick(kVerbs) + ")";
  if (allow_clause && rng.chance(0.18)) {
    s += " (SBAR " + clause(rng, depth + 1) + ")";
  } else {
    if (rng.chance(0.7)) s += " " + np(rng, "DOB");
    if (rng.chance(0.2)) s += " " + np(rng, "IOB");
  }
  double roll = rng.uniform();
  if (roll < 0.25)
    s += " " + pp(rng, "LOC", kLocPreps);
  else if (roll < 0.35)
    s += " " + pp(rng, "DIR", kDirPreps);
  else if (roll < 0.42)
    s += " (PP-MNR (E-H bằng) " + np(rng, "") + ")";
  else if (roll < 0.47)
    s += " (AP-EXT (A-H nhiều))";
  s += ")";
  return s;
}

// With nested clauses the rules can assign one core role twice (both the
// inner and the outer subject match the Arg0 rule for the embedded
// predicate). Keep only the candidate closest to the predicate in the tree,
// so the gold stays consistent with the core-uniqueness constraint.
std::vector<RoleSpan> dedup_core(const BracketedTree& tree, int pred_node,
                                 std::vector<RoleSpan> args,
                                 const RoleSet& roles,
                                 const TreebankConfig& tb) {
  std::map<std::pair<int, int>, int> node_by_span;
  for (const Candidate& c : extract_algorithm1(tree, pred_node, tb))
    node_by_span[{c.span_begin, c.span_end}] = c.node;
  auto distance_of = [&](const RoleSpan& arg) {
    auto it = node_by_span.find({arg.begin, arg.end});
    return it == node_by_span.end()
               ? 0
               : feature_distance(tree, it->second, pred_node);
  };
  std::map<std::string, std::size_t> best;
  std::vector<bool> keep(args.size(), true);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!roles.is_core(args[i].role)) continue;
    auto [it, inserted] = best.emplace(args[i].role, i);
    if (inserted) continue;
    if (distance_of(args[i]) < distance_of(args[it->second])) {
      keep[it->second] = false;
      it->second = i;
    } else {
      keep[i] = false;
    }
  }
  std::vector<RoleSpan> out;
  for (std::size_t i = 0; i < args.size(); ++i)
    if (keep[i]) out.push_back(args[i]);
  return out;
}

}  // namespace

std::vector<GoldRecord> make_synthetic_corpus(int n_sentences,
                                              std::uint64_t seed) {
  Rng rng(seed);
  RuleSet rules = default_rules();
  const TreebankConfig& tb = TreebankConfig::defaults();
  std::vector<GoldRecord> out;
  out.reserve(n_sentences);
  for (int n = 0; n < n_sentences; ++n) {
    std::string text = clause(rng, 0);
    if (rng.chance(0.5))
      text = "(S " + text.substr(3, text.size() - 4) + " (. .))";
    BracketedTree tree = BracketedTree::parse(text);
    GoldRecord record;
    record.id = "synth-" + std::to_string(n);
    record.tree_text = tree.render();
    // Every V-H leaf is a predicate; roles come from the conversion rules.
    for (int leaf = 0; leaf < tree.leaf_count(); ++leaf) {
      const TreeNode& node = tree.node(tree.leaf_node(leaf));
      if (node.label.phrase_type != "V" || !node.label.head_marker) continue;
      GoldPredicate pred;
      pred.leaf = leaf;
      int pred_node = tree.leaf_node(leaf);
      pred.args = dedup_core(tree, pred_node,
                             convert_tree(tree, pred_node, rules, tb),
                             RoleSet::defaults(), tb);
      record.predicates.push_back(std::move(pred));
    }
    out.push_back(std::move(record));
  }
  return out;
}

}  // namespace srl
