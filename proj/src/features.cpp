#include "srl/features.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace srl {

const char* template_name(Template t) {
  switch (t) {
    case Template::PhraseType: return "phrase_type";
    case Template::Path: return "path";
    case Template::Position: return "position";
    case Template::Voice: return "voice";
    case Template::HeadWord: return "head_word";
    case Template::Subcategorization: return "subcategorization";
    case Template::PredicateWord: return "predicate_word";
    case Template::FunctionTag: return "function_tag";
    case Template::Distance: return "distance";
    case Template::PredicateType: return "predicate_type";
  }
  return "?";
}

Template template_from_name(const std::string& name) {
  for (int i = 0; i < kTemplateCount; ++i) {
    Template t = static_cast<Template>(i);
    if (name == template_name(t)) return t;
  }
  throw std::runtime_error("unknown feature template: " + name);
}

std::string feature_phrase_type(const BracketedTree& tree, int candidate) {
  return tree.node(candidate).label.phrase_type;
}

namespace {

// Node chain candidate -> ... -> LCA (inclusive), plus LCA -> predicate
// chain exclusive of the LCA, in downward order.
void path_chains(const BracketedTree& tree, int candidate, int predicate,
                 std::vector<int>& up, std::vector<int>& down) {
  up.clear();
  down.clear();
  if (candidate == predicate) {
    up.push_back(candidate);
    return;
  }
  std::vector<int> cand_chain{candidate};
  for (int p : tree.path_to_root(candidate)) cand_chain.push_back(p);
  std::vector<int> pred_chain{predicate};
  for (int p : tree.path_to_root(predicate)) pred_chain.push_back(p);
  // Match the chains from the root downward; the last common node is the LCA.
  auto ci = cand_chain.rbegin();
  auto pi = pred_chain.rbegin();
  int lca = -1;
  while (ci != cand_chain.rend() && pi != pred_chain.rend() && *ci == *pi) {
    lca = *ci;
    ++ci;
    ++pi;
  }
  for (int n : cand_chain) {
    up.push_back(n);
    if (n == lca) break;
  }
  std::vector<int> rest(pi, pred_chain.rend());  // below-LCA part, top-down
  down.assign(rest.begin(), rest.end());
}

}  // namespace

std::string feature_path(const BracketedTree& tree, int candidate,
                         int predicate) {
  std::vector<int> up, down;
  path_chains(tree, candidate, predicate, up, down);
  std::string out;
  for (std::size_t i = 0; i < up.size(); ++i) {
    if (i > 0) out += kUpArrow;
    out += tree.node(up[i]).label.phrase_type;
  }
  for (int n : down) {
    out += kDownArrow;
    out += tree.node(n).label.phrase_type;
  }
  return out;
}

int feature_position(const BracketedTree& tree, int candidate, int predicate) {
  return tree.node(candidate).span_end <= tree.node(predicate).span_begin ? 0
                                                                          : 1;
}

int feature_voice(const BracketedTree& tree, int predicate,
                  const TreebankConfig& cfg) {
  // Passive iff a marker token immediately precedes the predicate inside the
  // predicate's nearest VP ancestor.
  int vp = -1;
  for (int p : tree.path_to_root(predicate)) {
    if (tree.node(p).label.phrase_type == "VP") {
      vp = p;
      break;
    }
  }
  if (vp == -1) return 1;
  int pred_leaf = tree.node(predicate).span_begin;
  if (pred_leaf == 0) return 1;
  int prev = tree.leaf_node(pred_leaf - 1);
  if (cfg.passive_markers.count(*tree.node(prev).token) == 0) return 1;
  const TreeNode& scope = tree.node(vp);
  bool inside_vp = scope.span_begin <= pred_leaf - 1;
  return inside_vp ? 0 : 1;
}

std::string feature_head_word(const BracketedTree& tree, int candidate) {
  const TreeNode& n = tree.node(candidate);
  return *tree.node(tree.leaf_node(n.span_begin)).token;
}

std::string feature_subcategorization(const BracketedTree& tree,
                                      int predicate) {
  int parent = tree.node(predicate).parent;
  if (parent == -1) return tree.node(predicate).label.phrase_type;
  const TreeNode& p = tree.node(parent);
  std::string out = p.label.phrase_type + "(";
  for (std::size_t i = 0; i < p.children.size(); ++i) {
    if (i > 0) out += ", ";
    out += tree.node(p.children[i]).label.phrase_type;
  }
  out += ")";
  return out;
}

std::string feature_function_tag(const BracketedTree& tree, int candidate) {
  const std::string& tag = tree.node(candidate).label.function_tag;
  return tag.empty() ? "NONE" : tag;
}

int feature_distance(const BracketedTree& tree, int candidate, int predicate) {
  std::vector<int> up, down;
  path_chains(tree, candidate, predicate, up, down);
  return static_cast<int>(up.size()) - 1 + static_cast<int>(down.size());
}

std::string feature_predicate_type(const BracketedTree& tree, int predicate) {
  return tree.node(predicate).label.phrase_type;
}

namespace {

FeatureSetSpec make_set(std::string name, std::set<Template> templates) {
  return FeatureSetSpec{std::move(name), std::move(templates)};
}

}  // namespace

FeatureSetSpec FeatureSetSpec::basic() {
  return make_set("Φ0", {Template::PhraseType, Template::Path,
                         Template::Position, Template::Voice,
                         Template::HeadWord, Template::Subcategorization,
                         Template::PredicateWord});
}

FeatureSetSpec FeatureSetSpec::by_name(const std::string& name) {
  std::string key = name;
  if (key.rfind("phi", 0) == 0) key = "Φ" + key.substr(3);
  if (key == "best") key = "Φ11";
  if (key.rfind("custom:", 0) == 0) {
    FeatureSetSpec spec;
    spec.name = key;
    std::string rest = key.substr(7);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      std::size_t comma = rest.find(',', pos);
      std::string item = rest.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (!item.empty()) spec.included.insert(template_from_name(item));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return spec;
  }

  const std::string phi = "Φ";
  if (key.rfind(phi, 0) != 0)
    throw std::runtime_error("unknown feature set: " + name);
  int n = -1;
  try {
    n = std::stoi(key.substr(phi.size()));
  } catch (const std::exception&) {
    throw std::runtime_error("unknown feature set: " + name);
  }
  FeatureSetSpec base = basic();
  std::set<Template> s = base.included;
  auto plus = [&s](Template t) { s.insert(t); };
  auto minus = [&s](Template t) { s.erase(t); };
  auto phi4 = [&]() {
    plus(Template::FunctionTag);
    plus(Template::Distance);
  };
  switch (n) {
    case 0: break;
    case 1: plus(Template::FunctionTag); break;
    case 2: plus(Template::PredicateType); break;
    case 3: plus(Template::Distance); break;
    case 4: phi4(); break;
    case 5: phi4(); minus(Template::FunctionTag); break;
    case 6: phi4(); minus(Template::Distance); break;
    case 7: phi4(); minus(Template::HeadWord); break;
    case 8: phi4(); minus(Template::Path); break;
    case 9: phi4(); minus(Template::Position); break;
    case 10: phi4(); minus(Template::Voice); break;
    case 11: phi4(); minus(Template::Subcategorization); break;
    case 12: phi4(); minus(Template::PredicateWord); break;
    case 13: phi4(); minus(Template::PhraseType); break;
    default:
      throw std::runtime_error("unknown feature set: " + name);
  }
  return make_set(phi + std::to_string(n), std::move(s));
}

FeatureSetSpec FeatureSetSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open feature set file: " + path);
  FeatureSetSpec spec;
  spec.name = path;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string item;
    while (ss >> item) {
      if (item[0] == '#') break;
      spec.included.insert(template_from_name(item));
    }
  }
  if (spec.included.empty())
    throw std::runtime_error("feature set file names no templates: " + path);
  return spec;
}

FeatureSetSpec resolve_feature_set(const std::string& name_or_path) {
  try {
    return FeatureSetSpec::by_name(name_or_path);
  } catch (const std::exception&) {
    if (std::ifstream(name_or_path).good())
      return FeatureSetSpec::load(name_or_path);
    throw;
  }
}

FeatureBundle assemble(const BracketedTree& tree, const Candidate& candidate,
                       int predicate, const FeatureSetSpec& spec,
                       const TreebankConfig& cfg) {
  if (spec.included.empty())
    throw std::invalid_argument("feature set '" + spec.name + "' is empty");
  FeatureBundle b;
  auto want = [&spec](Template t) { return spec.included.count(t) > 0; };
  int cand = candidate.node;
  if (want(Template::PhraseType))
    b.values[Template::PhraseType] = feature_phrase_type(tree, cand);
  if (want(Template::Path))
    b.values[Template::Path] = feature_path(tree, cand, predicate);
  if (want(Template::Position))
    b.values[Template::Position] =
        std::to_string(feature_position(tree, cand, predicate));
  if (want(Template::Voice))
    b.values[Template::Voice] =
        std::to_string(feature_voice(tree, predicate, cfg));
  if (want(Template::HeadWord))
    b.values[Template::HeadWord] = feature_head_word(tree, cand);
  if (want(Template::Subcategorization))
    b.values[Template::Subcategorization] =
        feature_subcategorization(tree, predicate);
  if (want(Template::PredicateWord))
    b.values[Template::PredicateWord] = *tree.node(predicate).token;
  if (want(Template::FunctionTag))
    b.values[Template::FunctionTag] = feature_function_tag(tree, cand);
  if (want(Template::Distance))
    b.values[Template::Distance] =
        std::to_string(feature_distance(tree, cand, predicate));
  if (want(Template::PredicateType))
    b.values[Template::PredicateType] = feature_predicate_type(tree, predicate);
  return b;
}

Vocabulary Vocabulary::fit(const std::vector<FeatureBundle>& bundles) {
  Vocabulary v;
  for (const FeatureBundle& b : bundles) {
    for (const auto& [t, value] : b.values) {
      auto key = std::make_pair(static_cast<int>(t), value);
      if (v.index_.emplace(key, static_cast<int>(v.entries_.size())).second)
        v.entries_.push_back(Entry{t, value});
    }
  }
  return v;
}

Vocabulary Vocabulary::from_entries(std::vector<Entry> entries) {
  Vocabulary v;
  v.entries_ = std::move(entries);
  for (std::size_t i = 0; i < v.entries_.size(); ++i)
    v.index_.emplace(
        std::make_pair(static_cast<int>(v.entries_[i].t), v.entries_[i].value),
        static_cast<int>(i));
  return v;
}

int Vocabulary::lookup(Template t, const std::string& value) const {
  auto it = index_.find(std::make_pair(static_cast<int>(t), value));
  return it == index_.end() ? -1 : it->second;
}

FeatureVector vectorize(const FeatureBundle& bundle, const Vocabulary& vocab) {
  FeatureVector out;
  for (const auto& [t, value] : bundle.values) {
    int id = vocab.lookup(t, value);
    if (id >= 0) out.indices.push_back(id);
  }
  for (const DenseBlock& block : bundle.dense)
    out.dense.insert(out.dense.end(), block.values.begin(),
                     block.values.end());
  return out;
}

}  // namespace srl
