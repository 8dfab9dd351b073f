#include "srl/corpus.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "srl/tree.hpp"

namespace srl {

namespace {

using nlohmann::json;

void validate_record(const GoldRecord& record, const RoleSet& roles,
                     const std::string& where) {
  BracketedTree tree;
  try {
    tree = BracketedTree::parse(record.tree_text);
  } catch (const ParseError& e) {
    throw std::runtime_error(where + ": bad tree: " + e.what());
  }
  int n = tree.leaf_count();
  for (const GoldPredicate& pred : record.predicates) {
    if (pred.leaf < 0 || pred.leaf >= n)
      throw std::runtime_error(where + ": predicate leaf index " +
                               std::to_string(pred.leaf) +
                               " out of range (sentence length " +
                               std::to_string(n) + ")");
    for (std::size_t a = 0; a < pred.args.size(); ++a) {
      const RoleSpan& arg = pred.args[a];
      if (arg.begin < 0 || arg.end > n || arg.begin >= arg.end)
        throw std::runtime_error(where + ": argument span [" +
                                 std::to_string(arg.begin) + "," +
                                 std::to_string(arg.end) +
                                 ") out of sentence bounds");
      if (arg.role != kRelLabel && roles.index_of(arg.role) < 0)
        throw std::runtime_error(where + ": unknown role '" + arg.role + "'");
      for (std::size_t b = 0; b < a; ++b) {
        const RoleSpan& other = pred.args[b];
        if (arg.begin < other.end && other.begin < arg.end)
          throw std::runtime_error(
              where + ": overlapping argument spans for one predicate");
      }
    }
  }
}

}  // namespace

std::vector<GoldRecord> parse_gold_records(std::istream& in,
                                           const std::string& source_name,
                                           const RoleSet& roles) {
  std::vector<GoldRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string where = source_name + ":" + std::to_string(lineno);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::runtime_error(where + ": " + e.what());
    }
    GoldRecord record;
    record.id = j.value("id", std::to_string(out.size()));
    if (!j.contains("tree") || !j["tree"].is_string())
      throw std::runtime_error(where + ": missing \"tree\" string");
    record.tree_text = j["tree"].get<std::string>();
    for (const json& jp : j.value("predicates", json::array())) {
      GoldPredicate pred;
      if (!jp.contains("leaf") || !jp["leaf"].is_number_integer())
        throw std::runtime_error(where + ": predicate without \"leaf\" index");
      pred.leaf = jp["leaf"].get<int>();
      for (const json& ja : jp.value("args", json::array())) {
        RoleSpan arg;
        if (!ja.contains("role") || !ja.contains("span") ||
            !ja["span"].is_array() || ja["span"].size() != 2)
          throw std::runtime_error(where +
                                   ": argument needs \"role\" and \"span\"");
        arg.role = ja["role"].get<std::string>();
        arg.begin = ja["span"][0].get<int>();
        arg.end = ja["span"][1].get<int>();
        pred.args.push_back(std::move(arg));
      }
      record.predicates.push_back(std::move(pred));
    }
    validate_record(record, roles, where);
    out.push_back(std::move(record));
  }
  return out;
}

std::vector<GoldRecord> read_gold_records(const std::string& path,
                                          const RoleSet& roles) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open gold file: " + path);
  return parse_gold_records(in, path, roles);
}

std::string gold_record_to_json(const GoldRecord& record) {
  json j;
  j["id"] = record.id;
  j["tree"] = record.tree_text;
  json preds = json::array();
  for (const GoldPredicate& pred : record.predicates) {
    json jp;
    jp["leaf"] = pred.leaf;
    json args = json::array();
    for (const RoleSpan& arg : pred.args) {
      json ja;
      ja["role"] = arg.role;
      ja["span"] = {arg.begin, arg.end};
      args.push_back(std::move(ja));
    }
    jp["args"] = std::move(args);
    preds.push_back(std::move(jp));
  }
  j["predicates"] = std::move(preds);
  return j.dump();
}

void write_gold_records(std::ostream& out,
                        const std::vector<GoldRecord>& records) {
  for (const GoldRecord& record : records)
    out << gold_record_to_json(record) << "\n";
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  RunConfig c;
  c.feature_set = j.value("feature_set", c.feature_set);
  c.classifier = j.value("classifier", c.classifier);
  c.strategy = j.value("strategy", c.strategy);
  c.extractor = j.value("extractor", c.extractor);
  c.use_ilp = j.value("use_ilp", c.use_ilp);
  c.constraint5 = j.value("constraint5", c.constraint5);
  c.regularization = j.value("regularization", c.regularization);
  c.epochs = j.value("epochs", c.epochs);
  c.eta0 = j.value("eta0", c.eta0);
  c.seed = j.value("seed", c.seed);
  c.embed_predicate = j.value("embed_predicate", c.embed_predicate);
  c.embed_headword = j.value("embed_headword", c.embed_headword);
  return c;
}

std::string RunConfig::to_json() const {
  json j;
  j["feature_set"] = feature_set;
  j["classifier"] = classifier;
  j["strategy"] = strategy;
  j["extractor"] = extractor;
  j["use_ilp"] = use_ilp;
  j["constraint5"] = constraint5;
  j["regularization"] = regularization;
  j["epochs"] = epochs;
  j["eta0"] = eta0;
  j["seed"] = seed;
  j["embed_predicate"] = embed_predicate;
  j["embed_headword"] = embed_headword;
  return j.dump();
}

}  // namespace srl
