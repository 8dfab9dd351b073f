#ifndef SRL_CORPUS_HPP
#define SRL_CORPUS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "srl/convert.hpp"

namespace srl {

// One annotated sentence: the bracketed tree plus predicate leaf indices
// with their labelled argument spans.
struct GoldPredicate {
  int leaf = -1;
  std::vector<RoleSpan> args;
};

struct GoldRecord {
  std::string id;
  std::string tree_text;
  std::vector<GoldPredicate> predicates;
};

// JSONL: one {"id", "tree", "predicates": [{"leaf", "args": [{"role",
// "span": [b, e]}]}]} object per line; blank lines ignored. Records are
// validated against the role set and the parsed tree.
std::vector<GoldRecord> read_gold_records(
    const std::string& path, const RoleSet& roles = RoleSet::defaults());
std::vector<GoldRecord> parse_gold_records(std::istream& in,
                                           const std::string& source_name,
                                           const RoleSet& roles);
std::string gold_record_to_json(const GoldRecord& record);
void write_gold_records(std::ostream& out,
                        const std::vector<GoldRecord>& records);

// Pipeline configuration: which feature set, classifier, labelling strategy
// and extractor to run, plus decoding and embedding options. The SRL_CONFIG
// environment variable may point to a JSON file with these fields; CLI
// flags override it.
struct RunConfig {
  std::string feature_set = "Φ11";  // the best documented set
  std::string classifier = "svm";
  std::string strategy = "1step";
  std::string extractor = "algorithm1";
  bool use_ilp = false;
  bool constraint5 = false;
  double regularization = -1.0;  // classifier default when negative
  int epochs = 50;
  double eta0 = 0.1;
  std::uint64_t seed = 0;
  std::string embed_predicate;  // embedding file; empty = keep the word
  std::string embed_headword;

  static RunConfig from_json_file(const std::string& path);
  std::string to_json() const;
};

}  // namespace srl

#endif  // SRL_CORPUS_HPP
