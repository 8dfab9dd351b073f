#ifndef SRL_PIPELINE_HPP
#define SRL_PIPELINE_HPP

#include <iosfwd>
#include <optional>
#include <utility>

#include "srl/corpus.hpp"
#include "srl/embedding.hpp"
#include "srl/evaluate.hpp"
#include "srl/ilp.hpp"

namespace srl {

// Everything needed to label new sentences, persisted as one
// self-describing JSON file (mandatory version field).
struct SrlModel {
  int version = 1;
  RunConfig config;
  TreebankConfig treebank;
  RoleSet roles;
  FeatureSetSpec spec;
  Vocabulary vocab;
  std::optional<EmbeddingTable> predicate_table;
  std::optional<EmbeddingTable> headword_table;
  std::optional<LinearModel> one_step;   // 1-step strategy
  std::optional<LinearModel> id_model;   // 2-step strategy
  std::optional<LinearModel> cls_model;

  bool two_step() const { return id_model.has_value(); }
};

SrlModel train_pipeline(const std::vector<GoldRecord>& records,
                        const RunConfig& config,
                        const TreebankConfig& tb = TreebankConfig::defaults(),
                        const RoleSet& roles = RoleSet::defaults());

// Feature bundle for one candidate, with any embedding substitutions the
// model was trained with.
FeatureBundle candidate_bundle(const SrlModel& model, const BracketedTree& tree,
                               const Candidate& cand, int predicate_node_id);

// Labels one predicate's candidates: independent argmax, or the exact
// constrained decoder when use_ilp is set. When debug is non-null, the
// assembled problem and chosen assignment are dumped as one JSON record.
std::vector<std::pair<Candidate, std::string>> decode_sentence(
    const BracketedTree& tree, int predicate_node_id, const SrlModel& model,
    bool use_ilp, bool constraint5, std::ostream* debug = nullptr);

// Runs decode_sentence over every record/predicate and returns records with
// the predicted arguments (non-NULL roles).
std::vector<GoldRecord> label_records(const SrlModel& model,
                                      const std::vector<GoldRecord>& records,
                                      bool use_ilp, bool constraint5,
                                      std::ostream* debug = nullptr);

void save_model(const SrlModel& model, const std::string& path);
SrlModel load_model(const std::string& path);

// Corpus-level comparison of two aligned record sets. Spans are compared
// within each (record, predicate leaf) pair; REL is ignored.
struct EvalOutcome {
  PRF total;
  std::map<std::string, PRF> by_role;
};
EvalOutcome evaluate_records(const std::vector<GoldRecord>& gold,
                             const std::vector<GoldRecord>& predicted);

}  // namespace srl

#endif  // SRL_PIPELINE_HPP
