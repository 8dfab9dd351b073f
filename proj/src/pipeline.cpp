#include "srl/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "srl/rng.hpp"

namespace srl {

namespace {

using nlohmann::json;

struct PredicateCase {
  BracketedTree tree;
  int predicate_node_id;
  std::vector<Candidate> candidates;
  std::vector<std::string> gold_roles;  // per candidate; NULL when unmatched
};

// A candidate is labelled with a gold role iff its span equals the argument
// span exactly; REL never matches (its span holds the predicate).
std::vector<std::string> match_gold(const std::vector<Candidate>& candidates,
                                    const std::vector<RoleSpan>& args) {
  std::vector<std::string> out(candidates.size(), kNullLabel);
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (const RoleSpan& arg : args)
      if (arg.role != kRelLabel && arg.begin == candidates[i].span_begin &&
          arg.end == candidates[i].span_end) {
        out[i] = arg.role;
        break;
      }
  return out;
}

std::vector<PredicateCase> build_cases(const std::vector<GoldRecord>& records,
                                       ExtractorKind extractor,
                                       const TreebankConfig& tb) {
  std::vector<PredicateCase> cases;
  for (const GoldRecord& record : records) {
    BracketedTree tree = BracketedTree::parse(record.tree_text);
    for (const GoldPredicate& pred : record.predicates) {
      PredicateCase pc;
      pc.tree = tree;
      pc.predicate_node_id = predicate_node(tree, pred.leaf);
      pc.candidates = extract(extractor, pc.tree, pc.predicate_node_id, tb);
      pc.gold_roles = match_gold(pc.candidates, pred.args);
      cases.push_back(std::move(pc));
    }
  }
  return cases;
}

FeatureBundle bundle_with_substitutions(
    const BracketedTree& tree, const Candidate& cand, int pred_node,
    const FeatureSetSpec& spec, const TreebankConfig& tb,
    const std::optional<EmbeddingTable>& pred_table,
    const std::optional<EmbeddingTable>& head_table) {
  FeatureBundle b = assemble(tree, cand, pred_node, spec, tb);
  if (pred_table)
    b = substitute_embedding(b, Template::PredicateWord, *pred_table);
  if (head_table) b = substitute_embedding(b, Template::HeadWord, *head_table);
  return b;
}

}  // namespace

FeatureBundle candidate_bundle(const SrlModel& model,
                               const BracketedTree& tree,
                               const Candidate& cand, int predicate_node_id) {
  return bundle_with_substitutions(tree, cand, predicate_node_id, model.spec,
                                   model.treebank, model.predicate_table,
                                   model.headword_table);
}

SrlModel train_pipeline(const std::vector<GoldRecord>& records,
                        const RunConfig& config, const TreebankConfig& tb,
                        const RoleSet& roles) {
  SrlModel model;
  model.config = config;
  model.treebank = tb;
  model.roles = roles;
  model.spec = resolve_feature_set(config.feature_set);
  if (!config.embed_predicate.empty()) {
    if (model.spec.included.count(Template::PredicateWord) == 0)
      throw std::runtime_error(
          "predicate embedding requested but the feature set lacks the "
          "predicate word template");
    model.predicate_table = EmbeddingTable::load(config.embed_predicate);
  }
  if (!config.embed_headword.empty()) {
    if (model.spec.included.count(Template::HeadWord) == 0)
      throw std::runtime_error(
          "head word embedding requested but the feature set lacks the head "
          "word template");
    model.headword_table = EmbeddingTable::load(config.embed_headword);
  }

  std::vector<PredicateCase> cases =
      build_cases(records, extractor_from_name(config.extractor), tb);
  std::vector<FeatureBundle> bundles;
  std::vector<std::string> golds;
  for (const PredicateCase& pc : cases)
    for (std::size_t i = 0; i < pc.candidates.size(); ++i) {
      bundles.push_back(bundle_with_substitutions(
          pc.tree, pc.candidates[i], pc.predicate_node_id, model.spec, tb,
          model.predicate_table, model.headword_table));
      golds.push_back(pc.gold_roles[i]);
    }
  model.vocab = Vocabulary::fit(bundles);

  int dense_dim = 0;
  if (model.predicate_table) dense_dim += model.predicate_table->dimension();
  if (model.headword_table) dense_dim += model.headword_table->dimension();

  TrainHyperparams hyper;
  hyper.regularization = config.regularization;
  hyper.epochs = config.epochs;
  hyper.eta0 = config.eta0;
  hyper.seed = config.seed;
  ModelKind kind = model_kind_from_name(config.classifier);

  if (config.strategy == "1step") {
    std::vector<TrainingInstance> instances;
    instances.reserve(bundles.size());
    for (std::size_t i = 0; i < bundles.size(); ++i)
      instances.push_back(
          TrainingInstance{vectorize(bundles[i], model.vocab), golds[i]});
    model.one_step =
        train(instances, kind, roles, hyper, model.vocab.size(), dense_dim);
  } else if (config.strategy == "2step") {
    std::vector<TrainingInstance> id_instances, cls_instances;
    for (std::size_t i = 0; i < bundles.size(); ++i) {
      FeatureVector x = vectorize(bundles[i], model.vocab);
      bool is_arg = golds[i] != kNullLabel;
      id_instances.push_back(
          TrainingInstance{x, is_arg ? "ARG" : kNullLabel});
      if (is_arg) cls_instances.push_back(TrainingInstance{x, golds[i]});
    }
    model.id_model = train(id_instances, kind, RoleSet::identification(),
                           hyper, model.vocab.size(), dense_dim);
    model.cls_model = train(cls_instances, kind, roles.without_null(), hyper,
                            model.vocab.size(), dense_dim);
  } else {
    throw std::runtime_error("unknown strategy: " + config.strategy);
  }
  return model;
}

std::vector<std::pair<Candidate, std::string>> decode_sentence(
    const BracketedTree& tree, int predicate_node_id, const SrlModel& model,
    bool use_ilp, bool constraint5, std::ostream* debug) {
  std::vector<Candidate> candidates =
      extract(extractor_from_name(model.config.extractor), tree,
              predicate_node_id, model.treebank);
  std::vector<FeatureVector> vectors;
  vectors.reserve(candidates.size());
  for (const Candidate& cand : candidates)
    vectors.push_back(vectorize(
        candidate_bundle(model, tree, cand, predicate_node_id), model.vocab));

  int n_roles = static_cast<int>(model.roles.labels.size());
  int null_idx = model.roles.null_index();
  std::vector<std::pair<Candidate, std::string>> out;

  // Per-role decision values; in 2-step mode the NULL column carries the
  // identification model's NULL score and the rest come from the classifier.
  IlpProblem problem;
  problem.roles = model.roles;
  problem.predicate_is_verb =
      !constraint5 ||
      feature_predicate_type(tree, predicate_node_id) == "V";
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    std::vector<double> row(n_roles, 0.0);
    if (model.two_step()) {
      std::vector<double> id_scores = score(*model.id_model, vectors[i]);
      std::vector<double> cls_scores = score(*model.cls_model, vectors[i]);
      for (int c = 0; c < n_roles; ++c) {
        if (c == null_idx) {
          row[c] = id_scores[model.id_model->roles.null_index()];
        } else {
          int cc = model.cls_model->roles.index_of(model.roles.labels[c]);
          row[c] = cls_scores[cc];
        }
      }
    } else {
      row = score(*model.one_step, vectors[i]);
    }
    problem.scores.push_back(std::move(row));
    problem.spans.emplace_back(candidates[i].span_begin,
                               candidates[i].span_end);
  }
  problem.overlap_pairs = overlaps_from_spans(problem.spans);

  std::vector<int> labels;
  if (use_ilp) {
    Assignment assignment = solve(problem);
    labels = assignment.labels;
    if (debug) {
      json j;
      j["scores"] = problem.scores;
      json spans = json::array();
      for (auto [b, e] : problem.spans) spans.push_back({b, e});
      j["spans"] = std::move(spans);
      j["predicate_is_verb"] = problem.predicate_is_verb;
      json pairs = json::array();
      for (auto [a, b] : problem.overlap_pairs) pairs.push_back({a, b});
      j["overlap_pairs"] = std::move(pairs);
      json chosen = json::array();
      for (int c : labels) chosen.push_back(model.roles.labels[c]);
      j["assignment"] = std::move(chosen);
      j["objective"] = assignment.objective;
      *debug << j.dump() << "\n";
    }
  } else if (model.two_step()) {
    labels.resize(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i)
      labels[i] = model.roles.index_of(
          predict_2step(*model.id_model, *model.cls_model, vectors[i]));
  } else {
    labels = independent_argmax(problem);
  }

  out.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i)
    out.emplace_back(candidates[i], model.roles.labels[labels[i]]);
  return out;
}

std::vector<GoldRecord> label_records(const SrlModel& model,
                                      const std::vector<GoldRecord>& records,
                                      bool use_ilp, bool constraint5,
                                      std::ostream* debug) {
  std::vector<GoldRecord> out;
  out.reserve(records.size());
  for (const GoldRecord& record : records) {
    GoldRecord labelled;
    labelled.id = record.id;
    labelled.tree_text = record.tree_text;
    BracketedTree tree = BracketedTree::parse(record.tree_text);
    for (const GoldPredicate& pred : record.predicates) {
      GoldPredicate out_pred;
      out_pred.leaf = pred.leaf;
      auto decoded = decode_sentence(tree, predicate_node(tree, pred.leaf),
                                     model, use_ilp, constraint5, debug);
      for (const auto& [cand, role] : decoded)
        if (role != kNullLabel)
          out_pred.args.push_back(
              RoleSpan{cand.span_begin, cand.span_end, role});
      labelled.predicates.push_back(std::move(out_pred));
    }
    out.push_back(std::move(labelled));
  }
  return out;
}

namespace {

json roleset_to_json(const RoleSet& roles) {
  json j;
  j["labels"] = roles.labels;
  j["core"] = std::vector<std::string>(roles.core.begin(), roles.core.end());
  return j;
}

RoleSet roleset_from_json(const json& j) {
  RoleSet roles;
  roles.labels = j.at("labels").get<std::vector<std::string>>();
  for (const auto& c : j.at("core")) roles.core.insert(c.get<std::string>());
  return roles;
}

json linear_model_to_json(const LinearModel& m) {
  json j;
  j["kind"] = model_kind_name(m.kind);
  j["regularization"] = m.regularization;
  j["roles"] = roleset_to_json(m.roles);
  j["dict_size"] = m.dict_size;
  j["dense_dim"] = m.dense_dim;
  j["weights"] = m.weights;
  j["bias"] = m.bias;
  j["objective_history"] = m.objective_history;
  return j;
}

LinearModel linear_model_from_json(const json& j) {
  LinearModel m;
  m.kind = model_kind_from_name(j.at("kind").get<std::string>());
  m.regularization = j.at("regularization").get<double>();
  m.roles = roleset_from_json(j.at("roles"));
  m.dict_size = j.at("dict_size").get<int>();
  m.dense_dim = j.at("dense_dim").get<int>();
  m.weights = j.at("weights").get<std::vector<std::vector<double>>>();
  m.bias = j.at("bias").get<std::vector<double>>();
  m.objective_history =
      j.value("objective_history", std::vector<double>());
  return m;
}

json embedding_to_json(const EmbeddingTable& t) {
  json j;
  j["dimension"] = t.dimension();
  json entries = json::object();
  for (const auto& [word, vec] : t.entries()) entries[word] = vec;
  j["entries"] = std::move(entries);
  return j;
}

EmbeddingTable embedding_from_json(const json& j) {
  EmbeddingTable t(j.at("dimension").get<int>());
  for (const auto& [word, vec] : j.at("entries").items())
    t.insert(word, vec.get<std::vector<double>>());
  return t;
}

json config_to_json(const RunConfig& c) { return json::parse(c.to_json()); }

RunConfig config_from_json(const json& j) {
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

}  // namespace

void save_model(const SrlModel& model, const std::string& path) {
  json j;
  j["version"] = model.version;
  j["config"] = config_to_json(model.config);
  j["treebank"] = {
      {"phrasal", std::vector<std::string>(model.treebank.phrasal_tags.begin(),
                                           model.treebank.phrasal_tags.end())},
      {"ignore", std::vector<std::string>(model.treebank.ignore_tags.begin(),
                                          model.treebank.ignore_tags.end())},
      {"passive",
       std::vector<std::string>(model.treebank.passive_markers.begin(),
                                model.treebank.passive_markers.end())}};
  j["roles"] = roleset_to_json(model.roles);
  j["feature_set"] = model.spec.name;
  json templates = json::array();
  for (Template t : model.spec.included) templates.push_back(template_name(t));
  j["feature_templates"] = std::move(templates);
  json vocab = json::array();
  for (const Vocabulary::Entry& e : model.vocab.entries())
    vocab.push_back({template_name(e.t), e.value});
  j["vocabulary"] = std::move(vocab);
  if (model.predicate_table)
    j["predicate_embeddings"] = embedding_to_json(*model.predicate_table);
  if (model.headword_table)
    j["headword_embeddings"] = embedding_to_json(*model.headword_table);
  if (model.one_step) j["one_step"] = linear_model_to_json(*model.one_step);
  if (model.id_model) j["id_model"] = linear_model_to_json(*model.id_model);
  if (model.cls_model) j["cls_model"] = linear_model_to_json(*model.cls_model);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << j.dump() << "\n";
}

SrlModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  if (!j.contains("version"))
    throw std::runtime_error(path + ": model file has no version field");
  SrlModel model;
  model.version = j["version"].get<int>();
  if (model.version != 1)
    throw std::runtime_error(path + ": unsupported model version " +
                             std::to_string(model.version));
  model.config = config_from_json(j.at("config"));
  const json& tb = j.at("treebank");
  for (const auto& t : tb.at("phrasal"))
    model.treebank.phrasal_tags.insert(t.get<std::string>());
  for (const auto& t : tb.at("ignore"))
    model.treebank.ignore_tags.insert(t.get<std::string>());
  for (const auto& t : tb.at("passive"))
    model.treebank.passive_markers.insert(t.get<std::string>());
  model.roles = roleset_from_json(j.at("roles"));
  model.spec.name = j.at("feature_set").get<std::string>();
  for (const auto& t : j.at("feature_templates"))
    model.spec.included.insert(template_from_name(t.get<std::string>()));
  std::vector<Vocabulary::Entry> entries;
  for (const auto& e : j.at("vocabulary"))
    entries.push_back(Vocabulary::Entry{
        template_from_name(e[0].get<std::string>()), e[1].get<std::string>()});
  model.vocab = Vocabulary::from_entries(std::move(entries));
  if (j.contains("predicate_embeddings"))
    model.predicate_table = embedding_from_json(j["predicate_embeddings"]);
  if (j.contains("headword_embeddings"))
    model.headword_table = embedding_from_json(j["headword_embeddings"]);
  if (j.contains("one_step"))
    model.one_step = linear_model_from_json(j["one_step"]);
  if (j.contains("id_model"))
    model.id_model = linear_model_from_json(j["id_model"]);
  if (j.contains("cls_model"))
    model.cls_model = linear_model_from_json(j["cls_model"]);
  if (!model.one_step && !model.two_step())
    throw std::runtime_error(path + ": model file carries no classifier");
  return model;
}

EvalOutcome evaluate_records(const std::vector<GoldRecord>& gold,
                             const std::vector<GoldRecord>& predicted) {
  if (gold.size() != predicted.size())
    throw std::runtime_error("gold and predicted record counts differ (" +
                             std::to_string(gold.size()) + " vs " +
                             std::to_string(predicted.size()) + ")");
  EvalOutcome outcome;
  for (std::size_t r = 0; r < gold.size(); ++r) {
    std::map<int, const std::vector<RoleSpan>*> pred_by_leaf;
    for (const GoldPredicate& p : predicted[r].predicates)
      pred_by_leaf[p.leaf] = &p.args;
    std::set<int> seen;
    static const std::vector<RoleSpan> kEmpty;
    for (const GoldPredicate& g : gold[r].predicates) {
      seen.insert(g.leaf);
      auto it = pred_by_leaf.find(g.leaf);
      const std::vector<RoleSpan>& p = it == pred_by_leaf.end() ? kEmpty
                                                                : *it->second;
      PerRoleReport report = per_role_report(p, g.args);
      outcome.total += report.total;
      for (const auto& [role, prf] : report.by_role)
        outcome.by_role[role] += prf;
    }
    // Predicates only present on the predicted side count as false positives.
    for (const GoldPredicate& p : predicted[r].predicates) {
      if (seen.count(p.leaf)) continue;
      PerRoleReport report = per_role_report(p.args, kEmpty);
      outcome.total += report.total;
      for (const auto& [role, prf] : report.by_role)
        outcome.by_role[role] += prf;
    }
  }
  return outcome;
}

// Fold-level training and evaluation; scores averaged over folds.
CrossValidationResult cross_validate(const std::vector<GoldRecord>& corpus,
                                     const RunConfig& config, int k,
                                     std::uint64_t seed) {
  FoldPlan plan = FoldPlan::make(static_cast<int>(corpus.size()), k, seed);
  CrossValidationResult result;
  for (int fold = 0; fold < k; ++fold) {
    std::vector<GoldRecord> train_set, eval_set;
    for (std::size_t i = 0; i < corpus.size(); ++i)
      (plan.assignment[i] == fold ? eval_set : train_set).push_back(corpus[i]);
    SrlModel model = train_pipeline(train_set, config);
    std::vector<GoldRecord> predicted =
        label_records(model, eval_set, config.use_ilp, config.constraint5);
    result.folds.push_back(evaluate_records(eval_set, predicted).total);
  }
  for (const PRF& prf : result.folds) {
    result.mean_precision += prf.precision();
    result.mean_recall += prf.recall();
    result.mean_f1 += prf.f1();
  }
  result.mean_precision /= k;
  result.mean_recall /= k;
  result.mean_f1 /= k;
  return result;
}

std::vector<CurvePoint> learning_curve(const std::vector<GoldRecord>& corpus,
                                       const RunConfig& config,
                                       const std::vector<int>& sizes,
                                       std::uint64_t seed) {
  // Hold out one fifth as the fixed evaluation split.
  FoldPlan plan = FoldPlan::make(static_cast<int>(corpus.size()),
                                 std::min<int>(5, (int)corpus.size()), seed);
  std::vector<GoldRecord> pool, eval_set;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    (plan.assignment[i] == 0 ? eval_set : pool).push_back(corpus[i]);

  std::vector<CurvePoint> points;
  for (int size : sizes) {
    if (size < 1 || size > static_cast<int>(pool.size()))
      throw std::invalid_argument(
          "curve size " + std::to_string(size) +
          " exceeds the training split (" + std::to_string(pool.size()) + ")");
    std::vector<int> ids(pool.size());
    std::iota(ids.begin(), ids.end(), 0);
    Rng rng(seed ^ (0x517cc1b727220a95ULL * (std::uint64_t)size));
    rng.shuffle(ids);
    // Keep the chosen records in corpus order so the full-size point is the
    // plain single-split run.
    std::vector<int> chosen(ids.begin(), ids.begin() + size);
    std::sort(chosen.begin(), chosen.end());
    std::vector<GoldRecord> subset;
    subset.reserve(size);
    for (int i : chosen) subset.push_back(pool[i]);
    SrlModel model = train_pipeline(subset, config);
    std::vector<GoldRecord> predicted =
        label_records(model, eval_set, config.use_ilp, config.constraint5);
    points.push_back(
        CurvePoint{size, evaluate_records(eval_set, predicted).total});
  }
  return points;
}

}  // namespace srl
