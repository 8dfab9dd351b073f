#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "srl/convert.hpp"
#include "srl/corpus.hpp"
#include "srl/embedding.hpp"
#include "srl/evaluate.hpp"
#include "srl/pipeline.hpp"
#include "srl/synth.hpp"

namespace {

using namespace srl;

std::string pct(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * x);
  return buf;
}

std::string frac(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

// Output stream selection: --out PATH or stdout.
struct Sink {
  std::ofstream file;
  std::ostream* out = &std::cout;

  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw std::runtime_error("cannot write output file: " + path);
      out = &file;
    }
  }
  std::ostream& stream() { return *out; }
};

struct ConfigFlags {
  std::string features, classifier, strategy, extractor;
  double regularization = -1.0;
  int epochs = -1;
  double eta0 = -1.0;
  std::uint64_t seed = 0;
  std::vector<std::string> embed;
  bool ilp = false;
  bool constraint5 = false;
};

void add_config_options(CLI::App* cmd, ConfigFlags& f) {
  cmd->add_option("--features", f.features, "Feature set name (Φ0..Φ13, phi0..phi13, best)");
  cmd->add_option("--classifier", f.classifier, "svm|maxent");
  cmd->add_option("--strategy", f.strategy, "1step|2step");
  cmd->add_option("--extractor", f.extractor,
                  "algorithm1|pruning|node-mapping|all-nodes");
  cmd->add_option("--reg", f.regularization, "Regularization constant C");
  cmd->add_option("--epochs", f.epochs, "Training epochs");
  cmd->add_option("--eta0", f.eta0, "Initial learning rate");
  cmd->add_option("--seed", f.seed, "Random seed");
  cmd->add_option("--embed", f.embed,
                  "Lexical feature substitution, predicate=FILE or headword=FILE");
  cmd->add_flag("--ilp", f.ilp, "Decode with the exact ILP solver");
  cmd->add_flag("--constraint5", f.constraint5,
                "Restrict core roles to Arg0/Arg1 for non-verb predicates");
}

RunConfig resolve_config(const CLI::App* cmd, const ConfigFlags& f) {
  RunConfig cfg;
  if (const char* env = std::getenv("SRL_CONFIG"); env && *env)
    cfg = RunConfig::from_json_file(env);
  if (cmd->count("--features")) cfg.feature_set = f.features;
  if (cmd->count("--classifier")) cfg.classifier = f.classifier;
  if (cmd->count("--strategy")) cfg.strategy = f.strategy;
  if (cmd->count("--extractor")) cfg.extractor = f.extractor;
  if (cmd->count("--reg")) cfg.regularization = f.regularization;
  if (cmd->count("--epochs")) cfg.epochs = f.epochs;
  if (cmd->count("--eta0")) cfg.eta0 = f.eta0;
  if (cmd->count("--seed")) cfg.seed = f.seed;
  if (cmd->count("--ilp")) cfg.use_ilp = f.ilp;
  if (cmd->count("--constraint5")) cfg.constraint5 = f.constraint5;
  for (const std::string& e : f.embed) {
    std::size_t eq = e.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("--embed expects predicate=FILE or headword=FILE");
    std::string which = e.substr(0, eq);
    std::string path = e.substr(eq + 1);
    if (which == "predicate")
      cfg.embed_predicate = path;
    else if (which == "headword")
      cfg.embed_headword = path;
    else
      throw std::runtime_error("--embed target must be predicate or headword");
  }
  return cfg;
}

TreebankConfig tags_or_default(const std::string& path) {
  return path.empty() ? TreebankConfig::defaults() : TreebankConfig::load(path);
}

int cmd_parse_check(const std::string& trees_path) {
  std::ifstream in(trees_path);
  if (!in) throw std::runtime_error("cannot open treebank file: " + trees_path);
  std::string line;
  int lineno = 0, n_trees = 0, n_bad = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      BracketedTree tree = BracketedTree::parse(line);
      BracketedTree again = BracketedTree::parse(tree.render());
      if (again.render() != tree.render())
        throw std::runtime_error("render round-trip mismatch");
      ++n_trees;
    } catch (const std::exception& e) {
      std::cerr << trees_path << ":" << lineno << ": " << e.what() << "\n";
      ++n_bad;
    }
  }
  std::cout << n_trees << " trees OK";
  if (n_bad) std::cout << ", " << n_bad << " failed";
  std::cout << "\n";
  return n_bad ? 1 : 0;
}

void cmd_extract(const std::string& gold_path, const std::string& alg,
                 const std::string& tags_path, const std::string& out_path) {
  Sink sink(out_path);
  ExtractorKind kind = extractor_from_name(alg);
  TreebankConfig tb = tags_or_default(tags_path);
  for (const GoldRecord& record : read_gold_records(gold_path)) {
    BracketedTree tree = BracketedTree::parse(record.tree_text);
    for (const GoldPredicate& pred : record.predicates) {
      for (const Candidate& cand :
           extract(kind, tree, predicate_node(tree, pred.leaf), tb)) {
        sink.stream() << record.id << "\t" << pred.leaf << "\t"
                      << extractor_name(kind) << "\t" << cand.span_begin << ":"
                      << cand.span_end << "\t"
                      << tree.covered_text_span(cand.span_begin, cand.span_end,
                                                /*human=*/true)
                      << "\n";
      }
    }
  }
}

void cmd_convert(const std::string& gold_path, const std::string& rules_path,
                 const std::string& tags_path, const std::string& out_path) {
  Sink sink(out_path);
  RuleSet rules = rules_path.empty() ? default_rules() : load_rules(rules_path);
  TreebankConfig tb = tags_or_default(tags_path);
  std::vector<GoldRecord> out;
  for (GoldRecord record : read_gold_records(gold_path)) {
    BracketedTree tree = BracketedTree::parse(record.tree_text);
    for (GoldPredicate& pred : record.predicates)
      pred.args =
          convert_tree(tree, predicate_node(tree, pred.leaf), rules, tb);
    out.push_back(std::move(record));
  }
  write_gold_records(sink.stream(), out);
}

void print_report(std::ostream& out, const EvalOutcome& outcome) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-16s %10s %10s %10s %7s %7s %7s", "role",
                "precision", "recall", "f1", "tp", "fp", "fn");
  out << buf << "\n";
  auto row = [&](const std::string& name, const PRF& prf) {
    std::snprintf(buf, sizeof buf, "%-16s %10s %10s %10s %7ld %7ld %7ld",
                  name.c_str(), pct(prf.precision()).c_str(),
                  pct(prf.recall()).c_str(), pct(prf.f1()).c_str(), prf.tp,
                  prf.fp, prf.fn);
    out << buf << "\n";
  };
  for (const auto& [role, prf] : outcome.by_role) row(role, prf);
  row("ALL", outcome.total);
}

void write_report_tsv(std::ostream& out, const EvalOutcome& outcome) {
  out << "role\tprecision\trecall\tf1\ttp\tfp\tfn\n";
  auto row = [&](const std::string& name, const PRF& prf) {
    out << name << "\t" << frac(prf.precision()) << "\t" << frac(prf.recall())
        << "\t" << frac(prf.f1()) << "\t" << prf.tp << "\t" << prf.fp << "\t"
        << prf.fn << "\n";
  };
  for (const auto& [role, prf] : outcome.by_role) row(role, prf);
  row("ALL", outcome.total);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic role labelling for bracketed Vietnamese treebanks"};
  app.require_subcommand(1);

  // parse-check
  auto* parse_check = app.add_subcommand(
      "parse-check", "Parse a treebank file and verify render round-trips");
  std::string pc_trees;
  parse_check->add_option("--trees", pc_trees, "Treebank file, one tree per line")
      ->required();

  // extract
  auto* extract_cmd = app.add_subcommand(
      "extract", "Emit argument candidates for each annotated predicate");
  std::string ex_gold, ex_alg = "algorithm1", ex_tags, ex_out;
  extract_cmd->add_option("--gold", ex_gold, "Gold records (JSONL)")->required();
  extract_cmd->add_option("--extractor,--alg", ex_alg, "Extraction algorithm");
  extract_cmd->add_option("--tags", ex_tags, "Tag inventory config file");
  extract_cmd->add_option("--out", ex_out, "Output path (default stdout)");

  // convert
  auto* convert_cmd = app.add_subcommand(
      "convert", "Rule-based coarse-grained role annotation");
  std::string cv_gold, cv_rules, cv_tags, cv_out;
  convert_cmd->add_option("--gold", cv_gold, "Records with predicate marks (JSONL)")
      ->required();
  convert_cmd->add_option("--rules", cv_rules, "Rule config (default: built-in)");
  convert_cmd->add_option("--tags", cv_tags, "Tag inventory config file");
  convert_cmd->add_option("--out", cv_out, "Output path (default stdout)");

  // train
  auto* train_cmd = app.add_subcommand("train", "Train a labelling model");
  std::string tr_gold, tr_tags, tr_out;
  ConfigFlags tr_flags;
  train_cmd->add_option("--gold", tr_gold, "Training records (JSONL)")->required();
  train_cmd->add_option("--tags", tr_tags, "Tag inventory config file");
  train_cmd->add_option("--out", tr_out, "Model output path")->required();
  add_config_options(train_cmd, tr_flags);

  // label
  auto* label_cmd = app.add_subcommand(
      "label", "Label records with a trained model");
  std::string lb_model, lb_gold, lb_out, lb_debug;
  bool lb_ilp = false, lb_c5 = false;
  label_cmd->add_option("--model", lb_model, "Model file")->required();
  label_cmd->add_option("--gold", lb_gold, "Records to label (JSONL)")->required();
  label_cmd->add_option("--out", lb_out, "Output path (default stdout)");
  label_cmd->add_flag("--ilp", lb_ilp, "Decode with the exact ILP solver");
  label_cmd->add_flag("--constraint5", lb_c5,
                      "Restrict core roles for non-verb predicates");
  label_cmd->add_option("--debug-ilp", lb_debug,
                        "Dump each decoding problem and assignment (JSONL)");

  // evaluate
  auto* eval_cmd = app.add_subcommand(
      "evaluate", "Compare predicted records against gold records");
  std::string ev_gold, ev_pred, ev_out;
  eval_cmd->add_option("gold", ev_gold, "Gold records (JSONL)")->required();
  eval_cmd->add_option("predicted", ev_pred, "Predicted records (JSONL)")
      ->required();
  eval_cmd->add_option("--out", ev_out, "Also write a TSV report here");

  // cv
  auto* cv_cmd = app.add_subcommand("cv", "k-fold cross-validation");
  std::string cvc_gold, cvc_out;
  int cvc_k = 10;
  ConfigFlags cvc_flags;
  cv_cmd->add_option("--gold", cvc_gold, "Corpus (JSONL)")->required();
  cv_cmd->add_option("--k", cvc_k, "Number of folds");
  cv_cmd->add_option("--out", cvc_out, "Also write a TSV report here");
  add_config_options(cv_cmd, cvc_flags);

  // curve
  auto* curve_cmd = app.add_subcommand(
      "curve", "Learning curve over training subset sizes");
  std::string cu_gold, cu_sizes, cu_out;
  ConfigFlags cu_flags;
  curve_cmd->add_option("--gold", cu_gold, "Corpus (JSONL)")->required();
  curve_cmd->add_option("--sizes", cu_sizes, "Comma-separated subset sizes")
      ->required();
  curve_cmd->add_option("--out", cu_out, "Output path (default stdout)");
  add_config_options(curve_cmd, cu_flags);

  // project
  auto* project_cmd = app.add_subcommand(
      "project", "2-D principal-component projection of word vectors");
  std::string pj_embeddings, pj_words, pj_words_file, pj_out;
  project_cmd->add_option("--embeddings", pj_embeddings, "Embedding file")
      ->required();
  project_cmd->add_option("--words", pj_words, "Comma-separated word list");
  project_cmd->add_option("--words-file", pj_words_file,
                          "File with one word per line");
  project_cmd->add_option("--out", pj_out, "Output path (default stdout)");

  // synth
  auto* synth_cmd = app.add_subcommand(
      "synth", "Generate the synthetic test corpus");
  int sy_n = 500;
  std::uint64_t sy_seed = 7;
  std::string sy_out;
  synth_cmd->add_option("--n", sy_n, "Number of sentences");
  synth_cmd->add_option("--seed", sy_seed, "Random seed");
  synth_cmd->add_option("--out", sy_out, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse_check->parsed()) return cmd_parse_check(pc_trees);

    if (extract_cmd->parsed()) {
      cmd_extract(ex_gold, ex_alg, ex_tags, ex_out);
    } else if (convert_cmd->parsed()) {
      cmd_convert(cv_gold, cv_rules, cv_tags, cv_out);
    } else if (train_cmd->parsed()) {
      RunConfig cfg = resolve_config(train_cmd, tr_flags);
      SrlModel model = train_pipeline(read_gold_records(tr_gold), cfg,
                                      tags_or_default(tr_tags));
      save_model(model, tr_out);
      std::cerr << "model written to " << tr_out << "\n";
    } else if (label_cmd->parsed()) {
      SrlModel model = load_model(lb_model);
      bool use_ilp = label_cmd->count("--ilp") ? lb_ilp : model.config.use_ilp;
      bool c5 = label_cmd->count("--constraint5") ? lb_c5
                                                  : model.config.constraint5;
      std::unique_ptr<std::ofstream> debug;
      if (!lb_debug.empty()) {
        debug = std::make_unique<std::ofstream>(lb_debug);
        if (!*debug)
          throw std::runtime_error("cannot write debug file: " + lb_debug);
      }
      std::vector<GoldRecord> predicted = label_records(
          model, read_gold_records(lb_gold), use_ilp, c5, debug.get());
      Sink sink(lb_out);
      write_gold_records(sink.stream(), predicted);
    } else if (eval_cmd->parsed()) {
      EvalOutcome outcome =
          evaluate_records(read_gold_records(ev_gold), read_gold_records(ev_pred));
      print_report(std::cout, outcome);
      if (!ev_out.empty()) {
        Sink sink(ev_out);
        write_report_tsv(sink.stream(), outcome);
      }
    } else if (cv_cmd->parsed()) {
      RunConfig cfg = resolve_config(cv_cmd, cvc_flags);
      std::vector<GoldRecord> corpus = read_gold_records(cvc_gold);
      CrossValidationResult result =
          cross_validate(corpus, cfg, cvc_k, cfg.seed);
      char buf[160];
      std::snprintf(buf, sizeof buf, "%-6s %10s %10s %10s", "fold",
                    "precision", "recall", "f1");
      std::cout << buf << "\n";
      for (std::size_t f = 0; f < result.folds.size(); ++f) {
        const PRF& prf = result.folds[f];
        std::snprintf(buf, sizeof buf, "%-6zu %10s %10s %10s", f + 1,
                      pct(prf.precision()).c_str(), pct(prf.recall()).c_str(),
                      pct(prf.f1()).c_str());
        std::cout << buf << "\n";
      }
      std::snprintf(buf, sizeof buf, "%-6s %10s %10s %10s", "mean",
                    pct(result.mean_precision).c_str(),
                    pct(result.mean_recall).c_str(),
                    pct(result.mean_f1).c_str());
      std::cout << buf << "\n";
      if (!cvc_out.empty()) {
        Sink sink(cvc_out);
        sink.stream() << "fold\tprecision\trecall\tf1\n";
        for (std::size_t f = 0; f < result.folds.size(); ++f) {
          const PRF& prf = result.folds[f];
          sink.stream() << (f + 1) << "\t" << frac(prf.precision()) << "\t"
                        << frac(prf.recall()) << "\t" << frac(prf.f1()) << "\n";
        }
        sink.stream() << "mean\t" << frac(result.mean_precision) << "\t"
                      << frac(result.mean_recall) << "\t"
                      << frac(result.mean_f1) << "\n";
      }
    } else if (curve_cmd->parsed()) {
      RunConfig cfg = resolve_config(curve_cmd, cu_flags);
      std::vector<int> sizes;
      std::stringstream ss(cu_sizes);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) sizes.push_back(std::stoi(item));
      std::vector<CurvePoint> points =
          learning_curve(read_gold_records(cu_gold), cfg, sizes, cfg.seed);
      Sink sink(cu_out);
      sink.stream() << "size\tprecision\trecall\tf1\n";
      for (const CurvePoint& p : points)
        sink.stream() << p.size << "\t" << frac(p.prf.precision()) << "\t"
                      << frac(p.prf.recall()) << "\t" << frac(p.prf.f1())
                      << "\n";
    } else if (project_cmd->parsed()) {
      EmbeddingTable table = EmbeddingTable::load(pj_embeddings);
      std::vector<std::string> words;
      if (!pj_words.empty()) {
        std::stringstream ss(pj_words);
        std::string w;
        while (std::getline(ss, w, ','))
          if (!w.empty()) words.push_back(w);
      }
      if (!pj_words_file.empty()) {
        std::ifstream in(pj_words_file);
        if (!in)
          throw std::runtime_error("cannot open words file: " + pj_words_file);
        std::string w;
        while (std::getline(in, w))
          if (!w.empty()) words.push_back(w);
      }
      if (words.empty())
        throw std::runtime_error("project needs --words or --words-file");
      Sink sink(pj_out);
      sink.stream() << "word\tx\ty\n";
      for (const auto& [word, x, y] : project_2d(table, words))
        sink.stream() << word << "\t" << frac(x) << "\t" << frac(y) << "\n";
    } else if (synth_cmd->parsed()) {
      Sink sink(sy_out);
      write_gold_records(sink.stream(), make_synthetic_corpus(sy_n, sy_seed));
    }
  } catch (const std::exception& e) {
    std::cerr << "srl: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
