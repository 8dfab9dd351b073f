// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. CLI-level criteria locate the binary through the SRL_CLI
// environment variable (set by ctest) or common build locations.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <sys/stat.h>
#include <vector>

#include "srl/evaluate.hpp"
#include "srl/pipeline.hpp"
#include "srl/rng.hpp"
#include "srl/synth.hpp"
#include "testutil.hpp"

using namespace srl;
namespace tu = srl::testutil;

namespace {

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s: %s (%s)\n", ok ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string find_cli() {
  if (const char* env = std::getenv("SRL_CLI"); env && *env) return env;
  for (const char* probe :
       {"build/tools/srl", "./tools/srl", "../tools/srl", "tools/srl"}) {
    struct stat st;
    if (::stat(probe, &st) == 0 && (st.st_mode & S_IXUSR)) return probe;
  }
  return "";
}

std::string run_command(const std::string& command, int* exit_code) {
  std::string output;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) {
    *exit_code = -1;
    return output;
  }
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
    output.append(buf.data(), n);
  *exit_code = ::pclose(pipe);
  return output;
}

std::string percent(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * x);
  return buf;
}

// ---------------------------------------------------------------------------

void golden_extraction(const std::string& cli) {
  auto t0 = std::chrono::steady_clock::now();
  std::string gold_path = "/tmp/srl_acceptance_worked.jsonl";
  {
    GoldRecord record;
    record.id = "worked";
    record.tree_text = tu::kWorkedTree;
    GoldPredicate pred;
    pred.leaf = tu::kWorkedPredicateLeaf;
    record.predicates.push_back(pred);
    std::ofstream out(gold_path);
    write_gold_records(out, {record});
  }
  int code = 0;
  std::string output = run_command(
      cli + " extract --gold " + gold_path + " --alg algorithm1", &code);
  std::multiset<std::string> texts;
  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    std::size_t tab = line.rfind('\t');
    if (tab != std::string::npos) texts.insert(line.substr(tab + 1));
  }
  double elapsed = seconds_since(t0);
  bool ok = code == 0 &&
            texts == std::multiset<std::string>{"Bà", "nói", "nó",
                                                "con trai tôi mà"} &&
            elapsed < 1.0;
  std::string got;
  for (const std::string& t : texts) got += "{" + t + "} ";
  char detail[256];
  std::snprintf(detail, sizeof detail, "constituents %s in %.3fs", got.c_str(),
                elapsed);
  report("golden extraction", ok, detail);
}

void golden_features() {
  BracketedTree tree = BracketedTree::parse(tu::kWorkedTree);
  const TreebankConfig& cfg = TreebankConfig::defaults();
  int pred = predicate_node(tree, tu::kWorkedPredicateLeaf);
  int no_node = tree.node(tree.leaf_node(2)).parent;
  int np_node = tree.node(tree.leaf_node(4)).parent;

  bool ok = true;
  std::string why;
  auto expect = [&](const std::string& name, const std::string& got,
                    const std::string& want) {
    if (got != want) {
      ok = false;
      why += name + "='" + got + "' want '" + want + "'; ";
    }
  };
  expect("phrase_type", feature_phrase_type(tree, no_node), "NP");
  expect("path", feature_path(tree, no_node, pred), "NP↑S↓VP↓V");
  expect("position", std::to_string(feature_position(tree, no_node, pred)),
         "0");
  expect("voice", std::to_string(feature_voice(tree, pred, cfg)), "1");
  expect("function_tag", feature_function_tag(tree, no_node), "SUB");
  expect("distance", std::to_string(feature_distance(tree, no_node, pred)),
         "3");
  expect("head_word", feature_head_word(tree, np_node), "con_trai");
  std::string human = feature_head_word(tree, np_node);
  for (char& c : human)
    if (c == '_') c = ' ';
  expect("head_word (report form)", human, "con trai");
  expect("subcategorization", feature_subcategorization(tree, pred),
         "VP(V, NP)");
  expect("predicate_type", feature_predicate_type(tree, pred), "V");
  report("golden features", ok, ok ? "all nine template values exact" : why);
}

RoleSet role_prefix(int n_roles) {
  RoleSet all = RoleSet::defaults().without_null();
  RoleSet rs;
  rs.labels.assign(all.labels.begin(), all.labels.begin() + (n_roles - 1));
  rs.labels.push_back(kNullLabel);
  for (const std::string& l : rs.labels)
    if (all.core.count(l)) rs.core.insert(l);
  return rs;
}

IlpProblem random_problem(Rng& rng, int max_m, int max_roles,
                          bool bounded_for_brute_force) {
  int m = static_cast<int>(rng.below(max_m + 1));
  int hi = max_roles;
  if (bounded_for_brute_force) {
    // Keep |roles|^M small enough that exhaustive enumeration stays fast.
    double cap = 3e5;
    hi = 2;
    while (hi < max_roles && std::pow(hi + 1, m) <= cap) ++hi;
  }
  int n_roles = 2 + static_cast<int>(rng.below(hi - 1));
  IlpProblem p;
  p.roles = role_prefix(n_roles);
  p.predicate_is_verb = rng.chance(0.5);
  for (int i = 0; i < m; ++i) {
    std::vector<double> row(n_roles);
    for (double& s : row) s = rng.uniform(-1, 1);
    p.scores.push_back(std::move(row));
    int begin = static_cast<int>(rng.below(12));
    p.spans.emplace_back(begin, begin + 1 + static_cast<int>(rng.below(4)));
  }
  p.overlap_pairs = overlaps_from_spans(p.spans);
  return p;
}

void ilp_oracle() {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(0xACCE97);
  const int trials = 1200;
  int mismatches = 0;
  double max_diff = 0.0;
  for (int t = 0; t < trials; ++t) {
    IlpProblem p = random_problem(rng, 8, 28, true);
    Assignment fast = solve(p);
    Assignment slow = brute_force(p);
    max_diff = std::max(max_diff, std::abs(fast.objective - slow.objective));
    if (std::abs(fast.objective - slow.objective) > 1e-9 ||
        fast.labels != slow.labels)
      ++mismatches;
  }
  double elapsed = seconds_since(t0);
  bool ok = mismatches == 0 && elapsed < 30.0;
  char detail[256];
  std::snprintf(detail, sizeof detail,
                "%d instances, %d mismatches, max objective diff %.2e, %.1fs",
                trials, mismatches, max_diff, elapsed);
  report("ILP oracle", ok, detail);
}

void constraint_suite() {
  Rng rng(0xC0457);
  const int solver_decodes = 10000;
  int violations = 0;
  for (int t = 0; t < solver_decodes; ++t) {
    IlpProblem p = random_problem(rng, 10, 28, false);
    Assignment a = solve(p);
    if (static_cast<int>(a.labels.size()) != p.num_candidates()) {
      ++violations;
      continue;
    }
    // Constraint 1: exactly one label per candidate (well-formed indices).
    for (int c : a.labels)
      if (c < 0 || c >= static_cast<int>(p.roles.labels.size())) ++violations;
    int null_idx = p.roles.null_index();
    // Constraint 3: no two overlapping non-NULL arguments.
    for (auto [i, j] : p.overlap_pairs)
      if (a.labels[i] != null_idx && a.labels[j] != null_idx) ++violations;
    // Constraint 4: core roles are unique.
    std::set<int> cores;
    for (int c : a.labels)
      if (c != null_idx && p.roles.is_core(p.roles.labels[c]) &&
          !cores.insert(c).second)
        ++violations;
    // Constraint 5 for non-verb predicates.
    if (!p.predicate_is_verb)
      for (int c : a.labels) {
        const std::string& label = p.roles.labels[c];
        if (label == "Arg2" || label == "Arg3" || label == "Arg4")
          ++violations;
      }
    if (!is_feasible(p, a.labels)) ++violations;
  }

  // The same audits over full sentence decodes with a weakly trained model,
  // which mislabels freely and so leans on the constraints.
  std::vector<GoldRecord> corpus = make_synthetic_corpus(800, 99);
  RunConfig weak;
  weak.epochs = 2;
  weak.seed = 1;
  SrlModel model = train_pipeline(corpus, weak);
  int sentence_decodes = 0;
  for (const GoldRecord& record : corpus) {
    BracketedTree tree = BracketedTree::parse(record.tree_text);
    for (const GoldPredicate& pred : record.predicates) {
      int pred_node = predicate_node(tree, pred.leaf);
      auto decoded = decode_sentence(tree, pred_node, model, true, true);
      ++sentence_decodes;
      bool non_verb = feature_predicate_type(tree, pred_node) != "V";
      std::set<std::string> cores;
      for (std::size_t i = 0; i < decoded.size(); ++i) {
        const auto& [cand, role] = decoded[i];
        if (role == kNullLabel) continue;
        if (model.roles.is_core(role) && !cores.insert(role).second)
          ++violations;
        if (non_verb && (role == "Arg2" || role == "Arg3" || role == "Arg4"))
          ++violations;
        for (std::size_t j = i + 1; j < decoded.size(); ++j) {
          const auto& [other, other_role] = decoded[j];
          if (other_role == kNullLabel) continue;
          if (cand.span_begin < other.span_end &&
              other.span_begin < cand.span_end)
            ++violations;
        }
      }
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%d randomized + %d sentence decodes, %d violations",
                solver_decodes, sentence_decodes, violations);
  report("constraint suite", violations == 0, detail);
}

void f1_arithmetic() {
  // Counts chosen so precision is exactly 77.53% and recall is 71.46% to
  // the table's printed precision.
  std::vector<RoleSpan> gold, predicted;
  const int tp = 7753, fp = 2247, fn = 3096;
  for (int i = 0; i < tp; ++i) {
    gold.push_back({i, i + 1, "Arg0"});
    predicted.push_back({i, i + 1, "Arg0"});
  }
  for (int i = 0; i < fp; ++i)
    predicted.push_back({tp + i, tp + i + 1, "Arg1"});
  for (int i = 0; i < fn; ++i)
    gold.push_back({tp + fp + i, tp + fp + i + 1, "Arg2"});
  PRF prf = score_labels(predicted, gold);
  double diff_pp = std::abs(prf.f1() - 0.7437) * 100.0;
  bool ok = std::abs(prf.precision() - 0.7753) < 1e-9 &&
            std::abs(prf.recall() - 0.7146) * 100.0 < 0.01 && diff_pp < 0.01;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "P=%s R=%s F1=%s, |F1-74.37| = %.4f points",
                percent(prf.precision()).c_str(), percent(prf.recall()).c_str(),
                percent(prf.f1()).c_str(), diff_pp);
  report("F1 arithmetic", ok, detail);
}

void gradient_check() {
  Rng rng(0x96AD);
  RoleSet roles;
  roles.labels = {"A", "B", "C"};
  int problems = 0, bad = 0;
  double worst = 0.0;
  while (problems < 100) {
    int dict = 2 + static_cast<int>(rng.below(4));
    int dense = static_cast<int>(rng.below(3));
    int n = 4 + static_cast<int>(rng.below(8));
    std::vector<TrainingInstance> data;
    for (int i = 0; i < n; ++i) {
      TrainingInstance inst;
      for (int j = 0; j < dict; ++j)
        if (rng.chance(0.5)) inst.vector.indices.push_back(j);
      for (int j = 0; j < dense; ++j)
        inst.vector.dense.push_back(rng.uniform(-1, 1));
      inst.gold = roles.labels[rng.below(3)];
      data.push_back(std::move(inst));
    }
    LinearModel model;
    model.kind = ModelKind::MaxEnt;
    model.regularization = 1.0;
    model.roles = roles;
    model.dict_size = dict;
    model.dense_dim = dense;
    model.weights.assign(3, std::vector<double>(dict + dense));
    model.bias.assign(3, 0.0);
    for (auto& row : model.weights)
      for (double& w : row) w = rng.uniform(-1, 1);
    for (double& b : model.bias) b = rng.uniform(-1, 1);

    std::vector<std::vector<double>> grad_w;
    std::vector<double> grad_b;
    ovr_gradient(model, data, grad_w, grad_b);
    const double eps = 1e-6;
    bool problem_ok = true;
    for (std::size_t c = 0; c < roles.labels.size(); ++c) {
      for (int j = 0; j < model.dim(); ++j) {
        LinearModel plus = model, minus = model;
        plus.weights[c][j] += eps;
        minus.weights[c][j] -= eps;
        double fd = (ovr_objective(plus, data) - ovr_objective(minus, data)) /
                    (2 * eps);
        double rel = std::abs(grad_w[c][j] - fd) /
                     std::max({std::abs(grad_w[c][j]), std::abs(fd), 1e-6});
        worst = std::max(worst, rel);
        if (rel >= 1e-5) problem_ok = false;
      }
      LinearModel plus = model, minus = model;
      plus.bias[c] += eps;
      minus.bias[c] -= eps;
      double fd = (ovr_objective(plus, data) - ovr_objective(minus, data)) /
                  (2 * eps);
      double rel = std::abs(grad_b[c] - fd) /
                   std::max({std::abs(grad_b[c]), std::abs(fd), 1e-6});
      worst = std::max(worst, rel);
      if (rel >= 1e-5) problem_ok = false;
    }
    if (!problem_ok) ++bad;
    ++problems;
  }
  char detail[128];
  std::snprintf(detail, sizeof detail,
                "100 problems, %d over tolerance, worst relative error %.2e",
                bad, worst);
  report("gradient check", bad == 0, detail);
}

double learnability(std::vector<GoldRecord>& corpus_out) {
  corpus_out = make_synthetic_corpus(500, 7);
  RunConfig cfg;  // Φ11, svm, algorithm1, 1step — the documented defaults
  cfg.seed = 42;
  CrossValidationResult cv = cross_validate(corpus_out, cfg, 10, 42);
  return cv.mean_f1;
}

void end_to_end_learnability(double* f1_out,
                             std::vector<GoldRecord>* corpus_out) {
  auto t0 = std::chrono::steady_clock::now();
  double f1 = learnability(*corpus_out);
  double elapsed = seconds_since(t0);
  *f1_out = f1;
  bool ok = f1 >= 0.95 && elapsed < 60.0;
  char detail[160];
  std::snprintf(
      detail, sizeof detail,
      "500 sentences, 10-fold CV, feature set Φ11, SVM: mean F1 %s in %.1fs",
      percent(f1).c_str(), elapsed);
  report("end-to-end learnability", ok, detail);
}

void embedding_substitution(double baseline_f1,
                            const std::vector<GoldRecord>& corpus) {
  // Exact arithmetic at the feature-vector level.
  EmbeddingTable table(4);
  table.insert("xây", {1.0, 2.0, 3.0, 4.0});
  table.insert("học", {2.0, 0.0, 0.0, 0.0});
  table.insert("bài", {4.0, 0.0, 0.0, 0.0});
  FeatureBundle bundle;
  bundle.values[Template::PredicateWord] = "xây";
  bundle.values[Template::PhraseType] = "NP";
  FeatureBundle sub = substitute_embedding(bundle, Template::PredicateWord, table);
  bool exact = sub.values.count(Template::PredicateWord) == 0 &&
               sub.dense.size() == 1 &&
               sub.dense[0].values == std::vector<double>{1.0, 2.0, 3.0, 4.0};
  FeatureBundle multi;
  multi.values[Template::PredicateWord] = "học_bài";
  FeatureBundle sub2 =
      substitute_embedding(multi, Template::PredicateWord, table);
  exact = exact && sub2.dense[0].values == std::vector<double>{3.0, 0.0, 0.0, 0.0};

  // End-to-end: a synthetic 50-d table over the corpus vocabulary.
  std::string table_path = "/tmp/srl_acceptance_vectors.txt";
  {
    std::set<std::string> words;
    for (const GoldRecord& r : corpus) {
      BracketedTree tree = BracketedTree::parse(r.tree_text);
      for (auto& [token, pos] : tree.leaf_tokens()) words.insert(token);
    }
    std::ofstream out(table_path);
    Rng rng(0xE3BED);
    for (const std::string& w : words) {
      out << w;
      for (int i = 0; i < 50; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, " %.6f", rng.uniform(-1, 1));
        out << buf;
      }
      out << "\n";
    }
  }
  RunConfig cfg;
  cfg.seed = 42;
  cfg.embed_predicate = table_path;
  CrossValidationResult cv = cross_validate(corpus, cfg, 10, 42);
  double drop_points = (baseline_f1 - cv.mean_f1) * 100.0;
  bool ok = exact && drop_points < 5.0;
  char detail[192];
  std::snprintf(detail, sizeof detail,
                "dense block exact: %s; substituted-F1 %s vs baseline %s "
                "(drop %.2f points)",
                exact ? "yes" : "no", percent(cv.mean_f1).c_str(),
                percent(baseline_f1).c_str(), drop_points);
  report("embedding substitution", ok, detail);
}

void determinism(const std::string& cli,
                 const std::vector<GoldRecord>& corpus) {
  std::string corpus_path = "/tmp/srl_acceptance_corpus.jsonl";
  {
    std::ofstream out(corpus_path);
    write_gold_records(out, corpus);
  }
  int code1 = 0, code2 = 0;
  std::string cmd = cli + " cv --gold " + corpus_path +
                    " --k 10 --seed 42 --out /tmp/srl_acceptance_cv_A.tsv";
  std::string out1 = run_command(cmd, &code1);
  std::string cmd2 = cli + " cv --gold " + corpus_path +
                     " --k 10 --seed 42 --out /tmp/srl_acceptance_cv_B.tsv";
  std::string out2 = run_command(cmd2, &code2);
  auto slurp = [](const char* path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  bool ok = code1 == 0 && code2 == 0 && out1 == out2 && !out1.empty() &&
            slurp("/tmp/srl_acceptance_cv_A.tsv") ==
                slurp("/tmp/srl_acceptance_cv_B.tsv");
  report("determinism", ok,
         ok ? "two cv --seed 42 runs byte-identical (stdout and TSV)"
            : "outputs differ or command failed");
}

}  // namespace

int main() {
  std::string cli = find_cli();
  if (cli.empty()) {
    std::fprintf(stderr,
                 "srl_acceptance: cannot locate the srl binary (set SRL_CLI)\n");
    return 2;
  }

  golden_extraction(cli);
  golden_features();
  ilp_oracle();
  constraint_suite();
  f1_arithmetic();
  gradient_check();

  double baseline_f1 = 0.0;
  std::vector<GoldRecord> corpus;
  end_to_end_learnability(&baseline_f1, &corpus);
  embedding_substitution(baseline_f1, corpus);
  determinism(cli, corpus);

  if (g_failures)
    std::printf("%d criterion(s) failed\n", g_failures);
  else
    std::printf("all criteria passed\n");
  return g_failures == 0 ? 0 : 1;
}
