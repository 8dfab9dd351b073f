#ifndef SRL_EVALUATE_HPP
#define SRL_EVALUATE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "srl/convert.hpp"

namespace srl {

struct GoldRecord;
struct RunConfig;

// Exact labelled-argument counts. Zero denominators score 0 by convention;
// the raw counts are carried so reports stay unambiguous.
struct PRF {
  long tp = 0;
  long fp = 0;
  long fn = 0;

  double precision() const { return tp + fp == 0 ? 0.0 : double(tp) / double(tp + fp); }
  double recall() const { return tp + fn == 0 ? 0.0 : double(tp) / double(tp + fn); }
  double f1() const;

  PRF& operator+=(const PRF& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
};

// Harmonic mean 2PR/(P+R), 0 when P+R == 0.
double f1_score(double precision, double recall);

// Exact (span, role) matching over one prediction/gold pair. NULL and REL
// entries are ignored on both sides.
PRF score_labels(const std::vector<RoleSpan>& predicted,
                 const std::vector<RoleSpan>& gold);

struct PerRoleReport {
  std::map<std::string, PRF> by_role;  // roles absent from both sides omitted
  PRF total;                           // micro average
};

PerRoleReport per_role_report(const std::vector<RoleSpan>& predicted,
                              const std::vector<RoleSpan>& gold);

// Deterministic k-fold partition: sizes differ by at most one, the same
// seed always gives the same assignment.
struct FoldPlan {
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<int> assignment;  // sentence index -> fold

  static FoldPlan make(int corpus_size, int k, std::uint64_t seed);
};

struct CrossValidationResult {
  std::vector<PRF> folds;
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  double mean_f1 = 0.0;
};

// Trains and evaluates one pipeline per fold; scores are averaged over the
// folds (P, R and F1 separately).
CrossValidationResult cross_validate(const std::vector<GoldRecord>& corpus,
                                     const RunConfig& config, int k,
                                     std::uint64_t seed);

struct CurvePoint {
  int size = 0;
  PRF prf;
};

// Trains on random subsets of the training split of the given sizes and
// evaluates each on a fixed held-out split.
std::vector<CurvePoint> learning_curve(const std::vector<GoldRecord>& corpus,
                                       const RunConfig& config,
                                       const std::vector<int>& sizes,
                                       std::uint64_t seed);

}  // namespace srl

#endif  // SRL_EVALUATE_HPP
