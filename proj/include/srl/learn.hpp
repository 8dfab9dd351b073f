#ifndef SRL_LEARN_HPP
#define SRL_LEARN_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "srl/features.hpp"

namespace srl {

inline constexpr const char* kNullLabel = "NULL";

// Ordered role inventory. Label order is the tie-breaking order everywhere
// (prediction argmax, ILP decoding).
struct RoleSet {
  std::vector<std::string> labels;
  std::set<std::string> core;  // numbered roles with the uniqueness constraint

  static RoleSet defaults();
  // Binary inventory for the identification step of the 2-step strategy.
  static RoleSet identification();
  // This set minus NULL, for the classification step.
  RoleSet without_null() const;

  int index_of(const std::string& label) const;
  int null_index() const { return index_of(kNullLabel); }
  bool is_core(const std::string& label) const { return core.count(label) > 0; }
};

enum class ModelKind { MaxEnt, Svm };
const char* model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

struct TrainingInstance {
  FeatureVector vector;
  std::string gold;
};

struct TrainHyperparams {
  // Inverse regularization strength in the usual C convention; negative
  // means "use the model kind's default" (1.0 for maxent, 0.1 for svm).
  double regularization = -1.0;
  int epochs = 50;
  double eta0 = 0.1;
  std::uint64_t seed = 0;
};

double default_regularization(ModelKind kind);

// One-vs-rest linear classifier over the categorical dictionary plus any
// dense embedding dimensions.
struct LinearModel {
  ModelKind kind = ModelKind::Svm;
  double regularization = 1.0;
  RoleSet roles;
  int dict_size = 0;
  int dense_dim = 0;
  std::vector<std::vector<double>> weights;  // |labels| x (dict + dense)
  std::vector<double> bias;                  // |labels|
  std::vector<double> objective_history;     // per-epoch training objective

  int dim() const { return dict_size + dense_dim; }
};

// Epoch-based stochastic subgradient descent with seeded shuffling and
// learning rate eta0 / (1 + lambda * t). Deterministic: the same data, seed
// and hyperparameters give a bitwise identical model.
LinearModel train(const std::vector<TrainingInstance>& instances,
                  ModelKind kind, const RoleSet& roles,
                  const TrainHyperparams& hyper, int dict_size, int dense_dim);

// Raw decision values w_c . x + b_c for every label.
std::vector<double> score(const LinearModel& model, const FeatureVector& x);

// Argmax over all labels including NULL; ties go to the earlier label.
std::string predict_1step(const LinearModel& model, const FeatureVector& x);
// Identification first (argument vs NULL), then classification.
std::string predict_2step(const LinearModel& id_model,
                          const LinearModel& cls_model, const FeatureVector& x);

// Full-batch objective and analytic gradient of the regularized one-vs-rest
// loss, for monitoring and the finite-difference checks.
double ovr_objective(const LinearModel& model,
                     const std::vector<TrainingInstance>& instances);
void ovr_gradient(const LinearModel& model,
                  const std::vector<TrainingInstance>& instances,
                  std::vector<std::vector<double>>& grad_w,
                  std::vector<double>& grad_b);

}  // namespace srl

#endif  // SRL_LEARN_HPP
