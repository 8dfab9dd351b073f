#include "srl/learn.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "srl/rng.hpp"

namespace srl {

RoleSet RoleSet::defaults() {
  RoleSet rs;
  rs.labels = {"Arg0",     "Arg1",     "Arg2",     "Arg3",        "Arg4",
               "ArgM-ADJ", "ArgM-ADV", "ArgM-CAU", "ArgM-COM",    "ArgM-DIR",
               "ArgM-DIS", "ArgM-DSP", "ArgM-EXT", "ArgM-GOL",    "ArgM-I",
               "ArgM-LOC", "ArgM-LVB", "ArgM-MNR", "ArgM-MOD",    "ArgM-NEG",
               "ArgM-PRD", "ArgM-PRP", "ArgM-Partice", "ArgM-REC", "ArgM-RES",
               "ArgM-TMP", kNullLabel};
  rs.core = {"Arg0", "Arg1", "Arg2", "Arg3", "Arg4"};
  return rs;
}

RoleSet RoleSet::identification() {
  RoleSet rs;
  rs.labels = {"ARG", kNullLabel};
  return rs;
}

RoleSet RoleSet::without_null() const {
  RoleSet rs;
  rs.core = core;
  for (const std::string& l : labels)
    if (l != kNullLabel) rs.labels.push_back(l);
  return rs;
}

int RoleSet::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  return -1;
}

const char* model_kind_name(ModelKind kind) {
  return kind == ModelKind::MaxEnt ? "maxent" : "svm";
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "maxent" || name == "me") return ModelKind::MaxEnt;
  if (name == "svm") return ModelKind::Svm;
  throw std::runtime_error("unknown classifier kind: " + name);
}

double default_regularization(ModelKind kind) {
  return kind == ModelKind::MaxEnt ? 1.0 : 0.1;
}

namespace {

double dot(const std::vector<double>& w, const FeatureVector& x,
           int dict_size) {
  double s = 0.0;
  for (int idx : x.indices) s += w[idx];
  for (std::size_t j = 0; j < x.dense.size(); ++j)
    s += w[dict_size + j] * x.dense[j];
  return s;
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

void validate(const std::vector<TrainingInstance>& instances,
              const RoleSet& roles, int dict_size, int dense_dim) {
  if (instances.empty()) throw std::invalid_argument("no training instances");
  for (const TrainingInstance& inst : instances) {
    if (roles.index_of(inst.gold) < 0)
      throw std::invalid_argument("gold label '" + inst.gold +
                                  "' not in the role set");
    if (static_cast<int>(inst.vector.dense.size()) != dense_dim)
      throw std::invalid_argument("dense block dimension mismatch");
    for (int idx : inst.vector.indices)
      if (idx < 0 || idx >= dict_size)
        throw std::invalid_argument("feature index out of dictionary range");
  }
}

}  // namespace

LinearModel train(const std::vector<TrainingInstance>& instances,
                  ModelKind kind, const RoleSet& roles,
                  const TrainHyperparams& hyper, int dict_size,
                  int dense_dim) {
  validate(instances, roles, dict_size, dense_dim);
  LinearModel model;
  model.kind = kind;
  model.regularization = hyper.regularization > 0
                             ? hyper.regularization
                             : default_regularization(kind);
  model.roles = roles;
  model.dict_size = dict_size;
  model.dense_dim = dense_dim;
  int n_labels = static_cast<int>(roles.labels.size());
  int dim = dict_size + dense_dim;
  model.weights.assign(n_labels, std::vector<double>(dim, 0.0));
  model.bias.assign(n_labels, 0.0);

  std::size_t n = instances.size();
  double lambda = 1.0 / (model.regularization * static_cast<double>(n));

  std::vector<int> gold_index(n);
  for (std::size_t i = 0; i < n; ++i)
    gold_index[i] = roles.index_of(instances[i].gold);

  // w_c is kept as scale_c * v_c so the per-step L2 shrink stays O(nnz).
  std::vector<std::vector<double>>& v = model.weights;
  std::vector<double> scale(n_labels, 1.0);
  auto materialize = [&](int c) {
    if (scale[c] == 1.0) return;
    for (double& w : v[c]) w *= scale[c];
    scale[c] = 1.0;
  };

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(hyper.seed);

  long t = 0;
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    rng.shuffle(order);
    for (int i : order) {
      const FeatureVector& x = instances[i].vector;
      double eta = hyper.eta0 / (1.0 + lambda * static_cast<double>(t));
      ++t;
      for (int c = 0; c < n_labels; ++c) {
        double y = gold_index[i] == c ? 1.0 : -1.0;
        double wx = scale[c] * dot(v[c], x, dict_size);
        double margin = y * (wx + model.bias[c]);
        double g;  // dloss/d(wx)
        if (kind == ModelKind::MaxEnt) {
          g = -y * sigmoid(-margin);
        } else {
          g = margin < 1.0 ? -y : 0.0;
        }
        scale[c] *= (1.0 - eta * lambda);
        if (scale[c] < 1e-9) materialize(c);
        if (g != 0.0) {
          double step = eta * g / scale[c];
          for (int idx : x.indices) v[c][idx] -= step;
          for (std::size_t j = 0; j < x.dense.size(); ++j)
            v[c][dict_size + j] -= step * x.dense[j];
          model.bias[c] -= eta * g;
        }
      }
    }
    for (int c = 0; c < n_labels; ++c) materialize(c);
    model.objective_history.push_back(ovr_objective(model, instances));
  }
  return model;
}

std::vector<double> score(const LinearModel& model, const FeatureVector& x) {
  std::vector<double> out(model.roles.labels.size());
  for (std::size_t c = 0; c < out.size(); ++c)
    out[c] = dot(model.weights[c], x, model.dict_size) + model.bias[c];
  return out;
}

std::string predict_1step(const LinearModel& model, const FeatureVector& x) {
  std::vector<double> s = score(model, x);
  std::size_t best = 0;
  for (std::size_t c = 1; c < s.size(); ++c)
    if (s[c] > s[best]) best = c;
  return model.roles.labels[best];
}

std::string predict_2step(const LinearModel& id_model,
                          const LinearModel& cls_model,
                          const FeatureVector& x) {
  if (predict_1step(id_model, x) == kNullLabel) return kNullLabel;
  return predict_1step(cls_model, x);
}

double ovr_objective(const LinearModel& model,
                     const std::vector<TrainingInstance>& instances) {
  std::size_t n = instances.size();
  double lambda =
      1.0 / (model.regularization * static_cast<double>(n ? n : 1));
  double obj = 0.0;
  for (std::size_t c = 0; c < model.roles.labels.size(); ++c) {
    double norm2 = 0.0;
    for (double w : model.weights[c]) norm2 += w * w;
    obj += 0.5 * lambda * norm2;
    double loss = 0.0;
    for (const TrainingInstance& inst : instances) {
      double y = inst.gold == model.roles.labels[c] ? 1.0 : -1.0;
      double m =
          y * (dot(model.weights[c], inst.vector, model.dict_size) +
               model.bias[static_cast<int>(c)]);
      if (model.kind == ModelKind::MaxEnt) {
        // log(1 + exp(-m)) computed stably
        loss += m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
      } else {
        loss += std::max(0.0, 1.0 - m);
      }
    }
    obj += loss / static_cast<double>(n);
  }
  return obj;
}

void ovr_gradient(const LinearModel& model,
                  const std::vector<TrainingInstance>& instances,
                  std::vector<std::vector<double>>& grad_w,
                  std::vector<double>& grad_b) {
  std::size_t n = instances.size();
  double lambda =
      1.0 / (model.regularization * static_cast<double>(n ? n : 1));
  std::size_t n_labels = model.roles.labels.size();
  int dim = model.dim();
  grad_w.assign(n_labels, std::vector<double>(dim, 0.0));
  grad_b.assign(n_labels, 0.0);
  for (std::size_t c = 0; c < n_labels; ++c) {
    for (int j = 0; j < dim; ++j)
      grad_w[c][j] = lambda * model.weights[c][j];
    for (const TrainingInstance& inst : instances) {
      double y = inst.gold == model.roles.labels[c] ? 1.0 : -1.0;
      double m =
          y * (dot(model.weights[c], inst.vector, model.dict_size) +
               model.bias[c]);
      double g;  // dloss/d(wx), averaged below
      if (model.kind == ModelKind::MaxEnt) {
        g = -y * sigmoid(-m);
      } else {
        g = m < 1.0 ? -y : 0.0;
      }
      g /= static_cast<double>(n);
      for (int idx : inst.vector.indices) grad_w[c][idx] += g;
      for (std::size_t j = 0; j < inst.vector.dense.size(); ++j)
        grad_w[c][model.dict_size + j] += g * inst.vector.dense[j];
      grad_b[c] += g;
    }
  }
}

}  // namespace srl
