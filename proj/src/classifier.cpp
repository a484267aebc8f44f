#include "motifconv/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace motifconv {

std::vector<int> canonical_labels(const std::vector<int>& raw,
                                  std::vector<int>& class_ids) {
  if (raw.empty()) throw std::invalid_argument("canonical_labels: no labels");
  std::map<int, int> to_class;
  for (int label : raw) to_class.emplace(label, 0);
  class_ids.clear();
  for (auto& [label, cls] : to_class) {
    cls = static_cast<int>(class_ids.size());
    class_ids.push_back(label);
  }
  std::vector<int> canonical;
  canonical.reserve(raw.size());
  for (int label : raw) canonical.push_back(to_class.at(label));
  return canonical;
}

namespace {

void check_inputs(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                  int n_classes, int n_features) {
  if (x.empty()) throw std::invalid_argument("logistic regression: empty input");
  if (x.size() != y.size())
    throw std::invalid_argument("logistic regression: feature/label count mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(n_classes), false);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (static_cast<int>(x[i].size()) != n_features)
      throw std::invalid_argument("logistic regression: example " + std::to_string(i) +
                                  " has wrong dimension");
    for (double v : x[i])
      if (!std::isfinite(v))
        throw std::invalid_argument("logistic regression: non-finite feature in example " +
                                    std::to_string(i));
    if (y[i] < 0 || y[i] >= n_classes)
      throw std::invalid_argument("logistic regression: label " + std::to_string(y[i]) +
                                  " outside 0.." + std::to_string(n_classes - 1));
    seen[static_cast<std::size_t>(y[i])] = true;
  }
  for (int c = 0; c < n_classes; ++c)
    if (!seen[static_cast<std::size_t>(c)])
      throw std::invalid_argument("logistic regression: class " + std::to_string(c) +
                                  " has no examples");
}

// softmax of W x + b for one example, written into probs
void softmax_scores(const std::vector<double>& w, int n_classes, int n_features,
                    const std::vector<double>& x, std::vector<double>& probs) {
  const int stride = n_features + 1;
  probs.assign(static_cast<std::size_t>(n_classes), 0.0);
  double max_score = -1e300;
  for (int c = 0; c < n_classes; ++c) {
    double s = w[static_cast<std::size_t>(c) * stride + n_features];  // bias
    for (int j = 0; j < n_features; ++j)
      s += w[static_cast<std::size_t>(c) * stride + j] * x[static_cast<std::size_t>(j)];
    probs[static_cast<std::size_t>(c)] = s;
    max_score = std::max(max_score, s);
  }
  double total = 0.0;
  for (double& p : probs) {
    p = std::exp(p - max_score);
    total += p;
  }
  for (double& p : probs) p /= total;
}

}  // namespace

double logreg_loss(const std::vector<double>& w, int n_classes, int n_features,
                   const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                   double l2) {
  check_inputs(x, y, n_classes, n_features);
  std::vector<double> probs;
  double loss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    softmax_scores(w, n_classes, n_features, x[i], probs);
    loss -= std::log(std::max(probs[static_cast<std::size_t>(y[i])], 1e-300));
  }
  loss /= static_cast<double>(x.size());
  double reg = 0.0;
  for (double v : w) reg += v * v;
  return loss + l2 * reg;
}

std::vector<double> logreg_gradient(const std::vector<double>& w, int n_classes,
                                    int n_features,
                                    const std::vector<std::vector<double>>& x,
                                    const std::vector<int>& y, double l2) {
  check_inputs(x, y, n_classes, n_features);
  const int stride = n_features + 1;
  std::vector<double> grad(w.size(), 0.0);
  std::vector<double> probs;
  for (std::size_t i = 0; i < x.size(); ++i) {
    softmax_scores(w, n_classes, n_features, x[i], probs);
    for (int c = 0; c < n_classes; ++c) {
      const double delta =
          probs[static_cast<std::size_t>(c)] - (y[i] == c ? 1.0 : 0.0);
      for (int j = 0; j < n_features; ++j)
        grad[static_cast<std::size_t>(c) * stride + j] +=
            delta * x[i][static_cast<std::size_t>(j)];
      grad[static_cast<std::size_t>(c) * stride + n_features] += delta;
    }
  }
  const double inv = 1.0 / static_cast<double>(x.size());
  for (std::size_t k = 0; k < grad.size(); ++k) grad[k] = grad[k] * inv + 2.0 * l2 * w[k];
  return grad;
}

LogisticModel train_logreg(const std::vector<std::vector<double>>& x,
                           const std::vector<int>& y, const LogregHyper& hyper,
                           std::vector<double>* loss_history) {
  if (x.empty()) throw std::invalid_argument("train_logreg: empty training set");
  if (hyper.epochs < 0 || !(hyper.lr > 0.0) || hyper.l2 < 0.0)
    throw std::invalid_argument("train_logreg: need lr > 0, epochs >= 0, l2 >= 0");
  int n_classes = 0;
  for (int label : y) n_classes = std::max(n_classes, label + 1);
  if (n_classes < 2) throw std::invalid_argument("train_logreg: need at least 2 classes");
  const int n_features = static_cast<int>(x.front().size());
  check_inputs(x, y, n_classes, n_features);

  LogisticModel model;
  model.n_classes = n_classes;
  model.n_features = n_features;
  model.w.assign(static_cast<std::size_t>(n_classes) * (n_features + 1), 0.0);
  model.class_ids.resize(static_cast<std::size_t>(n_classes));
  for (int c = 0; c < n_classes; ++c) model.class_ids[static_cast<std::size_t>(c)] = c;

  if (loss_history) loss_history->clear();
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    if (loss_history)
      loss_history->push_back(
          logreg_loss(model.w, n_classes, n_features, x, y, hyper.l2));
    const std::vector<double> grad =
        logreg_gradient(model.w, n_classes, n_features, x, y, hyper.l2);
    for (std::size_t k = 0; k < model.w.size(); ++k) model.w[k] -= hyper.lr * grad[k];
  }
  if (loss_history)
    loss_history->push_back(logreg_loss(model.w, n_classes, n_features, x, y, hyper.l2));
  return model;
}

std::vector<double> predict_proba(const LogisticModel& model,
                                  const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != model.n_features)
    throw std::invalid_argument("predict_proba: expected " +
                                std::to_string(model.n_features) + " features, got " +
                                std::to_string(x.size()));
  std::vector<double> probs;
  softmax_scores(model.w, model.n_classes, model.n_features, x, probs);
  return probs;
}

int predict(const LogisticModel& model, const std::vector<double>& x) {
  const std::vector<double> probs = predict_proba(model, x);
  int best = 0;
  for (int c = 1; c < model.n_classes; ++c)
    if (probs[static_cast<std::size_t>(c)] > probs[static_cast<std::size_t>(best)])
      best = c;
  return best;
}

double evaluate(const LogisticModel& model, const std::vector<std::vector<double>>& x,
                const std::vector<int>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("evaluate: feature/label count mismatch");
  if (x.empty()) throw std::invalid_argument("evaluate: empty evaluation set");
  int correct = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (predict(model, x[i]) == y[i]) ++correct;
  return static_cast<double>(correct) / static_cast<double>(x.size());
}

}  // namespace motifconv
