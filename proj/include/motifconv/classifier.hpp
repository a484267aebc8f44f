#pragma once

#include <vector>

namespace motifconv {

// Multinomial logistic regression. Weights are stored row-major as a
// C x (F+1) matrix; the last column of each row is the class bias.
struct LogisticModel {
  int n_classes = 0;
  int n_features = 0;
  std::vector<double> w;
  std::vector<int> class_ids;  // canonical class -> original label

  double weight(int c, int j) const {
    return w[static_cast<std::size_t>(c) * (n_features + 1) + j];
  }
};

struct LogregHyper {
  double lr = 0.1;
  int epochs = 500;
  double l2 = 1e-4;
};

// Maps arbitrary integer labels onto 0..C-1 (ascending label order) and
// returns the original labels per class.
std::vector<int> canonical_labels(const std::vector<int>& raw,
                                  std::vector<int>& class_ids);

// Mean softmax cross-entropy plus l2 * ||W||^2 (bias included), and its
// gradient; both operate on a flat C x (F+1) weight vector. Exposed so tests
// can check the analytic gradient against finite differences.
double logreg_loss(const std::vector<double>& w, int n_classes, int n_features,
                   const std::vector<std::vector<double>>& x,
                   const std::vector<int>& y, double l2);
std::vector<double> logreg_gradient(const std::vector<double>& w, int n_classes,
                                    int n_features,
                                    const std::vector<std::vector<double>>& x,
                                    const std::vector<int>& y, double l2);

// Full-batch gradient descent from zero-initialized weights; deterministic.
// Labels must be canonical (0..C-1, every class present). When loss_history
// is non-null it receives the loss before each update plus the final loss.
LogisticModel train_logreg(const std::vector<std::vector<double>>& x,
                           const std::vector<int>& y, const LogregHyper& hyper = {},
                           std::vector<double>* loss_history = nullptr);

// Softmax probabilities over affine scores; sums to 1 within 1e-12.
std::vector<double> predict_proba(const LogisticModel& model,
                                  const std::vector<double>& x);

// Argmax class (canonical index); ties go to the lowest class.
int predict(const LogisticModel& model, const std::vector<double>& x);

// Fraction of correct predictions against canonical labels.
double evaluate(const LogisticModel& model, const std::vector<std::vector<double>>& x,
                const std::vector<int>& y);

}  // namespace motifconv
