#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "motifconv/classifier.hpp"
#include "motifconv/rng.hpp"

using namespace motifconv;

namespace {

// three-class blobs centered at (-2,0), (2,0), (0,3)
void blobs(std::mt19937_64& rng, int per_class, std::vector<std::vector<double>>& x,
           std::vector<int>& y) {
  const double cx[3] = {-2.0, 2.0, 0.0};
  const double cy[3] = {0.0, 0.0, 3.0};
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < per_class; ++i) {
      x.push_back({cx[c] + 0.3 * normal(rng), cy[c] + 0.3 * normal(rng)});
      y.push_back(c);
    }
}

double relative_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += a[i] * a[i] + b[i] * b[i];
  }
  return std::sqrt(num) / std::max(std::sqrt(den), 1e-12);
}

}  // namespace

TEST_CASE("canonical labels map ascending originals onto 0..C-1") {
  std::vector<int> class_ids;
  const std::vector<int> canon = canonical_labels({5, 2, 9, 2, 5}, class_ids);
  CHECK(class_ids == std::vector<int>{2, 5, 9});
  CHECK(canon == std::vector<int>{1, 0, 2, 0, 1});
}

TEST_CASE("separable two-class problem trains to perfect accuracy") {
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  for (int i = 0; i < 10; ++i) {
    x.push_back({-1.0 - 0.01 * i});
    y.push_back(0);
    x.push_back({1.0 + 0.01 * i});
    y.push_back(1);
  }
  const LogisticModel model = train_logreg(x, y);
  CHECK(model.n_classes == 2);
  CHECK(model.n_features == 1);
  CHECK(evaluate(model, x, y) == 1.0);
  CHECK(predict_proba(model, {-1.0})[0] > 0.9);
  CHECK(predict_proba(model, {1.0})[1] > 0.9);
}

TEST_CASE("zero training epochs leave the uniform predictor") {
  std::vector<std::vector<double>> x = {{0.4, -0.2}, {1.0, 2.0}, {-1.0, 0.5}};
  std::vector<int> y = {0, 1, 2};
  LogregHyper hyper;
  hyper.epochs = 0;
  std::vector<double> history;
  const LogisticModel model = train_logreg(x, y, hyper, &history);
  REQUIRE(history.size() == 1);  // epochs + 1 entries
  const std::vector<double> p = predict_proba(model, {7.0, -3.0});
  REQUIRE(p.size() == 3);
  for (double pi : p) CHECK(std::abs(pi - 1.0 / 3.0) < 1e-12);
  // loss at zero weights is exactly log C
  CHECK(history[0] == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("analytic gradient agrees with central finite differences") {
  std::mt19937_64 rng(103);
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  blobs(rng, 4, x, y);
  const int n_classes = 3;
  const int n_features = 2;
  const double l2 = 1e-4;
  const double h = 1e-6;

  std::vector<std::vector<double>> weight_sets;
  weight_sets.emplace_back(static_cast<std::size_t>(n_classes * (n_features + 1)), 0.0);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<double> w(static_cast<std::size_t>(n_classes * (n_features + 1)));
    for (double& wi : w) wi = 0.5 * normal(rng);
    weight_sets.push_back(std::move(w));
  }

  for (const auto& w : weight_sets) {
    const std::vector<double> grad = logreg_gradient(w, n_classes, n_features, x, y, l2);
    std::vector<double> fd(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::vector<double> wp = w, wm = w;
      wp[i] += h;
      wm[i] -= h;
      fd[i] = (logreg_loss(wp, n_classes, n_features, x, y, l2) -
               logreg_loss(wm, n_classes, n_features, x, y, l2)) /
              (2.0 * h);
    }
    CHECK(relative_diff(grad, fd) < 1e-5);
  }
}

TEST_CASE("training loss never increases along the descent path") {
  std::mt19937_64 rng(107);
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  blobs(rng, 6, x, y);

  std::vector<double> history;
  LogregHyper hyper;
  hyper.epochs = 200;
  train_logreg(x, y, hyper, &history);
  REQUIRE(history.size() == 201);
  for (std::size_t i = 1; i < history.size(); ++i) CHECK(history[i] <= history[i - 1] + 1e-12);
  CHECK(history.back() < history.front());
}

TEST_CASE("predicted probabilities are a distribution") {
  std::mt19937_64 rng(109);
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  blobs(rng, 5, x, y);
  const LogisticModel model = train_logreg(x, y);

  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<double> probe = {4.0 * normal(rng), 4.0 * normal(rng)};
    const std::vector<double> p = predict_proba(model, probe);
    double total = 0.0;
    for (double pi : p) {
      CHECK(pi >= 0.0);
      total += pi;
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
    // argmax of the probabilities is the predicted class
    int best = 0;
    for (int c = 1; c < model.n_classes; ++c)
      if (p[static_cast<std::size_t>(c)] > p[static_cast<std::size_t>(best)]) best = c;
    CHECK(predict(model, probe) == best);
  }

  // softmax is shift-invariant per instance but picks ties deterministically
  LogisticModel tie;
  tie.n_classes = 3;
  tie.n_features = 1;
  tie.w = {0.0, 1.0, 0.0, 1.0, 0.0, 0.5};  // classes 0 and 1 tie on x = {0}
  tie.class_ids = {0, 1, 2};
  CHECK(predict(tie, {0.0}) == 0);
}

TEST_CASE("scaling all weights preserves the argmax prediction") {
  std::mt19937_64 rng(113);
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  blobs(rng, 5, x, y);
  LogisticModel model = train_logreg(x, y);

  LogisticModel scaled = model;
  for (double& wi : scaled.w) wi *= 3.0;
  for (int trial = 0; trial < 30; ++trial) {
    const std::vector<double> probe = {3.0 * normal(rng), 3.0 * normal(rng)};
    CHECK(predict(model, probe) == predict(scaled, probe));
  }
}

TEST_CASE("evaluate counts exact matches") {
  LogisticModel model;
  model.n_classes = 2;
  model.n_features = 1;
  model.w = {1.0, 0.0, -1.0, 0.0};  // class 0 wins for x > 0
  model.class_ids = {0, 1};

  CHECK(evaluate(model, {{1.0}, {-1.0}}, {0, 1}) == 1.0);
  CHECK(evaluate(model, {{1.0}, {-1.0}}, {1, 0}) == 0.0);
  CHECK(evaluate(model, {{1.0}, {-1.0}, {2.0}, {-2.0}}, {0, 1, 1, 1}) == 0.75);
  CHECK_THROWS_AS(evaluate(model, {{1.0}}, {0, 1}), std::invalid_argument);
}

TEST_CASE("training input validation") {
  std::vector<std::vector<double>> x = {{0.0}, {1.0}, {2.0}, {3.0}};
  std::vector<int> y = {0, 0, 1, 1};

  CHECK_THROWS_AS(train_logreg({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(train_logreg(x, {0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(train_logreg(x, {0, 0, 0, 0}), std::invalid_argument);  // one class
  CHECK_THROWS_WITH_AS(train_logreg(x, {0, 0, 2, 2}), doctest::Contains("class 1"),
                       std::invalid_argument);  // gap in canonical labels
  CHECK_THROWS_AS(train_logreg({{0.0}, {1.0}, {2.0, 9.0}, {3.0}}, y),
                  std::invalid_argument);  // ragged features

  std::vector<std::vector<double>> bad = x;
  bad[2][0] = std::nan("");
  CHECK_THROWS_AS(train_logreg(bad, y), std::invalid_argument);

  LogregHyper hyper;
  hyper.epochs = -1;
  CHECK_THROWS_AS(train_logreg(x, y, hyper), std::invalid_argument);
  hyper.epochs = 10;
  hyper.lr = 0.0;
  CHECK_THROWS_AS(train_logreg(x, y, hyper), std::invalid_argument);
  hyper.lr = 0.1;
  hyper.l2 = -1.0;
  CHECK_THROWS_AS(train_logreg(x, y, hyper), std::invalid_argument);

  const LogisticModel model = train_logreg(x, y);
  CHECK_THROWS_AS(predict_proba(model, {1.0, 2.0}), std::invalid_argument);
}
