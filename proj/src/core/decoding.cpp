#include "core/decoding.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "core/parallel.hpp"

namespace tiscat {

void LabeledActivity::validate() const {
  const size_t n = static_cast<size_t>(activity.rows());
  if (labels.size() != n || blocks.size() != n)
    throw std::invalid_argument("labels/blocks must align with activity rows");
  if (!activity.allFinite()) throw std::invalid_argument("non-finite activity");
  if (classes().size() < 2) throw std::invalid_argument("need at least 2 classes");
}

std::vector<int> LabeledActivity::classes() const {
  std::set<int> s(labels.begin(), labels.end());
  return {s.begin(), s.end()};
}

int OvrModel::predict(const Eigen::VectorXd& x) const {
  int best = classes.front();
  double best_score = weights.col(0).dot(x) + intercepts(0);
  for (size_t c = 1; c < classes.size(); ++c) {
    const double s = weights.col(static_cast<long>(c)).dot(x) + intercepts(static_cast<long>(c));
    if (s > best_score) {
      best_score = s;
      best = classes[c];
    }
  }
  return best;
}

namespace {

double log1pexp(double t) {
  // log(1 + exp(t)), overflow-safe
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

struct BinaryFit {
  Eigen::VectorXd w;
  double b = 0.0;
  bool converged = false;
  std::vector<double> trace;  // objective after each accepted iterate
};

double objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& z, const Eigen::VectorXd& w,
                 double b, double lambda) {
  double f = lambda * w.squaredNorm();
  const Eigen::VectorXd m = X * w;
  for (long i = 0; i < X.rows(); ++i) f += log1pexp(-z(i) * (m(i) + b));
  return f;
}

BinaryFit newton_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& z, double lambda) {
  const long n = X.rows(), p = X.cols();
  BinaryFit fit;
  fit.w = Eigen::VectorXd::Zero(p);
  fit.b = 0.0;
  double f = objective(X, z, fit.w, fit.b, lambda);
  fit.trace.push_back(f);

  for (int iter = 0; iter < 1000; ++iter) {
    const Eigen::VectorXd m = (X * fit.w).array() + fit.b;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(p + 1);
    Eigen::VectorXd d(n);
    for (long i = 0; i < n; ++i) {
      const double s = 1.0 / (1.0 + std::exp(-m(i)));  // sigma(m)
      const double zi = z(i);
      // d/dm log(1+exp(-z m)) = -z * sigma(-z m)
      const double gm = -zi * (zi > 0 ? 1.0 - s : s);
      g.head(p) += gm * X.row(i).transpose();
      g(p) += gm;
      d(i) = s * (1.0 - s);
    }
    g.head(p) += 2.0 * lambda * fit.w;
    if (g.lpNorm<Eigen::Infinity>() <= 1e-6) {
      fit.converged = true;
      break;
    }

    Eigen::MatrixXd H(p + 1, p + 1);
    H.topLeftCorner(p, p) = X.transpose() * d.asDiagonal() * X;
    H.topLeftCorner(p, p).diagonal().array() += 2.0 * lambda;
    H.topRightCorner(p, 1) = X.transpose() * d;
    H.bottomLeftCorner(1, p) = H.topRightCorner(p, 1).transpose();
    H(p, p) = d.sum();
    H.diagonal().array() += 1e-10;  // guard near-singular Hessian at saturation

    const Eigen::VectorXd step = H.ldlt().solve(g);
    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h < 50; ++h) {
      const Eigen::VectorXd w_try = fit.w - t * step.head(p);
      const double b_try = fit.b - t * step(p);
      const double f_try = objective(X, z, w_try, b_try, lambda);
      if (f_try <= f) {
        fit.w = w_try;
        fit.b = b_try;
        f = f_try;
        fit.trace.push_back(f);
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // no descent direction progress left
  }
  return fit;
}

}  // namespace

OvrModel logistic_ovr_fit(const LabeledActivity& data, double lambda) {
  if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
  data.validate();
  const std::vector<int> cls = data.classes();
  const long p = data.activity.cols();

  OvrModel model;
  model.classes = cls;
  model.lambda = lambda;
  model.weights.resize(p, static_cast<long>(cls.size()));
  model.intercepts.resize(static_cast<long>(cls.size()));
  for (size_t c = 0; c < cls.size(); ++c) {
    Eigen::VectorXd z(data.activity.rows());
    for (long i = 0; i < z.size(); ++i) z(i) = data.labels[static_cast<size_t>(i)] == cls[c] ? 1.0 : -1.0;
    BinaryFit fit = newton_logistic(data.activity, z, lambda);
    model.weights.col(static_cast<long>(c)) = fit.w;
    model.intercepts(static_cast<long>(c)) = fit.b;
    model.converged = model.converged && fit.converged;
    model.objective_trace.push_back(std::move(fit.trace));
  }
  return model;
}

namespace {

struct Standardizer {
  Eigen::RowVectorXd mu, sd;

  explicit Standardizer(const Eigen::MatrixXd& X) {
    mu = X.colwise().mean();
    sd.resize(X.cols());
    for (long c = 0; c < X.cols(); ++c) {
      const double s = std::sqrt((X.col(c).array() - mu(c)).square().mean());
      sd(c) = s > 0.0 ? s : 1.0;
    }
  }
  Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const {
    Eigen::MatrixXd out = X.rowwise() - mu;
    out.array().rowwise() /= sd.array();
    return out;
  }
};

LabeledActivity subset(const LabeledActivity& data, const std::vector<int>& rows) {
  LabeledActivity out;
  out.activity.resize(static_cast<long>(rows.size()), data.activity.cols());
  out.labels.reserve(rows.size());
  out.blocks.reserve(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    out.activity.row(static_cast<long>(i)) = data.activity.row(rows[i]);
    out.labels.push_back(data.labels[static_cast<size_t>(rows[i])]);
    out.blocks.push_back(data.blocks[static_cast<size_t>(rows[i])]);
  }
  return out;
}

/// Accuracy of a model fit on `train` and scored on `test`, restricted to
/// classes seen in training. Returns (accuracy, all_classes_seen).
std::pair<double, bool> fit_and_score(const LabeledActivity& train, const LabeledActivity& test,
                                      double lambda) {
  Standardizer std_(train.activity);
  LabeledActivity tr = train;
  tr.activity = std_.apply(train.activity);
  const OvrModel model = logistic_ovr_fit(tr, lambda);
  const std::set<int> seen(tr.labels.begin(), tr.labels.end());

  const Eigen::MatrixXd Xte = std_.apply(test.activity);
  long correct = 0, scored = 0;
  bool all_seen = true;
  for (long i = 0; i < Xte.rows(); ++i) {
    const int y = test.labels[static_cast<size_t>(i)];
    if (!seen.count(y)) {
      all_seen = false;
      continue;
    }
    ++scored;
    if (model.predict(Xte.row(i).transpose()) == y) ++correct;
  }
  const double acc = scored > 0 ? static_cast<double>(correct) / static_cast<double>(scored) : 0.0;
  return {acc, all_seen};
}

}  // namespace

DecodeResult block_cv_decode(const LabeledActivity& data, const std::vector<double>& lambda_grid,
                             const DecodeOptions& options) {
  data.validate();
  if (lambda_grid.empty()) throw std::invalid_argument("lambda grid is empty");
  std::set<int> block_set(data.blocks.begin(), data.blocks.end());
  const std::vector<int> blocks(block_set.begin(), block_set.end());
  if (blocks.size() < 3) throw std::invalid_argument("need at least 3 blocks");
  std::vector<double> grid = lambda_grid;
  std::sort(grid.begin(), grid.end());

  auto rows_where = [&](auto&& pred) {
    std::vector<int> rows;
    for (size_t i = 0; i < data.blocks.size(); ++i)
      if (pred(data.blocks[i])) rows.push_back(static_cast<int>(i));
    return rows;
  };

  DecodeResult res;
  res.fold_accuracy.resize(blocks.size());
  std::vector<char> flagged(blocks.size(), 0);

  parallel_for(blocks.size(), options.threads, [&](size_t bi) {
    const int b_out = blocks[bi];
    const std::vector<int> train_rows = rows_where([&](int b) { return b != b_out; });
    const std::vector<int> test_rows = rows_where([&](int b) { return b == b_out; });
    const LabeledActivity train = subset(data, train_rows);
    const LabeledActivity test = subset(data, test_rows);

    double chosen = grid[0];
    if (grid.size() > 1) {
      std::vector<double> mean_acc(grid.size(), 0.0);
      int n_inner = 0;
      for (int b_in : blocks) {
        if (b_in == b_out) continue;
        const LabeledActivity itr =
            subset(data, rows_where([&](int b) { return b != b_out && b != b_in; }));
        const LabeledActivity ite = subset(data, rows_where([&](int b) { return b == b_in; }));
        for (size_t g = 0; g < grid.size(); ++g) mean_acc[g] += fit_and_score(itr, ite, grid[g]).first;
        ++n_inner;
      }
      size_t best = 0;
      for (size_t g = 1; g < grid.size(); ++g)
        if (mean_acc[g] > mean_acc[best]) best = g;  // ties keep the smaller lambda
      chosen = grid[best];
      (void)n_inner;
    }

    auto [acc, all_seen] = fit_and_score(train, test, chosen);
    res.fold_accuracy[bi] = acc;
    if (!all_seen) flagged[bi] = 1;
  });

  double s = 0.0;
  for (double a : res.fold_accuracy) s += a;
  res.mean_accuracy = s / static_cast<double>(res.fold_accuracy.size());
  for (size_t i = 0; i < flagged.size(); ++i)
    if (flagged[i]) res.flagged_folds.push_back(static_cast<int>(i));
  return res;
}

}  // namespace tiscat
