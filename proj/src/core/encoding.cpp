#include "core/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "core/parallel.hpp"

namespace tiscat {

std::vector<int> SessionLabels::unique_sessions() const {
  std::set<int> s(session.begin(), session.end());
  return {s.begin(), s.end()};
}

double hrf_double_gamma(double t) {
  if (t <= 0.0) return 0.0;
  // gamma-density form, a1=6, a2=16, b=1, undershoot ratio 1/6
  const double lg6 = std::lgamma(6.0), lg16 = std::lgamma(16.0);
  const double peak = std::exp(5.0 * std::log(t) - t - lg6);
  const double under = std::exp(15.0 * std::log(t) - t - lg16);
  return peak - under / 6.0;
}

Eigen::MatrixXd fit_glm_betas(const Eigen::MatrixXd& bold, int n_images,
                              const std::vector<std::pair<int, double>>& events, double tr) {
  if (tr <= 0.0) throw std::invalid_argument("tr must be positive");
  if (n_images < 1) throw std::invalid_argument("need at least one image");
  const long T = bold.rows();
  const double duration = static_cast<double>(T) * tr;
  for (const auto& [img, onset] : events) {
    if (img < 0 || img >= n_images) throw std::invalid_argument("event image index out of range");
    if (onset < 0.0 || onset >= duration)
      throw std::invalid_argument("onset outside scan duration");
  }

  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(T, n_images + 1);
  for (const auto& [img, onset] : events)
    for (long t = 0; t < T; ++t)
      design(t, img) += hrf_double_gamma(static_cast<double>(t) * tr - onset);
  design.col(n_images).setOnes();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < design.cols()) {
    const auto& perm = qr.colsPermutation().indices();
    std::string names;
    for (long i = qr.rank(); i < design.cols(); ++i) {
      if (!names.empty()) names += ", ";
      const int col = perm(i);
      names += col == n_images ? "intercept" : "image " + std::to_string(col);
    }
    throw std::invalid_argument("rank-deficient design: collinear regressors: " + names);
  }
  Eigen::MatrixXd coef = qr.solve(bold);
  return coef.topRows(n_images);
}

RidgeFit ridge_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda) {
  if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
  if (X.rows() < 2) throw std::invalid_argument("need at least 2 rows");
  if (X.rows() != y.size()) throw std::invalid_argument("X and y row counts differ");
  if (!X.allFinite() || !y.allFinite()) throw std::invalid_argument("non-finite inputs");

  const Eigen::RowVectorXd xm = X.colwise().mean();
  const double ym = y.mean();
  const Eigen::MatrixXd Xc = X.rowwise() - xm;
  const Eigen::VectorXd yc = y.array() - ym;

  Eigen::MatrixXd A = Xc.transpose() * Xc;
  A.diagonal().array() += lambda;
  RidgeFit fit;
  fit.lambda = lambda;
  fit.weights = A.ldlt().solve(Xc.transpose() * yc);
  fit.intercept = ym - xm.dot(fit.weights);
  return fit;
}

double r2_score(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred, double baseline) {
  if (y_true.size() != y_pred.size() || y_true.size() < 1)
    throw std::invalid_argument("r2_score: length mismatch");
  const double ss_res = (y_true - y_pred).squaredNorm();
  const double ss_tot = (y_true.array() - baseline).matrix().squaredNorm();
  if (ss_tot == 0.0) throw std::domain_error("degenerate target");
  return 1.0 - ss_res / ss_tot;
}

FoldModel fit_fold(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                   const std::vector<int>& train_rows, const Eigen::VectorXd& lambda) {
  const long n = static_cast<long>(train_rows.size());
  const long p = X.cols();
  const long V = Y.cols();
  if (n < 2) throw std::invalid_argument("fit_fold: need at least 2 training rows");
  if (lambda.size() != V) throw std::invalid_argument("fit_fold: lambda size mismatch");

  Eigen::MatrixXd Xt(n, p);
  Eigen::MatrixXd Yt(n, V);
  for (long i = 0; i < n; ++i) {
    Xt.row(i) = X.row(train_rows[i]);
    Yt.row(i) = Y.row(train_rows[i]);
  }

  FoldModel m;
  m.feat_mean = Xt.colwise().mean();
  m.feat_sd.resize(p);
  for (long c = 0; c < p; ++c) {
    const double var = (Xt.col(c).array() - m.feat_mean(c)).square().mean();
    const double sd = std::sqrt(var);
    m.feat_sd(c) = sd > 0.0 ? sd : 1.0;
  }
  for (long c = 0; c < p; ++c)
    Xt.col(c) = (Xt.col(c).array() - m.feat_mean(c)) / m.feat_sd(c);
  m.y_mean = Yt.colwise().mean();
  m.lambda = lambda;
  m.weights.resize(p, V);

  const Eigen::MatrixXd G = Xt.transpose() * Xt;
  std::map<double, std::vector<long>> groups;
  for (long v = 0; v < V; ++v) {
    if (!(lambda(v) > 0.0)) throw std::invalid_argument("lambda must be positive");
    groups[lambda(v)].push_back(v);
  }
  for (const auto& [lam, voxels] : groups) {
    Eigen::MatrixXd A = G;
    A.diagonal().array() += lam;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
    for (long v : voxels)
      m.weights.col(v) = ldlt.solve(Xt.transpose() * (Yt.col(v).array() - m.y_mean(v)).matrix());
  }
  return m;
}

Eigen::VectorXd score_fold(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                           const std::vector<int>& test_rows, const FoldModel& model) {
  const long n = static_cast<long>(test_rows.size());
  const long V = Y.cols();
  Eigen::MatrixXd Xt(n, X.cols());
  for (long i = 0; i < n; ++i) Xt.row(i) = X.row(test_rows[i]);
  for (long c = 0; c < X.cols(); ++c)
    Xt.col(c) = (Xt.col(c).array() - model.feat_mean(c)) / model.feat_sd(c);

  Eigen::VectorXd r2(V);
  for (long v = 0; v < V; ++v) {
    double ss_res = 0.0, ss_tot = 0.0;
    for (long i = 0; i < n; ++i) {
      const double pred = Xt.row(i).dot(model.weights.col(v)) + model.y_mean(v);
      const double y = Y(test_rows[i], v);
      ss_res += (y - pred) * (y - pred);
      ss_tot += (y - model.y_mean(v)) * (y - model.y_mean(v));
    }
    r2(v) = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : std::numeric_limits<double>::quiet_NaN();
  }
  return r2;
}

CVResult nested_cv_encode(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                          const SessionLabels& sessions, const std::vector<double>& lambda_grid,
                          const NestedCVOptions& options) {
  if (lambda_grid.empty()) throw std::invalid_argument("lambda grid is empty");
  if (X.rows() != Y.rows() || X.rows() != sessions.n_images())
    throw std::invalid_argument("X, Y and session labels disagree on image count");
  const std::vector<int> sess = sessions.unique_sessions();
  if (sess.size() < 3) throw std::invalid_argument("need at least 3 sessions");
  for (int s : sess) {
    const long count = std::count(sessions.session.begin(), sessions.session.end(), s);
    if (count < 2) throw std::invalid_argument("session " + std::to_string(s) + " has < 2 images");
  }
  std::vector<double> grid = lambda_grid;
  std::sort(grid.begin(), grid.end());

  const long V = Y.cols();
  const long S = static_cast<long>(sess.size());
  CVResult res;
  res.outer_sessions = sess;
  res.fold_r2.resize(S, V);
  res.fold_lambda.resize(S, V);
  if (options.keep_fold_models) res.fold_models.resize(S);

  auto rows_where = [&](auto&& pred) {
    std::vector<int> rows;
    for (int i = 0; i < sessions.n_images(); ++i)
      if (pred(sessions.session[i])) rows.push_back(i);
    return rows;
  };

  parallel_for(static_cast<size_t>(S), options.threads, [&](size_t si) {
    const int s_out = sess[si];
    const std::vector<int> train = rows_where([&](int s) { return s != s_out; });
    const std::vector<int> test = rows_where([&](int s) { return s == s_out; });

    Eigen::VectorXd chosen = Eigen::VectorXd::Constant(V, grid[0]);
    if (grid.size() > 1) {
      Eigen::MatrixXd inner_scores = Eigen::MatrixXd::Zero(static_cast<long>(grid.size()), V);
      for (int s_in : sess) {
        if (s_in == s_out) continue;
        const std::vector<int> itr =
            rows_where([&](int s) { return s != s_out && s != s_in; });
        const std::vector<int> ite = rows_where([&](int s) { return s == s_in; });
        for (size_t g = 0; g < grid.size(); ++g) {
          FoldModel m = fit_fold(X, Y, itr, Eigen::VectorXd::Constant(V, grid[g]));
          inner_scores.row(static_cast<long>(g)) += score_fold(X, Y, ite, m).transpose();
        }
      }
      if (options.shared_lambda) {
        long best = 0;
        inner_scores.rowwise().mean().maxCoeff(&best);
        chosen.setConstant(grid[static_cast<size_t>(best)]);
      } else {
        for (long v = 0; v < V; ++v) {
          long best = 0;
          inner_scores.col(v).maxCoeff(&best);  // first max = smallest lambda on ties
          chosen(v) = grid[static_cast<size_t>(best)];
        }
      }
    }

    FoldModel model = fit_fold(X, Y, train, chosen);
    res.fold_r2.row(static_cast<long>(si)) = score_fold(X, Y, test, model).transpose();
    res.fold_lambda.row(static_cast<long>(si)) = chosen.transpose();
    if (options.keep_fold_models) res.fold_models[si] = std::move(model);
  });

  res.mean_r2 = res.fold_r2.colwise().mean();
  return res;
}

}  // namespace tiscat
