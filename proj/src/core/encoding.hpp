#pragma once

#include <Eigen/Dense>
#include <vector>

namespace tiscat {

/// Per-image acquisition labels; sessions drive the outer CV folds.
struct SessionLabels {
  std::vector<int> session;
  std::vector<int> block;

  int n_images() const { return static_cast<int>(session.size()); }
  std::vector<int> unique_sessions() const;
};

struct RidgeFit {
  Eigen::VectorXd weights;
  double intercept = 0.0;
  double lambda = 0.0;
};

/// One ridge model fit on a subset of rows with the fold's standardization
/// statistics baked in. Weights act on z-scored features.
struct FoldModel {
  Eigen::VectorXd feat_mean, feat_sd;
  Eigen::VectorXd y_mean;      // per voxel (the r^2 baseline)
  Eigen::MatrixXd weights;     // p x n_voxels
  Eigen::VectorXd lambda;      // per voxel
};

struct CVResult {
  std::vector<int> outer_sessions;
  Eigen::MatrixXd fold_r2;      // n_folds x n_voxels
  Eigen::MatrixXd fold_lambda;  // n_folds x n_voxels
  Eigen::VectorXd mean_r2;      // n_voxels
  std::vector<FoldModel> fold_models;
};

struct NestedCVOptions {
  bool shared_lambda = false;  // one lambda across voxels instead of per voxel
  int threads = 1;
  bool keep_fold_models = false;
};

/// Canonical double-gamma HRF (peak 6 s, undershoot 16 s, ratio 1/6).
double hrf_double_gamma(double t_seconds);

/// Simplified single-design GLM: one impulse-at-onset regressor per unique
/// image, convolved with the HRF, plus an intercept; OLS betas per voxel.
/// Events carry (image_index, onset_seconds); repeated presentations of an
/// image share its regressor.
Eigen::MatrixXd fit_glm_betas(const Eigen::MatrixXd& bold, int n_images,
                              const std::vector<std::pair<int, double>>& events, double tr);

RidgeFit ridge_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda);

/// Predictive r^2 with an explicit baseline (training-set mean).
double r2_score(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred, double baseline);

/// Fits ridge on the selected rows with per-voxel penalties; features are
/// z-scored and targets centered with training statistics.
FoldModel fit_fold(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                   const std::vector<int>& train_rows, const Eigen::VectorXd& lambda);

/// Per-voxel predictive r^2 of a fold model on the given rows.
Eigen::VectorXd score_fold(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                           const std::vector<int>& test_rows, const FoldModel& model);

/// Leave-one-session-out outer CV with an inner leave-one-session-out lambda
/// search; lambda is chosen per voxel (argmax of mean inner r^2, ties to the
/// smaller lambda).
CVResult nested_cv_encode(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                          const SessionLabels& sessions, const std::vector<double>& lambda_grid,
                          const NestedCVOptions& options = {});

}  // namespace tiscat
