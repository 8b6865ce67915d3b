#pragma once

#include <Eigen/Dense>
#include <vector>

namespace tiscat {

/// Voxel activity with a class label and acquisition block per image.
struct LabeledActivity {
  Eigen::MatrixXd activity;  // n_images x n_voxels
  std::vector<int> labels;   // class ids
  std::vector<int> blocks;

  void validate() const;
  std::vector<int> classes() const;
};

struct OvrModel {
  std::vector<int> classes;
  Eigen::MatrixXd weights;     // n_voxels x n_classes
  Eigen::VectorXd intercepts;
  double lambda = 0.0;
  bool converged = true;
  std::vector<std::vector<double>> objective_trace;  // per class, per accepted iterate

  /// argmax over class scores, ties to the lowest class id.
  int predict(const Eigen::VectorXd& x) const;
};

/// One-vs-rest l2-penalized logistic regression, Newton with step-halving
/// from zero initialization; converged at gradient max-norm <= 1e-6.
OvrModel logistic_ovr_fit(const LabeledActivity& data, double lambda);

struct DecodeResult {
  std::vector<double> fold_accuracy;
  double mean_accuracy = 0.0;
  std::vector<int> flagged_folds;  // folds scored on seen classes only
};

struct DecodeOptions {
  int threads = 1;
};

/// Leave-one-block-out outer CV with block-wise inner lambda selection
/// (same nesting pattern as the encoding CV).
DecodeResult block_cv_decode(const LabeledActivity& data, const std::vector<double>& lambda_grid,
                             const DecodeOptions& options = {});

}  // namespace tiscat
