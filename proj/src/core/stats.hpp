#pragma once

#include <string>
#include <vector>

namespace tiscat {

struct WilcoxonResult {
  double statistic = 0.0;  // W = min of the signed-rank sums
  double p_two_sided = 1.0;
  int n = 0;               // pairs remaining after dropping zero differences
  bool exact = false;
};

/// Wilcoxon signed-rank test on paired samples. Exact p by sign-flip
/// enumeration for n <= 20, normal approximation with tie and continuity
/// corrections above.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b);

enum class VoxelLabel { red, blue, unlabeled };

struct ComparisonMap {
  std::vector<double> delta;       // scores2 - scores1
  std::vector<VoxelLabel> labels;  // red: delta > threshold; blue: delta <= 0
  double threshold = 0.05;
  // scatterplot rows (voxel index, scores1, scores2) for the top_k voxels by scores1
  std::vector<int> scatter_voxels;
};

ComparisonMap compare_models(const std::vector<double>& scores1, const std::vector<double>& scores2,
                             double threshold = 0.05, int top_k = 2000);

std::string to_string(VoxelLabel label);

}  // namespace tiscat
