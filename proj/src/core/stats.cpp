#include "core/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tiscat {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Average ranks of |d| with ties.
std::vector<double> average_ranks(const std::vector<double>& absd) {
  const size_t n = absd.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t i, size_t j) { return absd[i] < absd[j]; });
  std::vector<double> ranks(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && absd[order[j + 1]] == absd[order[i]]) ++j;
    const double r = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("wilcoxon: length mismatch");
  std::vector<double> diff;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) diff.push_back(d);
  }
  if (diff.empty()) throw std::invalid_argument("degenerate: identical samples");
  const int n = static_cast<int>(diff.size());
  if (n < 5) throw std::invalid_argument("wilcoxon: need >= 5 nonzero differences");

  std::vector<double> absd(diff.size());
  for (size_t i = 0; i < diff.size(); ++i) absd[i] = std::abs(diff[i]);
  const std::vector<double> ranks = average_ranks(absd);

  double w_pos = 0.0, w_total = 0.0;
  for (size_t i = 0; i < diff.size(); ++i) {
    w_total += ranks[i];
    if (diff[i] > 0.0) w_pos += ranks[i];
  }
  const double w_neg = w_total - w_pos;
  const double w = std::min(w_pos, w_neg);

  WilcoxonResult res;
  res.statistic = w;
  res.n = n;

  if (n <= 20) {
    // enumerate all sign assignments of the observed ranks
    res.exact = true;
    const uint64_t total = uint64_t{1} << n;
    uint64_t count = 0;
    const double eps = 1e-9;
    for (uint64_t mask = 0; mask < total; ++mask) {
      double wp = 0.0;
      for (int i = 0; i < n; ++i)
        if (mask & (uint64_t{1} << i)) wp += ranks[static_cast<size_t>(i)];
      if (wp <= w + eps) ++count;
    }
    res.p_two_sided = std::min(1.0, 2.0 * static_cast<double>(count) / static_cast<double>(total));
  } else {
    const double mu = w_total / 2.0;
    // tie correction on the variance
    double tie_term = 0.0;
    std::vector<double> sorted = absd;
    std::sort(sorted.begin(), sorted.end());
    size_t i = 0;
    while (i < sorted.size()) {
      size_t j = i;
      while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i + 1);
      tie_term += t * t * t - t;
      i = j + 1;
    }
    const double var =
        static_cast<double>(n) * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    if (var <= 0.0) throw std::invalid_argument("degenerate: identical samples");
    const double z = (w - mu + 0.5) / std::sqrt(var);
    res.p_two_sided = std::min(1.0, 2.0 * normal_cdf(z));
  }
  return res;
}

std::string to_string(VoxelLabel label) {
  switch (label) {
    case VoxelLabel::red:
      return "red";
    case VoxelLabel::blue:
      return "blue";
    default:
      return "unlabeled";
  }
}

ComparisonMap compare_models(const std::vector<double>& scores1, const std::vector<double>& scores2,
                             double threshold, int top_k) {
  if (scores1.size() != scores2.size())
    throw std::invalid_argument("compare_models: misaligned voxel ids");
  ComparisonMap map;
  map.threshold = threshold;
  map.delta.resize(scores1.size());
  map.labels.resize(scores1.size());
  for (size_t v = 0; v < scores1.size(); ++v) {
    const double d = scores2[v] - scores1[v];
    map.delta[v] = d;
    map.labels[v] = d > threshold  ? VoxelLabel::red
                    : d <= 0.0     ? VoxelLabel::blue
                                   : VoxelLabel::unlabeled;
  }
  std::vector<int> order(scores1.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return scores1[static_cast<size_t>(i)] > scores1[static_cast<size_t>(j)]; });
  const size_t k = std::min<size_t>(static_cast<size_t>(std::max(0, top_k)), order.size());
  map.scatter_voxels.assign(order.begin(), order.begin() + static_cast<long>(k));
  return map;
}

}  // namespace tiscat
