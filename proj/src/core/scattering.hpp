#pragma once

#include <string>
#include <vector>

#include "core/filterbank.hpp"
#include "core/raster.hpp"

namespace tiscat {

struct ScatteringConfig {
  int M = 2;  // layer depth, 1 or 2
  FilterParams filter;

  void validate() const;
};

/// Index of one output coefficient. layer 0 has no indices; layer 1 uses
/// (j1, g1); layer 2 adds (j2, g2) with j2 > j1. g* are orientation indices.
struct Path {
  int layer = 0;
  int j1 = -1, g1 = -1;
  int j2 = -1, g2 = -1;

  std::string label() const;
  bool operator==(const Path&) const = default;
};

struct ScatteringFeatures {
  ScatteringConfig config;
  std::vector<Path> paths;
  std::vector<double> values;
};

struct FeatureMatrix {
  std::vector<Path> paths;
  std::vector<std::string> image_ids;
  int n_features = 0;
  std::vector<double> values;  // n_images x n_features, row-major

  int n_images() const { return static_cast<int>(image_ids.size()); }
  double at(int i, int f) const { return values[static_cast<size_t>(i) * n_features + f]; }
};

struct EnergyProfile {
  double energy_gt = 0.0;   // sum of squared layer-2 coefficients, j2 > j1
  double energy_leq = 0.0;  // diagnostic branch, j2 <= j1
  double e_leq = 0.0;       // energy_leq / (energy_gt + energy_leq), 0 if both vanish
};

/// |psi * u| by circular convolution (spectral product + inverse FFT).
Raster wavelet_modulus(const Raster& u, const Filter& f);

std::vector<Path> feature_paths(const ScatteringConfig& config);

size_t feature_count(const ScatteringConfig& config);

ScatteringFeatures scatter(const Raster& u, const ScatteringConfig& config);

/// Same cascade but with a prebuilt bank (shared across images).
ScatteringFeatures scatter_with_bank(const Raster& u, const ScatteringConfig& config,
                                     const FilterBank& bank);

EnergyProfile energy_profile(const Raster& u, const ScatteringConfig& config);

/// Rows computed independently (optionally across threads); output is
/// identical regardless of worker count.
FeatureMatrix batch_scatter(const std::vector<Raster>& images, const ScatteringConfig& config,
                            int threads = 1);

}  // namespace tiscat
