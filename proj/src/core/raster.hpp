#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tiscat {

/// 2D real field (image, modulus field, or spectrum magnitude), row-major.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  Raster() = default;
  Raster(int w, int h, double fill = 0.0)
      : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {
    if (w <= 0 || h <= 0) throw std::invalid_argument("raster dims must be positive");
  }

  double& at(int x, int y) { return data[static_cast<size_t>(x) * height + y]; }
  double at(int x, int y) const { return data[static_cast<size_t>(x) * height + y]; }
  size_t size() const { return data.size(); }

  double mean() const {
    double s = 0.0;
    for (double v : data) s += v;
    return s / static_cast<double>(data.size());
  }

  bool finite() const {
    for (double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

}  // namespace tiscat
