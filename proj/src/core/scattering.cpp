#include "core/scattering.hpp"

#include <cmath>
#include <stdexcept>

#include "core/fft.hpp"
#include "core/parallel.hpp"

namespace tiscat {

void ScatteringConfig::validate() const {
  if (M != 1 && M != 2) throw std::invalid_argument("M must be 1 or 2");
  filter.validate();
}

std::string Path::label() const {
  switch (layer) {
    case 0:
      return "m0";
    case 1:
      return "m1_j" + std::to_string(j1) + "g" + std::to_string(g1);
    default:
      return "m2_j" + std::to_string(j1) + "g" + std::to_string(g1) + "_j" + std::to_string(j2) +
             "g" + std::to_string(g2);
  }
}

std::vector<Path> feature_paths(const ScatteringConfig& config) {
  config.validate();
  const int J = config.filter.J, L = config.filter.L;
  std::vector<Path> paths;
  paths.push_back(Path{});
  for (int j1 = 0; j1 < J; ++j1)
    for (int g1 = 0; g1 < L; ++g1) paths.push_back(Path{1, j1, g1, -1, -1});
  if (config.M == 2) {
    for (int j1 = 0; j1 < J; ++j1)
      for (int g1 = 0; g1 < L; ++g1)
        for (int j2 = j1 + 1; j2 < J; ++j2)
          for (int g2 = 0; g2 < L; ++g2) paths.push_back(Path{2, j1, g1, j2, g2});
  }
  return paths;
}

size_t feature_count(const ScatteringConfig& config) {
  const size_t J = config.filter.J, L = config.filter.L;
  size_t n = 1 + J * L;
  if (config.M == 2) n += L * L * J * (J - 1) / 2;
  return n;
}

namespace {

fft::cvec spectrum_of(const Raster& u) {
  fft::cvec buf(u.size());
  for (size_t i = 0; i < u.size(); ++i) buf[i] = u.data[i];
  fft::forward2d(buf, buf, u.width, u.height);
  return buf;
}

Raster modulus_from_spectrum(const fft::cvec& U, const Filter& f) {
  fft::cvec prod(U.size());
  for (size_t i = 0; i < U.size(); ++i) prod[i] = U[i] * f.spectrum[i];
  fft::inverse2d(prod, prod, f.width, f.height);
  Raster out(f.width, f.height);
  for (size_t i = 0; i < prod.size(); ++i) out.data[i] = std::abs(prod[i]);
  return out;
}

const Filter& bank_filter(const FilterBank& bank, int j, int g) {
  return bank.filters[static_cast<size_t>(j) * bank.params.L + g];
}

}  // namespace

Raster wavelet_modulus(const Raster& u, const Filter& f) {
  if (u.width != f.width || u.height != f.height)
    throw std::invalid_argument("wavelet_modulus: image and filter shapes differ");
  return modulus_from_spectrum(spectrum_of(u), f);
}

ScatteringFeatures scatter_with_bank(const Raster& u, const ScatteringConfig& config,
                                     const FilterBank& bank) {
  config.validate();
  if (u.width != config.filter.width || u.height != config.filter.height)
    throw std::invalid_argument("scatter: image shape does not match config");
  if (!u.finite()) throw std::invalid_argument("non-finite image");

  const int J = config.filter.J, L = config.filter.L;
  ScatteringFeatures out;
  out.config = config;
  out.paths = feature_paths(config);
  out.values.reserve(out.paths.size());
  out.values.push_back(u.mean());

  fft::cvec U = spectrum_of(u);
  std::vector<Raster> layer1;
  layer1.reserve(static_cast<size_t>(J) * L);
  for (int j1 = 0; j1 < J; ++j1)
    for (int g1 = 0; g1 < L; ++g1) {
      layer1.push_back(modulus_from_spectrum(U, bank_filter(bank, j1, g1)));
      out.values.push_back(layer1.back().mean());
    }

  if (config.M == 2) {
    for (int j1 = 0; j1 < J; ++j1)
      for (int g1 = 0; g1 < L; ++g1) {
        const Raster& m1 = layer1[static_cast<size_t>(j1) * L + g1];
        if (j1 + 1 >= J) continue;
        fft::cvec M1 = spectrum_of(m1);
        for (int j2 = j1 + 1; j2 < J; ++j2)
          for (int g2 = 0; g2 < L; ++g2)
            out.values.push_back(modulus_from_spectrum(M1, bank_filter(bank, j2, g2)).mean());
      }
  }
  return out;
}

ScatteringFeatures scatter(const Raster& u, const ScatteringConfig& config) {
  ScatteringConfig cfg = config;
  cfg.filter.width = u.width;
  cfg.filter.height = u.height;
  cfg.validate();
  return scatter_with_bank(u, cfg, build_filter_bank(cfg.filter));
}

EnergyProfile energy_profile(const Raster& u, const ScatteringConfig& config) {
  if (config.M != 2) throw std::invalid_argument("energy_profile requires M=2");
  ScatteringConfig cfg = config;
  cfg.filter.width = u.width;
  cfg.filter.height = u.height;
  cfg.validate();
  if (!u.finite()) throw std::invalid_argument("non-finite image");
  FilterBank bank = build_filter_bank(cfg.filter);
  const int J = cfg.filter.J, L = cfg.filter.L;

  fft::cvec U = spectrum_of(u);
  EnergyProfile prof;
  for (int j1 = 0; j1 < J; ++j1)
    for (int g1 = 0; g1 < L; ++g1) {
      Raster m1 = modulus_from_spectrum(U, bank_filter(bank, j1, g1));
      fft::cvec M1 = spectrum_of(m1);
      for (int j2 = 0; j2 < J; ++j2)
        for (int g2 = 0; g2 < L; ++g2) {
          const double v = modulus_from_spectrum(M1, bank_filter(bank, j2, g2)).mean();
          if (j2 > j1)
            prof.energy_gt += v * v;
          else
            prof.energy_leq += v * v;
        }
    }
  const double total = prof.energy_gt + prof.energy_leq;
  prof.e_leq = total > 0.0 ? prof.energy_leq / total : 0.0;
  return prof;
}

FeatureMatrix batch_scatter(const std::vector<Raster>& images, const ScatteringConfig& config,
                            int threads) {
  ScatteringConfig cfg = config;
  if (!images.empty()) {
    cfg.filter.width = images[0].width;
    cfg.filter.height = images[0].height;
  }
  cfg.validate();
  for (const auto& im : images)
    if (im.width != cfg.filter.width || im.height != cfg.filter.height)
      throw std::invalid_argument("batch_scatter: mixed image shapes");

  FeatureMatrix mat;
  mat.paths = feature_paths(cfg);
  mat.n_features = static_cast<int>(mat.paths.size());
  mat.image_ids.resize(images.size());
  for (size_t i = 0; i < images.size(); ++i) mat.image_ids[i] = "img" + std::to_string(i);
  mat.values.resize(images.size() * mat.paths.size());

  if (images.empty()) return mat;
  const FilterBank bank = build_filter_bank(cfg.filter);
  parallel_for(images.size(), threads, [&](size_t i) {
    ScatteringFeatures f = scatter_with_bank(images[i], cfg, bank);
    std::copy(f.values.begin(), f.values.end(),
              mat.values.begin() + static_cast<long>(i) * mat.n_features);
  });
  return mat;
}

}  // namespace tiscat
