#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "core/encoding.hpp"
#include "core/raster.hpp"

namespace tiscat {

/// Seeded RNG with explicit uniform/normal mappings (the std distributions
/// are not bit-portable across standard libraries; the engine is).
class Rng {
 public:
  explicit Rng(uint64_t seed);
  /// Independent substream for (seed, index); used for per-image/per-voxel work.
  static Rng substream(uint64_t seed, uint64_t index);

  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);
  int uniform_int(int n);                 // [0, n)
  double normal();                        // Box-Muller

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct BarParams {
  int n_bars = 40;
  double length = 30.0;
  double width = 2.0;
  std::vector<double> angles_deg = {0.0, 45.0, 90.0, 135.0};
};

enum class TextureKind { gaussian_field, bars, phase_scrambled_of };

struct TextureSpec {
  TextureKind kind = TextureKind::gaussian_field;
  int width = 128;
  int height = 128;
  double alpha = 1.0;  // power-law exponent for gaussian_field
  BarParams bars;
  uint64_t seed = 0;
  std::shared_ptr<TextureSpec> source;  // for phase_scrambled_of
};

Raster gen_texture(const TextureSpec& spec);

/// Randomizes Fourier phases (Hermitian-symmetric) preserving the amplitude
/// spectrum; DC and self-conjugate bins keep their original values.
Raster phase_scramble(const Raster& u, uint64_t seed);

enum class PlantKind { layer1_only, layer2_only, mixed, null_voxel };

struct PlantSpec {
  std::vector<PlantKind> kinds;  // one per voxel
  double snr = 1.0;              // var(signal)/var(noise); +inf = noiseless
  uint64_t seed = 0;
};

struct PlantedVoxels {
  Eigen::MatrixXd responses;   // n_images x n_voxels
  Eigen::MatrixXd beta;        // p x n_voxels, acts on the z-scored features
  Eigen::VectorXd noise_sd;
  std::vector<PlantKind> kinds;
  uint64_t seed = 0;
  double snr = 0.0;
};

/// Plants per-voxel linear signal on the chosen feature support. Features are
/// z-scored; layer-2 support columns are residualized against the layer-0/1
/// block and the planted coefficients are covariance-weighted so the signal
/// lies along recoverable variance directions. n_low = number of leading
/// layer-0/1 columns (1 + J*L).
PlantedVoxels gen_voxels(const Eigen::MatrixXd& features, int n_low, const PlantSpec& plant);

SessionLabels gen_session_labels(int n_images, int n_sessions, int blocks_per_session);

}  // namespace tiscat
