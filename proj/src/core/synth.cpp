#include "core/synth.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "core/fft.hpp"

namespace tiscat {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

Rng::Rng(uint64_t seed) : engine_(seed) {}

Rng Rng::substream(uint64_t seed, uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ index));
}

double Rng::uniform() {
  // 53-bit mantissa in [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int n) {
  // slight modulo bias is irrelevant for n << 2^64
  return static_cast<int>(engine_() % static_cast<uint64_t>(n));
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  have_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

namespace {

void normalize_unit(Raster& img) {
  const double mu = img.mean();
  double var = 0.0;
  for (double& v : img.data) {
    v -= mu;
    var += v * v;
  }
  var /= static_cast<double>(img.data.size());
  if (var <= 0.0) throw std::runtime_error("degenerate texture: zero variance");
  const double s = 1.0 / std::sqrt(var);
  for (double& v : img.data) v *= s;
}

Raster gen_gaussian_field(const TextureSpec& spec) {
  const int w = spec.width, h = spec.height;
  Rng rng(spec.seed);
  fft::cvec f(static_cast<size_t>(w) * h);
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < h; ++y) f[static_cast<size_t>(x) * h + y] = rng.normal();

  fft::cvec F;
  fft::forward2d(f, F, w, h);
  for (int x = 0; x < w; ++x) {
    const double wx = kTwoPi * (x <= w / 2 ? x : x - w) / w;
    for (int y = 0; y < h; ++y) {
      const double wy = kTwoPi * (y <= h / 2 ? y : y - h) / h;
      const double r = std::sqrt(wx * wx + wy * wy);
      F[static_cast<size_t>(x) * h + y] *= r > 0.0 ? std::pow(r, -spec.alpha / 2.0) : 0.0;
    }
  }
  fft::inverse2d(F, f, w, h);

  Raster img(w, h);
  for (size_t i = 0; i < img.data.size(); ++i) img.data[i] = f[i].real();
  normalize_unit(img);
  return img;
}

Raster gen_bars(const TextureSpec& spec) {
  const int w = spec.width, h = spec.height;
  const BarParams& bp = spec.bars;
  if (bp.n_bars < 1 || bp.angles_deg.empty())
    throw std::invalid_argument("bars: need n_bars >= 1 and a nonempty angle set");
  Rng rng(spec.seed);
  Raster img(w, h);

  const double rad = bp.width / 2.0;
  const int ir = static_cast<int>(std::ceil(rad));
  for (int n = 0; n < bp.n_bars; ++n) {
    const double cx = rng.uniform(0.0, w);
    const double cy = rng.uniform(0.0, h);
    const double ang = bp.angles_deg[static_cast<size_t>(rng.uniform_int(
                           static_cast<int>(bp.angles_deg.size())))] *
                       kTwoPi / 360.0;
    const double dx = std::cos(ang), dy = std::sin(ang);
    // stamp discs along the segment; union, not sum
    for (double t = -bp.length / 2.0; t <= bp.length / 2.0; t += 0.5) {
      const double px = cx + t * dx, py = cy + t * dy;
      const int x0 = static_cast<int>(std::floor(px));
      const int y0 = static_cast<int>(std::floor(py));
      for (int x = x0 - ir; x <= x0 + ir + 1; ++x)
        for (int y = y0 - ir; y <= y0 + ir + 1; ++y) {
          const double ddx = x - px, ddy = y - py;
          if (ddx * ddx + ddy * ddy > rad * rad) continue;
          img.at(((x % w) + w) % w, ((y % h) + h) % h) = 1.0;  // periodic wrap
        }
    }
  }
  normalize_unit(img);
  return img;
}

}  // namespace

Raster gen_texture(const TextureSpec& spec) {
  if (spec.width < 2 || spec.height < 2) throw std::invalid_argument("texture size too small");
  switch (spec.kind) {
    case TextureKind::gaussian_field:
      return gen_gaussian_field(spec);
    case TextureKind::bars:
      return gen_bars(spec);
    case TextureKind::phase_scrambled_of: {
      if (!spec.source) throw std::invalid_argument("phase_scrambled_of: missing source spec");
      return phase_scramble(gen_texture(*spec.source), spec.seed);
    }
  }
  throw std::invalid_argument("unknown texture kind");
}

Raster phase_scramble(const Raster& u, uint64_t seed) {
  if (!u.finite()) throw std::invalid_argument("phase_scramble: non-finite input");
  const int w = u.width, h = u.height;
  fft::cvec f(u.data.begin(), u.data.end()), F;
  fft::forward2d(f, F, w, h);

  Rng rng(seed);
  fft::cvec G(F.size());
  for (int x = 0; x < w; ++x) {
    const int xc = (w - x) % w;
    for (int y = 0; y < h; ++y) {
      const int yc = (h - y) % h;
      const size_t i = static_cast<size_t>(x) * h + y;
      const size_t ic = static_cast<size_t>(xc) * h + yc;
      if (ic == i) {
        G[i] = F[i];  // DC / Nyquist bins stay real and untouched
      } else if (i < ic) {
        const double th = rng.uniform(0.0, kTwoPi);
        const std::complex<double> ph(std::cos(th), std::sin(th));
        G[i] = std::abs(F[i]) * ph;
        G[ic] = std::abs(F[ic]) * std::conj(ph);
      }
    }
  }
  fft::inverse2d(G, f, w, h);
  Raster out(w, h);
  for (size_t i = 0; i < out.data.size(); ++i) out.data[i] = f[i].real();
  return out;
}

namespace {

/// Population z-score of each column; constant columns are left at zero.
Eigen::MatrixXd zscore_cols(const Eigen::MatrixXd& X) {
  Eigen::MatrixXd Z = X.rowwise() - X.colwise().mean();
  for (long c = 0; c < Z.cols(); ++c) {
    const double sd = std::sqrt(Z.col(c).squaredNorm() / static_cast<double>(Z.rows()));
    if (sd > 0.0) Z.col(c) /= sd;
  }
  return Z;
}

}  // namespace

PlantedVoxels gen_voxels(const Eigen::MatrixXd& features, int n_low, const PlantSpec& plant) {
  if (!features.allFinite()) throw std::invalid_argument("gen_voxels: non-finite features");
  const long n = features.rows(), p = features.cols();
  if (n_low < 1 || n_low >= p) throw std::invalid_argument("gen_voxels: bad layer split");
  if (!(plant.snr > 0.0)) throw std::invalid_argument("gen_voxels: snr must be positive (inf = noiseless)");
  const long V = static_cast<long>(plant.kinds.size());
  if (V < 1) throw std::invalid_argument("gen_voxels: no voxels requested");

  const Eigen::MatrixXd Z = zscore_cols(features);
  const Eigen::MatrixXd Xlow = Z.leftCols(n_low);         // layer 0 + layer 1
  const Eigen::MatrixXd X1 = Z.middleCols(1, n_low - 1);  // layer 1 only
  // Residualize the layer-2 block against layers 0/1 so the planted layer-2
  // signal is not linearly recoverable from the low-order features.
  const Eigen::MatrixXd A =
      Xlow.colPivHouseholderQr().solve(Z.rightCols(p - n_low));  // n_low x p2
  const Eigen::MatrixXd X2 = Z.rightCols(p - n_low) - Xlow * A;

  PlantedVoxels out;
  out.responses.resize(n, V);
  out.beta = Eigen::MatrixXd::Zero(p, V);
  out.noise_sd.resize(V);
  out.kinds = plant.kinds;
  out.seed = plant.seed;
  out.snr = plant.snr;

  for (long v = 0; v < V; ++v) {
    const PlantKind kind = plant.kinds[static_cast<size_t>(v)];
    Rng rng = Rng::substream(plant.seed, static_cast<uint64_t>(v));

    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    double noise_sd = 1.0;  // null voxels: unit-variance noise
    if (kind != PlantKind::null_voxel) {
      long k1 = 0, k2 = 0;
      if (kind != PlantKind::layer2_only) k1 = X1.cols();
      if (kind != PlantKind::layer1_only) k2 = X2.cols();
      Eigen::MatrixXd S(n, k1 + k2);
      if (k1) S.leftCols(k1) = X1;
      if (k2) S.rightCols(k2) = X2;

      Eigen::VectorXd g(k1 + k2);
      for (long i = 0; i < g.size(); ++i) g(i) = rng.normal();
      // covariance-weighted coefficients: put the signal along directions the
      // feature sample covariance actually spans
      const Eigen::VectorXd b = S.transpose() * (S * g) / static_cast<double>(n);
      const Eigen::VectorXd sig = S * b;

      const double mu = sig.mean();
      const double var = (sig.array() - mu).square().sum() / static_cast<double>(n);
      if (var <= 0.0) throw std::runtime_error("gen_voxels: planted signal has zero variance");
      noise_sd = std::isinf(plant.snr) ? 0.0 : std::sqrt(var / plant.snr);
      y = sig;

      // map back to coefficients on the z-scored feature columns
      if (k1) out.beta.block(1, v, n_low - 1, 1) = b.head(k1);
      if (k2) {
        out.beta.block(n_low, v, p - n_low, 1) = b.tail(k2);
        out.beta.block(0, v, n_low, 1) -= A * b.tail(k2);
      }
    }
    for (long i = 0; i < n; ++i) y(i) += noise_sd * rng.normal();
    out.responses.col(v) = y;
    out.noise_sd(v) = noise_sd;
  }
  return out;
}

SessionLabels gen_session_labels(int n_images, int n_sessions, int blocks_per_session) {
  if (n_images < 1 || n_sessions < 1 || blocks_per_session < 1)
    throw std::invalid_argument("gen_session_labels: counts must be positive");
  if (n_images % n_sessions != 0)
    throw std::invalid_argument("gen_session_labels: n_images not divisible by n_sessions");
  const int per = n_images / n_sessions;
  SessionLabels out;
  out.session.reserve(static_cast<size_t>(n_images));
  out.block.reserve(static_cast<size_t>(n_images));
  for (int i = 0; i < n_images; ++i) {
    out.session.push_back(i / per + 1);
    out.block.push_back((i % per) % blocks_per_session + 1);
  }
  return out;
}

}  // namespace tiscat
