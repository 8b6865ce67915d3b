#include "core/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tiscat {

namespace {

constexpr double kPi = std::numbers::pi;

double wrapped_freq(int index, int n) {
  int s = (2 * index < n) ? index : index - n;
  return 2.0 * kPi * static_cast<double>(s) / static_cast<double>(n);
}

}  // namespace

double cos_deg(double deg) {
  double d = std::fmod(deg, 360.0);
  if (d < 0) d += 360.0;
  if (d == 0.0) return 1.0;
  if (d == 90.0) return 0.0;
  if (d == 180.0) return -1.0;
  if (d == 270.0) return 0.0;
  return std::cos(d * kPi / 180.0);
}

double sin_deg(double deg) { return cos_deg(deg - 90.0); }

void FilterParams::validate() const {
  if (J < 1) throw std::invalid_argument("J must be >= 1");
  if (L < 1) throw std::invalid_argument("L must be >= 1");
  if (width < 8 || height < 8) throw std::invalid_argument("raster too small for mother wavelet");
  if (sigma0 <= 0.0) throw std::invalid_argument("sigma0 must be positive");
  if (!(xi0 > 0.0 && xi0 < kPi)) throw std::invalid_argument("xi0 must lie in (0, pi)");
  if (effective_slant() <= 0.0) throw std::invalid_argument("slant must be positive");
}

bool FilterParams::nonstandard_grid() const {
  bool j_ok = J >= 4 && J <= 6;
  bool l_ok = L == 2 || L == 4 || L == 6 || L == 8;
  return !(j_ok && l_ok);
}

double Filter::max_abs() const {
  double m = 0.0;
  for (const auto& v : spectrum) m = std::max(m, std::abs(v));
  return m;
}

Raster Filter::magnitude() const {
  Raster r(width, height);
  for (size_t i = 0; i < spectrum.size(); ++i) r.data[i] = std::abs(spectrum[i]);
  return r;
}

Filter make_scaled_morlet(const FilterParams& params, double gamma_deg, int j) {
  params.validate();
  const int w = params.width, h = params.height;
  const double c = cos_deg(gamma_deg), s = sin_deg(gamma_deg);
  const double xi = params.xi0;
  const double sig_par = params.sigma0;
  const double sig_perp = params.sigma0 / params.effective_slant();
  // beta makes the continuous mother zero-sum; C normalizes its peak to 1.
  const double beta = std::exp(-0.5 * sig_par * sig_par * xi * xi);
  const double C = 1.0 / (1.0 - beta * beta);
  const double scale = std::pow(2.0, j);

  auto envelope = [&](double vx, double vy) {
    double a = vx * c + vy * s;
    double b = -vx * s + vy * c;
    return std::exp(-0.5 * (sig_par * sig_par * a * a + sig_perp * sig_perp * b * b));
  };

  Filter f;
  f.gamma = gamma_deg;
  f.j = j;
  f.width = w;
  f.height = h;
  f.spectrum.resize(static_cast<size_t>(w) * h);

  const double xix = xi * c, xiy = xi * s;
  for (int x = 0; x < w; ++x) {
    const double wx = wrapped_freq(x, w);
    for (int y = 0; y < h; ++y) {
      const double wy = wrapped_freq(y, h);
      // analytic convention: keep the +xi half-plane only
      if (wx * c + wy * s <= 0.0) {
        f.spectrum[static_cast<size_t>(x) * h + y] = 0.0;
        continue;
      }
      double v = 0.0;
      for (int k1 = -1; k1 <= 1; ++k1) {
        for (int k2 = -1; k2 <= 1; ++k2) {
          const double vx = scale * (wx + 2.0 * kPi * k1);
          const double vy = scale * (wy + 2.0 * kPi * k2);
          v += C * (envelope(vx - xix, vy - xiy) - beta * envelope(vx, vy));
        }
      }
      f.spectrum[static_cast<size_t>(x) * h + y] = v;
    }
  }
  return f;
}

Filter make_mother_morlet(const FilterParams& params, double gamma_deg) {
  return make_scaled_morlet(params, gamma_deg, 0);
}

FilterBank build_filter_bank(const FilterParams& params) {
  params.validate();
  const double coarsest = std::pow(2.0, params.J - 1) * params.sigma0;
  if (coarsest > static_cast<double>(std::min(params.width, params.height)) / 2.0)
    throw std::invalid_argument("J too large for image size");

  FilterBank bank;
  bank.params = params;
  bank.filters.reserve(static_cast<size_t>(params.J) * params.L);
  for (int j = 0; j < params.J; ++j)
    for (int k = 0; k < params.L; ++k)
      bank.filters.push_back(make_scaled_morlet(params, k * 180.0 / params.L, j));
  return bank;
}

LPReport littlewood_paley(const FilterBank& bank, double r_lo, double r_hi) {
  if (!(r_lo > 0.0 && r_lo < r_hi && r_hi <= kPi + 1e-12))
    throw std::invalid_argument("annulus must satisfy 0 < r_lo < r_hi <= pi");
  const int w = bank.params.width, h = bank.params.height;

  std::vector<double> A(static_cast<size_t>(w) * h, 0.0);
  for (const auto& f : bank.filters) {
    for (int x = 0; x < w; ++x) {
      const int xr = (w - x) % w;
      for (int y = 0; y < h; ++y) {
        const int yr = (h - y) % h;
        const double m = std::abs(f.spectrum[static_cast<size_t>(x) * h + y]);
        const double mr = std::abs(f.spectrum[static_cast<size_t>(xr) * h + yr]);
        A[static_cast<size_t>(x) * h + y] += m * m + mr * mr;
      }
    }
  }

  LPReport rep;
  rep.r_lo = r_lo;
  rep.r_hi = r_hi;
  bool any = false;
  for (int x = 0; x < w; ++x) {
    const double wx = wrapped_freq(x, w);
    for (int y = 0; y < h; ++y) {
      const double wy = wrapped_freq(y, h);
      const double r = std::hypot(wx, wy);
      if (r < r_lo || r > r_hi) continue;
      const double a = A[static_cast<size_t>(x) * h + y];
      if (!any) {
        rep.a_min = rep.a_max = a;
        any = true;
      } else {
        rep.a_min = std::min(rep.a_min, a);
        rep.a_max = std::max(rep.a_max, a);
      }
    }
  }
  if (!any) throw std::invalid_argument("annulus contains no grid points");
  return rep;
}

}  // namespace tiscat
