#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "core/raster.hpp"

namespace tiscat {

/// Build parameters for a Morlet bank. sigma0/xi0/slant describe the mother
/// wavelet: Gaussian envelope std (pixels), center frequency magnitude
/// (radians/pixel) and envelope anisotropy. slant <= 0 means "use 4/L".
struct FilterParams {
  int J = 5;
  int L = 4;
  int width = 128;
  int height = 128;
  double sigma0 = 1.5;
  double xi0 = 3.0 * std::numbers::pi / 4.0;
  double slant = 0.0;

  double effective_slant() const { return slant > 0.0 ? slant : 4.0 / static_cast<double>(L); }
  void validate() const;
  /// True when (J, L) is outside the standard grid J in {4,5,6}, L in {2,4,6,8};
  /// still accepted, but callers may emit a diagnostic note.
  bool nonstandard_grid() const;
};

/// One frequency-domain filter on the FFT grid (row-major, x-major like Raster).
/// Spectra of this Morlet family are real-valued; stored as complex per contract.
struct Filter {
  double gamma = 0.0;  // orientation, degrees in [0, 180)
  int j = 0;           // scale index, 0 = finest
  int width = 0;
  int height = 0;
  std::vector<std::complex<double>> spectrum;

  double max_abs() const;
  Raster magnitude() const;
};

struct FilterBank {
  FilterParams params;
  std::vector<Filter> filters;  // ordered j-major, gamma-minor
};

struct LPReport {
  double a_min = 0.0;
  double a_max = 0.0;
  double r_lo = 0.0;
  double r_hi = 0.0;
};

/// j=0 filter for one orientation.
Filter make_mother_morlet(const FilterParams& params, double gamma_deg);

Filter make_scaled_morlet(const FilterParams& params, double gamma_deg, int j);

FilterBank build_filter_bank(const FilterParams& params);

/// Littlewood-Paley coverage A(w) = sum |psi_hat(w)|^2 + |psi_hat(-w)|^2 over
/// the bank, reported as min/max over grid points with radius in [r_lo, r_hi].
LPReport littlewood_paley(const FilterBank& bank, double r_lo, double r_hi);

/// cos/sin of an angle in degrees, exact at multiples of 90.
double cos_deg(double deg);
double sin_deg(double deg);

}  // namespace tiscat
