#pragma once

#include <complex>
#include <vector>

namespace tiscat::fft {

using cvec = std::vector<std::complex<double>>;

// In/out are w*h row-major (x-major, matching Raster). Unnormalized forward,
// inverse carries the 1/(w*h) factor. Thread-safe.
void forward2d(const cvec& in, cvec& out, int w, int h);
void inverse2d(const cvec& in, cvec& out, int w, int h);

}  // namespace tiscat::fft
