#include "core/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace tiscat::fft {

namespace {

// FFTW plan creation is not thread-safe; new-array execution is. Plans are
// created with FFTW_UNALIGNED so they can run on any caller buffer.
std::mutex plan_mutex;

fftw_plan get_plan(int w, int h, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_tuple(w, h, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> scratch(static_cast<size_t>(w) * h);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  // Raster layout is x-major with y contiguous, so FFTW sees (n0=w, n1=h).
  fftw_plan plan = fftw_plan_dft_2d(w, h, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) throw std::runtime_error("fftw plan creation failed");
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

// Plans are created in-place, so execution is always in-place on `out`.
void forward2d(const cvec& in, cvec& out, int w, int h) {
  if (in.size() != static_cast<size_t>(w) * h) throw std::invalid_argument("fft: size mismatch");
  if (&out != &in) out = in;
  fftw_plan plan = get_plan(w, h, FFTW_FORWARD);
  auto* p = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, p, p);
}

void inverse2d(const cvec& in, cvec& out, int w, int h) {
  if (in.size() != static_cast<size_t>(w) * h) throw std::invalid_argument("fft: size mismatch");
  if (&out != &in) out = in;
  fftw_plan plan = get_plan(w, h, FFTW_BACKWARD);
  auto* p = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, p, p);
  const double scale = 1.0 / (static_cast<double>(w) * h);
  for (auto& v : out) v *= scale;
}

}  // namespace tiscat::fft
