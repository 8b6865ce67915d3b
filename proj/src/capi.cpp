#include "tiscat.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include <json.hpp>

#include "core/decoding.hpp"
#include "core/encoding.hpp"
#include "core/filterbank.hpp"
#include "core/io.hpp"
#include "core/scattering.hpp"
#include "core/stats.hpp"
#include "core/synth.hpp"

using json = nlohmann::json;

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

/// Maps C++ exceptions onto the status-code contract: invalid_argument /
/// domain_error -> TSC_EINVAL, everything else -> TSC_ERUNTIME.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(TSC_EINVAL, e.what());
  } catch (const std::domain_error& e) {
    return fail(TSC_EINVAL, e.what());
  } catch (const std::exception& e) {
    return fail(TSC_ERUNTIME, e.what());
  } catch (...) {
    return fail(TSC_ERUNTIME, "unknown error");
  }
}

int require(bool cond, const char* msg) {
  if (cond) return TSC_OK;
  throw std::invalid_argument(msg);
}

tiscat::FilterParams to_params(const tsc_filter_params* p) {
  require(p != nullptr, "null filter params");
  tiscat::FilterParams out;
  out.J = p->J;
  out.L = p->L;
  out.width = p->width;
  out.height = p->height;
  out.sigma0 = p->sigma0;
  out.xi0 = p->xi0;
  out.slant = p->slant;
  return out;
}

/// C API images are raster-scan (y outer); Raster stores x-major.
tiscat::Raster to_raster(const double* image, int w, int h) {
  require(image != nullptr, "null image buffer");
  tiscat::Raster r(w, h);
  size_t i = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) r.at(x, y) = image[i++];
  return r;
}

void from_raster(const tiscat::Raster& r, double* out) {
  size_t i = 0;
  for (int y = 0; y < r.height; ++y)
    for (int x = 0; x < r.width; ++x) out[i++] = r.at(x, y);
}

double* alloc_doubles(size_t n) {
  auto* p = static_cast<double*>(std::malloc(n * sizeof(double)));
  if (!p) throw std::runtime_error("out of memory");
  return p;
}

int* alloc_ints(size_t n) {
  auto* p = static_cast<int*>(std::malloc(n * sizeof(int)));
  if (!p) throw std::runtime_error("out of memory");
  return p;
}

Eigen::MatrixXd to_matrix(const double* data, int rows, int cols, const char* what) {
  require(data != nullptr, what);
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = data[static_cast<size_t>(r) * cols + c];
  return m;
}

void from_matrix(const Eigen::MatrixXd& m, double* out) {
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c) out[static_cast<size_t>(r) * m.cols() + c] = m(r, c);
}

tiscat::TextureSpec parse_texture_spec(const json& j) {
  require(j.is_object(), "texture spec must be a JSON object");
  tiscat::TextureSpec spec;
  const std::string kind = j.value("kind", "");
  if (kind == "gaussian_field")
    spec.kind = tiscat::TextureKind::gaussian_field;
  else if (kind == "bars")
    spec.kind = tiscat::TextureKind::bars;
  else if (kind == "phase_scrambled_of")
    spec.kind = tiscat::TextureKind::phase_scrambled_of;
  else
    throw std::invalid_argument("texture spec: unknown kind '" + kind + "'");

  for (const auto& [key, val] : j.items()) {
    if (key == "kind") {
    } else if (key == "width") {
      spec.width = val.get<int>();
    } else if (key == "height") {
      spec.height = val.get<int>();
    } else if (key == "alpha") {
      spec.alpha = val.get<double>();
    } else if (key == "seed") {
      spec.seed = val.get<uint64_t>();
    } else if (key == "n_bars") {
      spec.bars.n_bars = val.get<int>();
    } else if (key == "length") {
      spec.bars.length = val.get<double>();
    } else if (key == "bar_width") {
      spec.bars.width = val.get<double>();
    } else if (key == "angles_deg") {
      spec.bars.angles_deg = val.get<std::vector<double>>();
    } else if (key == "source") {
      spec.source = std::make_shared<tiscat::TextureSpec>(parse_texture_spec(val));
    } else {
      throw std::invalid_argument("texture spec: unknown key '" + key + "'");
    }
  }
  if (spec.kind == tiscat::TextureKind::phase_scrambled_of && !spec.source)
    throw std::invalid_argument("texture spec: phase_scrambled_of needs a source");
  if (spec.source && spec.kind == tiscat::TextureKind::phase_scrambled_of) {
    spec.width = spec.source->width;
    spec.height = spec.source->height;
  }
  return spec;
}

}  // namespace

extern "C" {

const char* tsc_last_error(void) { return g_last_error.c_str(); }

void tsc_free(void* p) { std::free(p); }

void tsc_free_strings(char** strings, int count) {
  if (!strings) return;
  for (int i = 0; i < count; ++i) std::free(strings[i]);
  std::free(strings);
}

int tsc_filter_params_default(tsc_filter_params* params) {
  return guarded([&] {
    require(params != nullptr, "null params output");
    const tiscat::FilterParams d;
    params->J = d.J;
    params->L = d.L;
    params->width = d.width;
    params->height = d.height;
    params->sigma0 = d.sigma0;
    params->xi0 = d.xi0;
    params->slant = d.slant;
    return TSC_OK;
  });
}

struct tsc_filterbank {
  tiscat::FilterBank bank;
};

int tsc_filterbank_create(const tsc_filter_params* params, tsc_filterbank** out) {
  return guarded([&] {
    require(out != nullptr, "null filterbank output");
    auto bank = tiscat::build_filter_bank(to_params(params));
    *out = new tsc_filterbank{std::move(bank)};
    return TSC_OK;
  });
}

void tsc_filterbank_destroy(tsc_filterbank* fb) { delete fb; }

int tsc_filterbank_count(const tsc_filterbank* fb, int* count) {
  return guarded([&] {
    require(fb != nullptr && count != nullptr, "null argument");
    *count = static_cast<int>(fb->bank.filters.size());
    return TSC_OK;
  });
}

int tsc_filterbank_filter_info(const tsc_filterbank* fb, int index, int* j, double* gamma_deg) {
  return guarded([&] {
    require(fb != nullptr, "null filterbank");
    require(index >= 0 && index < static_cast<int>(fb->bank.filters.size()),
            "filter index out of range");
    const auto& f = fb->bank.filters[static_cast<size_t>(index)];
    if (j) *j = f.j;
    if (gamma_deg) *gamma_deg = f.gamma;
    return TSC_OK;
  });
}

int tsc_filterbank_spectrum(const tsc_filterbank* fb, int index, double* re, double* im) {
  return guarded([&] {
    require(fb != nullptr && re != nullptr && im != nullptr, "null argument");
    require(index >= 0 && index < static_cast<int>(fb->bank.filters.size()),
            "filter index out of range");
    const auto& f = fb->bank.filters[static_cast<size_t>(index)];
    size_t i = 0;
    for (int y = 0; y < f.height; ++y)
      for (int x = 0; x < f.width; ++x) {
        const auto v = f.spectrum[static_cast<size_t>(x) * f.height + y];
        re[i] = v.real();
        im[i] = v.imag();
        ++i;
      }
    return TSC_OK;
  });
}

int tsc_filterbank_littlewood_paley(const tsc_filterbank* fb, double r_lo, double r_hi,
                                    double* a_min, double* a_max) {
  return guarded([&] {
    require(fb != nullptr, "null filterbank");
    const auto rep = tiscat::littlewood_paley(fb->bank, r_lo, r_hi);
    if (a_min) *a_min = rep.a_min;
    if (a_max) *a_max = rep.a_max;
    return TSC_OK;
  });
}

int tsc_feature_count(const tsc_filter_params* params, int M, int* count) {
  return guarded([&] {
    require(count != nullptr, "null count output");
    tiscat::ScatteringConfig cfg{M, to_params(params)};
    cfg.validate();
    *count = static_cast<int>(tiscat::feature_count(cfg));
    return TSC_OK;
  });
}

int tsc_feature_labels(const tsc_filter_params* params, int M, char*** labels, int* count) {
  return guarded([&] {
    require(labels != nullptr && count != nullptr, "null output");
    tiscat::ScatteringConfig cfg{M, to_params(params)};
    cfg.validate();
    const auto paths = tiscat::feature_paths(cfg);
    auto** out = static_cast<char**>(std::malloc(paths.size() * sizeof(char*)));
    if (!out) throw std::runtime_error("out of memory");
    for (size_t i = 0; i < paths.size(); ++i) {
      const std::string s = paths[i].label();
      out[i] = static_cast<char*>(std::malloc(s.size() + 1));
      if (!out[i]) {
        tsc_free_strings(out, static_cast<int>(i));
        throw std::runtime_error("out of memory");
      }
      std::memcpy(out[i], s.c_str(), s.size() + 1);
    }
    *labels = out;
    *count = static_cast<int>(paths.size());
    return TSC_OK;
  });
}

int tsc_scatter(const tsc_filter_params* params, int M, const double* image, int width,
                int height, double* features) {
  return guarded([&] {
    require(features != nullptr, "null feature output");
    const tiscat::ScatteringConfig cfg{M, to_params(params)};
    const auto res = tiscat::scatter(to_raster(image, width, height), cfg);
    std::memcpy(features, res.values.data(), res.values.size() * sizeof(double));
    return TSC_OK;
  });
}

int tsc_batch_scatter(const tsc_filter_params* params, int M, const double* images,
                      int n_images, int width, int height, int threads, double* features) {
  return guarded([&] {
    require(images != nullptr && features != nullptr, "null argument");
    require(n_images > 0, "need at least one image");
    const tiscat::ScatteringConfig cfg{M, to_params(params)};
    std::vector<tiscat::Raster> rasters;
    rasters.reserve(static_cast<size_t>(n_images));
    const size_t px = static_cast<size_t>(width) * height;
    for (int i = 0; i < n_images; ++i) rasters.push_back(to_raster(images + i * px, width, height));
    const auto mat = tiscat::batch_scatter(rasters, cfg, threads);
    std::memcpy(features, mat.values.data(), mat.values.size() * sizeof(double));
    return TSC_OK;
  });
}

int tsc_energy_profile(const tsc_filter_params* params, const double* image, int width,
                       int height, double* e_leq) {
  return guarded([&] {
    require(e_leq != nullptr, "null output");
    const tiscat::ScatteringConfig cfg{2, to_params(params)};
    *e_leq = tiscat::energy_profile(to_raster(image, width, height), cfg).e_leq;
    return TSC_OK;
  });
}

int tsc_hrf_double_gamma(double t_seconds, double* value) {
  return guarded([&] {
    require(value != nullptr, "null output");
    *value = tiscat::hrf_double_gamma(t_seconds);
    return TSC_OK;
  });
}

int tsc_glm_betas(const double* bold, int t_len, int n_voxels, int n_images,
                  const int* event_image, const double* event_onset, int n_events, double tr,
                  double* betas) {
  return guarded([&] {
    require(event_image != nullptr && event_onset != nullptr && betas != nullptr,
            "null argument");
    const Eigen::MatrixXd B = to_matrix(bold, t_len, n_voxels, "null bold buffer");
    std::vector<std::pair<int, double>> events;
    events.reserve(static_cast<size_t>(n_events));
    for (int i = 0; i < n_events; ++i) events.emplace_back(event_image[i], event_onset[i]);
    from_matrix(tiscat::fit_glm_betas(B, n_images, events, tr), betas);
    return TSC_OK;
  });
}

int tsc_ridge_fit(const double* X, int n, int p, const double* y, double lambda,
                  double* weights, double* intercept) {
  return guarded([&] {
    require(y != nullptr && weights != nullptr && intercept != nullptr, "null argument");
    const Eigen::MatrixXd Xm = to_matrix(X, n, p, "null design buffer");
    const Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y, n);
    const auto fit = tiscat::ridge_fit(Xm, yv, lambda);
    Eigen::Map<Eigen::VectorXd>(weights, p) = fit.weights;
    *intercept = fit.intercept;
    return TSC_OK;
  });
}

int tsc_r2_score(const double* y_true, const double* y_pred, int n, double baseline, double* r2) {
  return guarded([&] {
    require(y_true != nullptr && y_pred != nullptr && r2 != nullptr, "null argument");
    *r2 = tiscat::r2_score(Eigen::Map<const Eigen::VectorXd>(y_true, n),
                           Eigen::Map<const Eigen::VectorXd>(y_pred, n), baseline);
    return TSC_OK;
  });
}

int tsc_count_unique(const int* values, int n, int* count) {
  return guarded([&] {
    require(values != nullptr && count != nullptr, "null argument");
    std::vector<int> v(values, values + n);
    std::sort(v.begin(), v.end());
    *count = static_cast<int>(std::unique(v.begin(), v.end()) - v.begin());
    return TSC_OK;
  });
}

int tsc_nested_cv_encode(const double* X, int n, int p, const double* Y, int n_voxels,
                         const int* session, const double* lambda_grid, int n_grid,
                         int shared_lambda, int threads, double* fold_r2, double* fold_lambda,
                         double* mean_r2) {
  return guarded([&] {
    require(session != nullptr && lambda_grid != nullptr, "null argument");
    const Eigen::MatrixXd Xm = to_matrix(X, n, p, "null feature buffer");
    const Eigen::MatrixXd Ym = to_matrix(Y, n, n_voxels, "null response buffer");
    tiscat::SessionLabels labels;
    labels.session.assign(session, session + n);
    labels.block.assign(static_cast<size_t>(n), 0);
    tiscat::NestedCVOptions opts;
    opts.shared_lambda = shared_lambda != 0;
    opts.threads = threads;
    const auto res = tiscat::nested_cv_encode(
        Xm, Ym, labels, std::vector<double>(lambda_grid, lambda_grid + n_grid), opts);
    if (fold_r2) from_matrix(res.fold_r2, fold_r2);
    if (fold_lambda) from_matrix(res.fold_lambda, fold_lambda);
    if (mean_r2) Eigen::Map<Eigen::VectorXd>(mean_r2, n_voxels) = res.mean_r2;
    return TSC_OK;
  });
}

int tsc_wilcoxon(const double* a, const double* b, int n, double* w_statistic,
                 double* p_two_sided, int* n_used, int* exact) {
  return guarded([&] {
    require(a != nullptr && b != nullptr, "null argument");
    const auto res = tiscat::wilcoxon_signed_rank(std::vector<double>(a, a + n),
                                                  std::vector<double>(b, b + n));
    if (w_statistic) *w_statistic = res.statistic;
    if (p_two_sided) *p_two_sided = res.p_two_sided;
    if (n_used) *n_used = res.n;
    if (exact) *exact = res.exact ? 1 : 0;
    return TSC_OK;
  });
}

int tsc_compare_models(const double* scores1, const double* scores2, int n, double threshold,
                       int top_k, double* delta, int* labels, int* scatter_voxels,
                       int* n_scatter) {
  return guarded([&] {
    require(scores1 != nullptr && scores2 != nullptr, "null argument");
    const auto map = tiscat::compare_models(std::vector<double>(scores1, scores1 + n),
                                            std::vector<double>(scores2, scores2 + n),
                                            threshold, top_k);
    for (int i = 0; i < n; ++i) {
      if (delta) delta[i] = map.delta[static_cast<size_t>(i)];
      if (labels) {
        switch (map.labels[static_cast<size_t>(i)]) {
          case tiscat::VoxelLabel::red: labels[i] = TSC_VOXEL_RED; break;
          case tiscat::VoxelLabel::blue: labels[i] = TSC_VOXEL_BLUE; break;
          default: labels[i] = TSC_VOXEL_UNLABELED; break;
        }
      }
    }
    if (scatter_voxels)
      std::memcpy(scatter_voxels, map.scatter_voxels.data(),
                  map.scatter_voxels.size() * sizeof(int));
    if (n_scatter) *n_scatter = static_cast<int>(map.scatter_voxels.size());
    return TSC_OK;
  });
}

int tsc_decode_cv(const double* activity, int n, int n_voxels, const int* labels,
                  const int* blocks, const double* lambda_grid, int n_grid, int threads,
                  double* fold_accuracy, int* flagged, double* mean_accuracy) {
  return guarded([&] {
    require(labels != nullptr && blocks != nullptr && lambda_grid != nullptr, "null argument");
    tiscat::LabeledActivity data;
    data.activity = to_matrix(activity, n, n_voxels, "null activity buffer");
    data.labels.assign(labels, labels + n);
    data.blocks.assign(blocks, blocks + n);
    tiscat::DecodeOptions opts;
    opts.threads = threads;
    const auto res = tiscat::block_cv_decode(
        data, std::vector<double>(lambda_grid, lambda_grid + n_grid), opts);
    if (fold_accuracy)
      std::memcpy(fold_accuracy, res.fold_accuracy.data(),
                  res.fold_accuracy.size() * sizeof(double));
    if (flagged) {
      for (size_t i = 0; i < res.fold_accuracy.size(); ++i) flagged[i] = 0;
      for (int f : res.flagged_folds) flagged[f] = 1;
    }
    if (mean_accuracy) *mean_accuracy = res.mean_accuracy;
    return TSC_OK;
  });
}

int tsc_gen_texture(const char* spec_json, double** image, int* width, int* height) {
  return guarded([&] {
    require(spec_json != nullptr && image != nullptr && width != nullptr && height != nullptr,
            "null argument");
    json j;
    try {
      j = json::parse(spec_json);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("texture spec: ") + e.what());
    }
    const auto img = tiscat::gen_texture(parse_texture_spec(j));
    double* out = alloc_doubles(img.size());
    from_raster(img, out);
    *image = out;
    *width = img.width;
    *height = img.height;
    return TSC_OK;
  });
}

int tsc_phase_scramble(const double* image, int width, int height, uint64_t seed, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    from_raster(tiscat::phase_scramble(to_raster(image, width, height), seed), out);
    return TSC_OK;
  });
}

int tsc_gen_voxels(const double* features, int n, int p, int n_low, const int* kinds,
                   int n_voxels, double snr, uint64_t seed, double* responses, double* beta,
                   double* noise_sd) {
  return guarded([&] {
    require(kinds != nullptr, "null kinds");
    require(n_voxels > 0, "need at least one voxel");
    tiscat::PlantSpec plant;
    plant.snr = snr;
    plant.seed = seed;
    plant.kinds.reserve(static_cast<size_t>(n_voxels));
    for (int v = 0; v < n_voxels; ++v) {
      switch (kinds[v]) {
        case TSC_PLANT_LAYER1: plant.kinds.push_back(tiscat::PlantKind::layer1_only); break;
        case TSC_PLANT_LAYER2: plant.kinds.push_back(tiscat::PlantKind::layer2_only); break;
        case TSC_PLANT_MIXED: plant.kinds.push_back(tiscat::PlantKind::mixed); break;
        case TSC_PLANT_NULL: plant.kinds.push_back(tiscat::PlantKind::null_voxel); break;
        default: throw std::invalid_argument("unknown plant kind code");
      }
    }
    const Eigen::MatrixXd F = to_matrix(features, n, p, "null feature buffer");
    const auto out = tiscat::gen_voxels(F, n_low, plant);
    if (responses) from_matrix(out.responses, responses);
    if (beta) from_matrix(out.beta, beta);
    if (noise_sd) Eigen::Map<Eigen::VectorXd>(noise_sd, n_voxels) = out.noise_sd;
    return TSC_OK;
  });
}

int tsc_gen_session_labels(int n_images, int n_sessions, int blocks_per_session,
                           int* session, int* block) {
  return guarded([&] {
    require(session != nullptr && block != nullptr, "null output");
    const auto labels = tiscat::gen_session_labels(n_images, n_sessions, blocks_per_session);
    std::memcpy(session, labels.session.data(), labels.session.size() * sizeof(int));
    std::memcpy(block, labels.block.data(), labels.block.size() * sizeof(int));
    return TSC_OK;
  });
}

int tsc_write_raster_file(const char* path, const double* image, int width, int height) {
  return guarded([&] {
    require(path != nullptr, "null path");
    tiscat::io::write_raster(path, to_raster(image, width, height));
    return TSC_OK;
  });
}

int tsc_read_raster_file(const char* path, double** image, int* width, int* height) {
  return guarded([&] {
    require(path != nullptr && image != nullptr && width != nullptr && height != nullptr,
            "null argument");
    const auto img = tiscat::io::read_raster(path);
    double* out = alloc_doubles(img.size());
    from_raster(img, out);
    *image = out;
    *width = img.width;
    *height = img.height;
    return TSC_OK;
  });
}

int tsc_write_matrix_file(const char* path, const double* data, int rows, int cols) {
  return guarded([&] {
    require(path != nullptr, "null path");
    tiscat::io::write_matrix(path, to_matrix(data, rows, cols, "null matrix buffer"));
    return TSC_OK;
  });
}

int tsc_read_matrix_file(const char* path, double** data, int* rows, int* cols) {
  return guarded([&] {
    require(path != nullptr && data != nullptr && rows != nullptr && cols != nullptr,
            "null argument");
    const auto m = tiscat::io::read_matrix(path);
    double* out = alloc_doubles(static_cast<size_t>(m.rows()) * m.cols());
    from_matrix(m, out);
    *data = out;
    *rows = static_cast<int>(m.rows());
    *cols = static_cast<int>(m.cols());
    return TSC_OK;
  });
}

int tsc_write_matrix_csv(const char* path, const double* data, int rows, int cols,
                         const char* const* col_labels, int with_row_ids) {
  return guarded([&] {
    require(path != nullptr, "null path");
    std::vector<std::string> labels;
    labels.reserve(static_cast<size_t>(cols));
    for (int c = 0; c < cols; ++c)
      labels.push_back(col_labels ? std::string(col_labels[c]) : "c" + std::to_string(c));
    std::vector<std::string> row_ids;
    if (with_row_ids)
      for (int r = 0; r < rows; ++r) row_ids.push_back(std::to_string(r));
    tiscat::io::write_matrix_csv(path, to_matrix(data, rows, cols, "null matrix buffer"),
                                 labels, row_ids);
    return TSC_OK;
  });
}

int tsc_read_matrix_csv(const char* path, double** data, int* rows, int* cols) {
  return guarded([&] {
    require(path != nullptr && data != nullptr && rows != nullptr && cols != nullptr,
            "null argument");
    const auto m = tiscat::io::read_matrix_csv(path);
    double* out = alloc_doubles(static_cast<size_t>(m.rows()) * m.cols());
    from_matrix(m, out);
    *data = out;
    *rows = static_cast<int>(m.rows());
    *cols = static_cast<int>(m.cols());
    return TSC_OK;
  });
}

int tsc_write_sessions_csv(const char* path, const int* session, const int* block, int n) {
  return guarded([&] {
    require(path != nullptr && session != nullptr && block != nullptr, "null argument");
    tiscat::SessionLabels labels;
    labels.session.assign(session, session + n);
    labels.block.assign(block, block + n);
    tiscat::io::write_sessions_csv(path, labels);
    return TSC_OK;
  });
}

int tsc_read_sessions_csv(const char* path, int** session, int** block, int* n) {
  return guarded([&] {
    require(path != nullptr && session != nullptr && block != nullptr && n != nullptr,
            "null argument");
    const auto labels = tiscat::io::read_sessions_csv(path);
    int* s = alloc_ints(labels.session.size());
    int* b = alloc_ints(labels.block.size());
    std::memcpy(s, labels.session.data(), labels.session.size() * sizeof(int));
    std::memcpy(b, labels.block.data(), labels.block.size() * sizeof(int));
    *session = s;
    *block = b;
    *n = labels.n_images();
    return TSC_OK;
  });
}

int tsc_write_labels_csv(const char* path, const int* labels, int n) {
  return guarded([&] {
    require(path != nullptr && labels != nullptr, "null argument");
    tiscat::io::write_labels_csv(path, std::vector<int>(labels, labels + n));
    return TSC_OK;
  });
}

int tsc_read_labels_csv(const char* path, int** labels, int* n) {
  return guarded([&] {
    require(path != nullptr && labels != nullptr && n != nullptr, "null argument");
    const auto v = tiscat::io::read_labels_csv(path);
    int* out = alloc_ints(v.size());
    std::memcpy(out, v.data(), v.size() * sizeof(int));
    *labels = out;
    *n = static_cast<int>(v.size());
    return TSC_OK;
  });
}

}  // extern "C"
