// Exercises the shared library strictly through the public C header.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "tiscat.h"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tiscat_capi_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::vector<double> random_image(int w, int h, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> img(static_cast<size_t>(w) * h);
  for (double& v : img) v = dist(gen);
  return img;
}

}  // namespace

TEST_CASE("defaults and error reporting") {
  tsc_filter_params p;
  REQUIRE(tsc_filter_params_default(&p) == TSC_OK);
  CHECK(p.J == 5);
  CHECK(p.L == 4);
  CHECK(p.width == 128);
  CHECK(p.height == 128);
  CHECK(p.sigma0 == doctest::Approx(1.5));
  CHECK(p.xi0 == doctest::Approx(3.0 * 3.14159265358979 / 4.0).epsilon(1e-6));

  CHECK(tsc_filter_params_default(nullptr) == TSC_EINVAL);
  CHECK(std::strlen(tsc_last_error()) > 0);
}

TEST_CASE("filter bank handle lifecycle") {
  tsc_filter_params p;
  tsc_filter_params_default(&p);
  p.width = p.height = 64;
  p.J = 3;
  p.L = 2;
  tsc_filterbank* fb = nullptr;
  REQUIRE(tsc_filterbank_create(&p, &fb) == TSC_OK);
  REQUIRE(fb != nullptr);

  int count = 0;
  CHECK(tsc_filterbank_count(fb, &count) == TSC_OK);
  CHECK(count == 6);

  int j = -1;
  double gamma = -1.0;
  CHECK(tsc_filterbank_filter_info(fb, 0, &j, &gamma) == TSC_OK);
  CHECK(j == 0);
  CHECK(gamma == 0.0);
  CHECK(tsc_filterbank_filter_info(fb, 1, &j, &gamma) == TSC_OK);
  CHECK(gamma == doctest::Approx(90.0));
  CHECK(tsc_filterbank_filter_info(fb, 99, &j, &gamma) == TSC_EINVAL);

  std::vector<double> re(64 * 64), im(64 * 64);
  CHECK(tsc_filterbank_spectrum(fb, 0, re.data(), im.data()) == TSC_OK);
  double max_im = 0.0, max_re = 0.0;
  for (size_t i = 0; i < re.size(); ++i) {
    max_im = std::max(max_im, std::abs(im[i]));
    max_re = std::max(max_re, std::abs(re[i]));
  }
  CHECK(max_im == 0.0);  // this Morlet family is real in frequency
  CHECK(max_re > 0.5);
  CHECK(std::abs(re[0]) <= 1e-6 * max_re);  // zero mean at DC

  double a_min = -1.0, a_max = -1.0;
  CHECK(tsc_filterbank_littlewood_paley(fb, 0.4, 2.0, &a_min, &a_max) == TSC_OK);
  CHECK(a_min > 0.0);
  CHECK(a_max >= a_min);
  tsc_filterbank_destroy(fb);

  tsc_filter_params bad = p;
  bad.J = 0;
  tsc_filterbank* none = nullptr;
  CHECK(tsc_filterbank_create(&bad, &none) == TSC_EINVAL);
  CHECK(none == nullptr);
}

TEST_CASE("feature counts and labels") {
  tsc_filter_params p;
  tsc_filter_params_default(&p);
  int count = 0;
  CHECK(tsc_feature_count(&p, 2, &count) == TSC_OK);
  CHECK(count == 181);
  CHECK(tsc_feature_count(&p, 1, &count) == TSC_OK);
  CHECK(count == 21);
  CHECK(tsc_feature_count(&p, 3, &count) == TSC_EINVAL);

  char** labels = nullptr;
  int n_labels = 0;
  REQUIRE(tsc_feature_labels(&p, 2, &labels, &n_labels) == TSC_OK);
  REQUIRE(n_labels == 181);
  CHECK(std::string(labels[0]) == "m0");
  CHECK(std::string(labels[1]) == "m1_j0g0");
  CHECK(std::string(labels[180]).substr(0, 3) == "m2_");
  tsc_free_strings(labels, n_labels);
}

TEST_CASE("scatter and batch agree") {
  tsc_filter_params p;
  tsc_filter_params_default(&p);
  p.width = p.height = 32;
  p.J = 3;
  p.L = 2;
  int count = 0;
  REQUIRE(tsc_feature_count(&p, 2, &count) == TSC_OK);

  const std::vector<double> img_a = random_image(32, 32, 3);
  const std::vector<double> img_b = random_image(32, 32, 4);
  std::vector<double> fa(static_cast<size_t>(count)), fb_(static_cast<size_t>(count));
  REQUIRE(tsc_scatter(&p, 2, img_a.data(), 32, 32, fa.data()) == TSC_OK);
  REQUIRE(tsc_scatter(&p, 2, img_b.data(), 32, 32, fb_.data()) == TSC_OK);

  std::vector<double> both(img_a);
  both.insert(both.end(), img_b.begin(), img_b.end());
  std::vector<double> batch(static_cast<size_t>(2 * count));
  REQUIRE(tsc_batch_scatter(&p, 2, both.data(), 2, 32, 32, 2, batch.data()) == TSC_OK);
  for (int f = 0; f < count; ++f) {
    CHECK(batch[static_cast<size_t>(f)] == fa[static_cast<size_t>(f)]);
    CHECK(batch[static_cast<size_t>(count + f)] == fb_[static_cast<size_t>(f)]);
  }

  double e_leq = -1.0;
  REQUIRE(tsc_energy_profile(&p, img_a.data(), 32, 32, &e_leq) == TSC_OK);
  CHECK(e_leq >= 0.0);
  CHECK(e_leq <= 1.0);
}

TEST_CASE("encoding surface") {
  double v = -1.0;
  CHECK(tsc_hrf_double_gamma(0.0, &v) == TSC_OK);
  CHECK(v == 0.0);
  CHECK(tsc_hrf_double_gamma(5.0, &v) == TSC_OK);
  CHECK(v > 0.0);

  // hand-solvable ridge: orthogonal +-1 design
  const double X[8] = {1, 1, 1, -1, -1, 1, -1, -1};
  const double y[4] = {3.0, 1.0, -1.0, 1.0};
  double w[2] = {0, 0};
  double b = 0.0;
  REQUIRE(tsc_ridge_fit(X, 4, 2, y, 2.0, w, &b) == TSC_OK);
  CHECK(w[0] == doctest::Approx(4.0 / 6.0).epsilon(1e-12));
  CHECK(std::abs(w[1]) <= 1e-12);
  CHECK(b == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tsc_ridge_fit(X, 4, 2, y, -1.0, w, &b) == TSC_EINVAL);

  double r2 = 0.0;
  const double yt[3] = {1.0, 2.0, 3.0};
  CHECK(tsc_r2_score(yt, yt, 3, 2.0, &r2) == TSC_OK);
  CHECK(r2 == 1.0);
  const double flat[3] = {2.0, 2.0, 2.0};
  CHECK(tsc_r2_score(flat, yt, 3, 2.0, &r2) == TSC_EINVAL);
  CHECK(std::string(tsc_last_error()).find("degenerate") != std::string::npos);

  const int vals[6] = {3, 1, 3, 2, 1, 3};
  int uniq = 0;
  CHECK(tsc_count_unique(vals, 6, &uniq) == TSC_OK);
  CHECK(uniq == 3);
}

TEST_CASE("glm betas through the c api") {
  const double tr = 2.0;
  const int T = 60, n_images = 2;
  const int ev_img[2] = {0, 1};
  const double ev_onset[2] = {8.0, 61.0};
  std::vector<double> bold(static_cast<size_t>(T));
  for (int t = 0; t < T; ++t) {
    double h = 0.0;
    tsc_hrf_double_gamma(t * tr - 61.0, &h);
    bold[static_cast<size_t>(t)] = 2.5 * h + 1.0;
  }
  std::vector<double> betas(static_cast<size_t>(n_images));
  REQUIRE(tsc_glm_betas(bold.data(), T, 1, n_images, ev_img, ev_onset, 2, tr, betas.data()) ==
          TSC_OK);
  CHECK(std::abs(betas[0]) <= 1e-8);
  CHECK(betas[1] == doctest::Approx(2.5).epsilon(1e-8));
  CHECK(tsc_glm_betas(bold.data(), T, 1, n_images, ev_img, ev_onset, 2, 0.0, betas.data()) ==
        TSC_EINVAL);
}

TEST_CASE("nested cv encode through the c api") {
  std::mt19937 gen(8);
  std::normal_distribution<double> dist;
  const int n = 48, p = 4;
  std::vector<double> X(static_cast<size_t>(n) * p), Y(static_cast<size_t>(n));
  for (double& x : X) x = dist(gen);
  const double w[4] = {1.0, -2.0, 0.5, 0.0};
  for (int i = 0; i < n; ++i) {
    Y[static_cast<size_t>(i)] = 0.0;
    for (int f = 0; f < p; ++f) Y[static_cast<size_t>(i)] += X[static_cast<size_t>(i) * p + f] * w[f];
  }
  std::vector<int> session(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) session[static_cast<size_t>(i)] = i / 12 + 1;
  const double grid[3] = {1e-3, 1.0, 1e3};
  std::vector<double> fold_r2(4), fold_lambda(4);
  double mean_r2 = 0.0;
  REQUIRE(tsc_nested_cv_encode(X.data(), n, p, Y.data(), 1, session.data(), grid, 3, 0, 2,
                               fold_r2.data(), fold_lambda.data(), &mean_r2) == TSC_OK);
  CHECK(mean_r2 >= 0.99);
  CHECK(tsc_nested_cv_encode(X.data(), n, p, Y.data(), 1, session.data(), grid, 0, 0, 1, nullptr,
                             nullptr, &mean_r2) == TSC_EINVAL);
}

TEST_CASE("wilcoxon and model comparison") {
  const double a[5] = {1.0, 2.0, 3.0, 4.0, 5.0};
  const double b[5] = {0.5, 1.0, 2.0, 3.0, 4.0};
  double w = -1.0, pval = -1.0;
  int n_used = 0, exact = 0;
  REQUIRE(tsc_wilcoxon(a, b, 5, &w, &pval, &n_used, &exact) == TSC_OK);
  CHECK(w == 0.0);
  CHECK(pval == 0.0625);
  CHECK(n_used == 5);
  CHECK(exact == 1);
  CHECK(tsc_wilcoxon(a, a, 5, &w, &pval, &n_used, &exact) != TSC_OK);

  const double s1[4] = {0.2, 0.2, 0.2, 0.8};
  const double s2[4] = {0.26, 0.22, 0.1, 0.8};
  double delta[4];
  int labels[4], scatter[2], n_scatter = 0;
  REQUIRE(tsc_compare_models(s1, s2, 4, 0.05, 2, delta, labels, scatter, &n_scatter) == TSC_OK);
  CHECK(labels[0] == TSC_VOXEL_RED);
  CHECK(labels[1] == TSC_VOXEL_UNLABELED);
  CHECK(labels[2] == TSC_VOXEL_BLUE);
  CHECK(labels[3] == TSC_VOXEL_BLUE);
  CHECK(delta[0] == doctest::Approx(0.06).epsilon(1e-12));
  REQUIRE(n_scatter == 2);
  CHECK(scatter[0] == 3);  // highest scores1 first
}

TEST_CASE("decoding through the c api") {
  std::mt19937 gen(12);
  std::normal_distribution<double> noise(0.0, 0.2);
  const int n = 36, nv = 3;
  std::vector<double> activity(static_cast<size_t>(n) * nv);
  std::vector<int> labels(static_cast<size_t>(n)), blocks(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int c = i % 3;
    for (int f = 0; f < nv; ++f)
      activity[static_cast<size_t>(i) * nv + f] = (f == c ? 3.0 : 0.0) + noise(gen);
    labels[static_cast<size_t>(i)] = c;
    blocks[static_cast<size_t>(i)] = i / 9 + 1;
  }
  const double grid[2] = {0.1, 10.0};
  std::vector<double> fold_acc(4);
  std::vector<int> flagged(4);
  double mean_acc = 0.0;
  REQUIRE(tsc_decode_cv(activity.data(), n, nv, labels.data(), blocks.data(), grid, 2, 2,
                        fold_acc.data(), flagged.data(), &mean_acc) == TSC_OK);
  CHECK(mean_acc == 1.0);
  for (int f = 0; f < 4; ++f) CHECK(flagged[static_cast<size_t>(f)] == 0);
}

TEST_CASE("synthetic generators through the c api") {
  double* img = nullptr;
  int w = 0, h = 0;
  REQUIRE(tsc_gen_texture(R"({"kind":"gaussian_field","width":32,"height":32,"alpha":1.0,"seed":3})",
                          &img, &w, &h) == TSC_OK);
  REQUIRE(img != nullptr);
  CHECK(w == 32);
  CHECK(h == 32);
  double mean = 0.0;
  for (int i = 0; i < w * h; ++i) mean += img[i];
  CHECK(std::abs(mean / (w * h)) <= 1e-10);

  std::vector<double> scrambled(static_cast<size_t>(w) * h);
  REQUIRE(tsc_phase_scramble(img, w, h, 9, scrambled.data()) == TSC_OK);
  double smean = 0.0;
  for (double v : scrambled) smean += v;
  CHECK(smean / (w * h) == doctest::Approx(mean / (w * h)).epsilon(1e-9));
  tsc_free(img);

  double* none = nullptr;
  CHECK(tsc_gen_texture("{\"kind\":\"bars\",\"bogus\":1}", &none, &w, &h) == TSC_EINVAL);
  CHECK(none == nullptr);
  CHECK(tsc_gen_texture("not json", &none, &w, &h) != TSC_OK);

  // voxel planting
  std::mt19937 gen(5);
  std::normal_distribution<double> dist;
  const int n = 40, p = 8, n_low = 3;
  std::vector<double> features(static_cast<size_t>(n) * p);
  for (double& v : features) v = dist(gen);
  const int kinds[2] = {TSC_PLANT_NULL, TSC_PLANT_MIXED};
  std::vector<double> responses(static_cast<size_t>(n) * 2), beta(static_cast<size_t>(p) * 2),
      noise_sd(2);
  REQUIRE(tsc_gen_voxels(features.data(), n, p, n_low, kinds, 2, 1.0, 11, responses.data(),
                         beta.data(), noise_sd.data()) == TSC_OK);
  double null_beta = 0.0, mixed_beta = 0.0;
  for (int f = 0; f < p; ++f) {
    null_beta += std::abs(beta[static_cast<size_t>(f) * 2 + 0]);
    mixed_beta += std::abs(beta[static_cast<size_t>(f) * 2 + 1]);
  }
  CHECK(null_beta == 0.0);
  CHECK(mixed_beta > 0.0);
  CHECK(noise_sd[0] == 1.0);
  CHECK(tsc_gen_voxels(features.data(), n, p, 0, kinds, 2, 1.0, 11, responses.data(), nullptr,
                       nullptr) == TSC_EINVAL);

  int session[6], block[6];
  REQUIRE(tsc_gen_session_labels(6, 3, 1, session, block) == TSC_OK);
  const int want[6] = {1, 1, 2, 2, 3, 3};
  for (int i = 0; i < 6; ++i) {
    CHECK(session[i] == want[i]);
    CHECK(block[i] == 1);
  }
  CHECK(tsc_gen_session_labels(7, 3, 1, session, block) == TSC_EINVAL);
}

TEST_CASE("file io through the c api") {
  TempDir tmp;
  const std::vector<double> img = random_image(6, 4, 77);
  const std::string rpath = tmp.file("img.bin");
  REQUIRE(tsc_write_raster_file(rpath.c_str(), img.data(), 6, 4) == TSC_OK);
  double* rback = nullptr;
  int w = 0, h = 0;
  REQUIRE(tsc_read_raster_file(rpath.c_str(), &rback, &w, &h) == TSC_OK);
  CHECK(w == 6);
  CHECK(h == 4);
  for (int i = 0; i < 24; ++i)
    CHECK(rback[i] == static_cast<double>(static_cast<float>(img[static_cast<size_t>(i)])));
  tsc_free(rback);

  const double m[6] = {1.5, -2.0, 3.25, 0.0, 5.0, -6.5};
  const std::string mpath = tmp.file("m.bin");
  REQUIRE(tsc_write_matrix_file(mpath.c_str(), m, 2, 3) == TSC_OK);
  double* mback = nullptr;
  int rows = 0, cols = 0;
  REQUIRE(tsc_read_matrix_file(mpath.c_str(), &mback, &rows, &cols) == TSC_OK);
  CHECK(rows == 2);
  CHECK(cols == 3);
  for (int i = 0; i < 6; ++i) CHECK(mback[i] == m[i]);
  tsc_free(mback);

  const std::string cpath = tmp.file("m.csv");
  REQUIRE(tsc_write_matrix_csv(cpath.c_str(), m, 2, 3, nullptr, 1) == TSC_OK);
  double* cback = nullptr;
  REQUIRE(tsc_read_matrix_csv(cpath.c_str(), &cback, &rows, &cols) == TSC_OK);
  CHECK(rows == 2);
  CHECK(cols == 3);
  for (int i = 0; i < 6; ++i) CHECK(cback[i] == m[i]);
  tsc_free(cback);

  const int session[4] = {1, 1, 2, 2};
  const int block[4] = {1, 2, 1, 2};
  const std::string spath = tmp.file("sessions.csv");
  REQUIRE(tsc_write_sessions_csv(spath.c_str(), session, block, 4) == TSC_OK);
  int *sback = nullptr, *bback = nullptr;
  int n = 0;
  REQUIRE(tsc_read_sessions_csv(spath.c_str(), &sback, &bback, &n) == TSC_OK);
  REQUIRE(n == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(sback[i] == session[i]);
    CHECK(bback[i] == block[i]);
  }
  tsc_free(sback);
  tsc_free(bback);

  const int labels[3] = {2, 0, 1};
  const std::string lpath = tmp.file("labels.csv");
  REQUIRE(tsc_write_labels_csv(lpath.c_str(), labels, 3) == TSC_OK);
  int* lback = nullptr;
  REQUIRE(tsc_read_labels_csv(lpath.c_str(), &lback, &n) == TSC_OK);
  REQUIRE(n == 3);
  for (int i = 0; i < 3; ++i) CHECK(lback[i] == labels[i]);
  tsc_free(lback);

  CHECK(tsc_read_matrix_file(tmp.file("missing.bin").c_str(), &mback, &rows, &cols) ==
        TSC_ERUNTIME);
  CHECK(std::strlen(tsc_last_error()) > 0);
}
