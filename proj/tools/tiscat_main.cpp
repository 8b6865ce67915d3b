// tiscat command-line tool: scattering features, encoding/decoding CV,
// model comparison, synthetic data, and the one-command study reproduction.
// Links only the public C API.

#include <tiscat.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

struct CliError {
  int exit_code;
  std::string message;
};

/// Raise on a failed tsc_* call, preserving the 1/2 status as the exit code.
void check(int rc) {
  if (rc != TSC_OK) throw CliError{rc, tsc_last_error()};
}

void invalid(const std::string& msg) { throw CliError{1, msg}; }

struct FreeDeleter {
  void operator()(void* p) const { tsc_free(p); }
};
template <typename T>
using owned = std::unique_ptr<T, FreeDeleter>;

std::string g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

/// Orchestration-level RNG for per-image parameter jitter (the heavy lifting
/// is seeded inside the library; this only picks spec parameters).
struct MixRng {
  uint64_t s;
  explicit MixRng(uint64_t seed) : s(seed) {}
  uint64_t next() {
    s += 0x9e3779b97f4a7c15ULL;
    uint64_t x = s;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo)); }
};

int resolve_threads(int threads_flag) {
  if (threads_flag > 0) return threads_flag;
  if (const char* env = std::getenv("SCATTER_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t > 0) return t;
    } catch (const std::exception&) {
      invalid(std::string("SCATTER_THREADS is not a positive integer: ") + env);
    }
  }
  return 1;
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream os(path);
  if (!os) throw CliError{2, "cannot open for writing: " + path.string()};
  os << content;
  if (!os) throw CliError{2, "write failed: " + path.string()};
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Every run drops its resolved configuration next to its outputs; re-running
/// with `--config` on that file reproduces the run.
void write_resolved_config(const std::string& sub_name, const KeyValues& kv,
                           const fs::path& anchor) {
  fs::path dir = anchor;
  std::string stem = sub_name;
  if (fs::is_directory(anchor) || anchor.extension().empty()) {
    fs::create_directories(anchor);
  } else {
    dir = anchor.parent_path().empty() ? fs::path(".") : anchor.parent_path();
    stem += "_" + anchor.stem().string();
  }
  std::string text;
  for (const auto& [k, v] : kv) text += k + "=" + v + "\n";
  write_text(dir / (stem + ".config"), text);
}

void write_json(const fs::path& path, const ordered_json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::vector<double> parse_lambda_grid(const std::string& csv) {
  std::vector<double> grid;
  std::stringstream ss(csv);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      size_t pos = 0;
      grid.push_back(std::stod(cell, &pos));
      if (pos != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      invalid("malformed lambda grid entry: '" + cell + "'");
    }
  }
  if (grid.empty()) invalid("empty lambda grid");
  return grid;
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;  // 10 values log-spaced over [1e-3, 1e5]
  for (int i = 0; i < 10; ++i) grid.push_back(std::pow(10.0, -3.0 + 8.0 * i / 9.0));
  return grid;
}

struct Matrix {
  std::vector<double> data;
  int rows = 0, cols = 0;
  double* ptr() { return data.data(); }
  const double* ptr() const { return data.data(); }
  double at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
};

Matrix read_matrix_any(const std::string& path) {
  double* raw = nullptr;
  int rows = 0, cols = 0;
  if (fs::path(path).extension() == ".csv")
    check(tsc_read_matrix_csv(path.c_str(), &raw, &rows, &cols));
  else
    check(tsc_read_matrix_file(path.c_str(), &raw, &rows, &cols));
  owned<double> guard(raw);
  Matrix m;
  m.rows = rows;
  m.cols = cols;
  m.data.assign(raw, raw + static_cast<size_t>(rows) * cols);
  return m;
}

struct Sessions {
  std::vector<int> session, block;
};

Sessions read_sessions(const std::string& path) {
  int* s = nullptr;
  int* b = nullptr;
  int n = 0;
  check(tsc_read_sessions_csv(path.c_str(), &s, &b, &n));
  owned<int> gs(s), gb(b);
  return {std::vector<int>(s, s + n), std::vector<int>(b, b + n)};
}

// ---------------------------------------------------------------------------
// filters

struct FiltersArgs {
  int J = 5, L = 4;
  std::string size = "128x128";
  double sigma0 = 1.5, xi0 = 3.0 * M_PI / 4.0, slant = 0.0;
  double r_lo = M_PI / 4.0, r_hi = M_PI / 2.0;
  std::string out = "lp_report.json";
  std::string dump_dir;
};

std::pair<int, int> parse_size(const std::string& size) {
  const auto x = size.find('x');
  if (x == std::string::npos) invalid("size must be WxH, got '" + size + "'");
  try {
    size_t p1 = 0, p2 = 0;
    const int w = std::stoi(size.substr(0, x), &p1);
    const int h = std::stoi(size.substr(x + 1), &p2);
    if (p1 != x || p2 != size.size() - x - 1) throw std::invalid_argument(size);
    return {w, h};
  } catch (const std::exception&) {
    invalid("size must be WxH, got '" + size + "'");
  }
  return {0, 0};
}

tsc_filter_params make_params(int J, int L, int w, int h, double sigma0, double xi0,
                              double slant) {
  tsc_filter_params p;
  tsc_filter_params_default(&p);
  p.J = J;
  p.L = L;
  p.width = w;
  p.height = h;
  p.sigma0 = sigma0;
  p.xi0 = xi0;
  p.slant = slant;
  return p;
}

int run_filters(const FiltersArgs& a) {
  const auto [w, h] = parse_size(a.size);
  const tsc_filter_params params = make_params(a.J, a.L, w, h, a.sigma0, a.xi0, a.slant);
  tsc_filterbank* fb = nullptr;
  check(tsc_filterbank_create(&params, &fb));
  std::unique_ptr<tsc_filterbank, decltype(&tsc_filterbank_destroy)> guard(fb,
                                                                           tsc_filterbank_destroy);
  int count = 0;
  check(tsc_filterbank_count(fb, &count));
  double a_min = 0.0, a_max = 0.0;
  check(tsc_filterbank_littlewood_paley(fb, a.r_lo, a.r_hi, &a_min, &a_max));

  ordered_json rep;
  rep["J"] = a.J;
  rep["L"] = a.L;
  rep["width"] = w;
  rep["height"] = h;
  rep["sigma0"] = a.sigma0;
  rep["xi0"] = a.xi0;
  rep["slant"] = a.slant;
  rep["n_filters"] = count;
  rep["annulus"] = {{"r_lo", a.r_lo}, {"r_hi", a.r_hi}};
  rep["littlewood_paley"] = {
      {"a_min", a_min}, {"a_max", a_max}, {"ratio", a_max > 0.0 ? a_min / a_max : 0.0}};
  ordered_json filters = ordered_json::array();
  for (int i = 0; i < count; ++i) {
    int j = 0;
    double gamma = 0.0;
    check(tsc_filterbank_filter_info(fb, i, &j, &gamma));
    filters.push_back({{"index", i}, {"j", j}, {"gamma_deg", gamma}});
  }
  rep["filters"] = filters;
  write_json(a.out, rep);
  write_resolved_config("filters",
                        {{"J", std::to_string(a.J)},
                         {"L", std::to_string(a.L)},
                         {"size", a.size},
                         {"sigma0", g17(a.sigma0)},
                         {"xi0", g17(a.xi0)},
                         {"slant", g17(a.slant)},
                         {"r-lo", g17(a.r_lo)},
                         {"r-hi", g17(a.r_hi)},
                         {"out", a.out},
                         {"dump-spectra", a.dump_dir}},
                        a.out);

  if (!a.dump_dir.empty()) {
    fs::create_directories(a.dump_dir);
    const size_t px = static_cast<size_t>(w) * h;
    std::vector<double> re(px), im(px), mag(px);
    for (int i = 0; i < count; ++i) {
      int j = 0;
      double gamma = 0.0;
      check(tsc_filterbank_filter_info(fb, i, &j, &gamma));
      check(tsc_filterbank_spectrum(fb, i, re.data(), im.data()));
      for (size_t k = 0; k < px; ++k) mag[k] = std::hypot(re[k], im[k]);
      char name[64];
      std::snprintf(name, sizeof name, "filter_j%d_g%03d.ras", j,
                    static_cast<int>(std::lround(gamma)));
      check(tsc_write_raster_file((fs::path(a.dump_dir) / name).string().c_str(), mag.data(), w,
                                  h));
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// scatter

struct ScatterArgs {
  std::string images;
  int M = 2, J = 5, L = 4;
  double sigma0 = 1.5, xi0 = 3.0 * M_PI / 4.0, slant = 0.0;
  int threads = 0;
  std::string out = "features.csv";
};

std::vector<std::string> collect_image_paths(const std::string& arg) {
  std::vector<std::string> paths;
  if (fs::is_directory(arg)) {
    for (const auto& e : fs::directory_iterator(arg)) {
      const auto ext = e.path().extension();
      if (e.is_regular_file() && (ext == ".ras" || ext == ".pgm"))
        paths.push_back(e.path().string());
    }
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) invalid("no .ras or .pgm images in directory: " + arg);
  } else {
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      if (!fs::is_regular_file(item)) invalid("image file not found: " + item);
      paths.push_back(item);
    }
    if (paths.empty()) invalid("no images given: " + arg);
  }
  return paths;
}

int run_scatter(const ScatterArgs& a) {
  const auto paths = collect_image_paths(a.images);
  const int n = static_cast<int>(paths.size());

  int w = 0, h = 0;
  std::vector<double> images;
  for (int i = 0; i < n; ++i) {
    double* img = nullptr;
    int iw = 0, ih = 0;
    check(tsc_read_raster_file(paths[static_cast<size_t>(i)].c_str(), &img, &iw, &ih));
    owned<double> guard(img);
    if (i == 0) {
      w = iw;
      h = ih;
      images.reserve(static_cast<size_t>(n) * w * h);
    } else if (iw != w || ih != h) {
      invalid("image dimensions differ: " + paths[static_cast<size_t>(i)] + " is " +
              std::to_string(iw) + "x" + std::to_string(ih) + ", expected " + std::to_string(w) +
              "x" + std::to_string(h));
    }
    images.insert(images.end(), img, img + static_cast<size_t>(iw) * ih);
  }

  const tsc_filter_params params = make_params(a.J, a.L, w, h, a.sigma0, a.xi0, a.slant);
  int n_features = 0;
  check(tsc_feature_count(&params, a.M, &n_features));
  std::vector<double> features(static_cast<size_t>(n) * n_features);
  check(tsc_batch_scatter(&params, a.M, images.data(), n, w, h, resolve_threads(a.threads),
                          features.data()));

  if (fs::path(a.out).extension() == ".csv") {
    char** labels = nullptr;
    int n_labels = 0;
    check(tsc_feature_labels(&params, a.M, &labels, &n_labels));
    std::ofstream os(a.out);
    if (!os) throw CliError{2, "cannot open for writing: " + a.out};
    os << "image_id";
    for (int f = 0; f < n_labels; ++f) os << ',' << labels[f];
    os << '\n';
    for (int i = 0; i < n; ++i) {
      os << fs::path(paths[static_cast<size_t>(i)]).stem().string();
      for (int f = 0; f < n_features; ++f)
        os << ',' << g9(features[static_cast<size_t>(i) * n_features + f]);
      os << '\n';
    }
    tsc_free_strings(labels, n_labels);
    if (!os) throw CliError{2, "write failed: " + a.out};
  } else {
    check(tsc_write_matrix_file(a.out.c_str(), features.data(), n, n_features));
  }
  write_resolved_config("scatter",
                        {{"images", a.images},
                         {"M", std::to_string(a.M)},
                         {"J", std::to_string(a.J)},
                         {"L", std::to_string(a.L)},
                         {"sigma0", g17(a.sigma0)},
                         {"xi0", g17(a.xi0)},
                         {"slant", g17(a.slant)},
                         {"threads", std::to_string(resolve_threads(a.threads))},
                         {"out", a.out}},
                        a.out);
  return 0;
}

// ---------------------------------------------------------------------------
// encode

struct EncodeArgs {
  std::string features, responses, sessions;
  std::string lambda_grid;
  bool shared_lambda = false;
  int threads = 0;
  std::string out = "cv_result.json";
};

ordered_json encode_to_json(const Matrix& X, const Matrix& Y, const std::vector<int>& session,
                            const std::vector<double>& grid, bool shared_lambda, int threads) {
  int n_sessions = 0;
  check(tsc_count_unique(session.data(), static_cast<int>(session.size()), &n_sessions));
  std::vector<double> fold_r2(static_cast<size_t>(n_sessions) * Y.cols);
  std::vector<double> fold_lambda(fold_r2.size());
  std::vector<double> mean_r2(static_cast<size_t>(Y.cols));
  check(tsc_nested_cv_encode(X.ptr(), X.rows, X.cols, Y.ptr(), Y.cols, session.data(),
                             grid.data(), static_cast<int>(grid.size()), shared_lambda ? 1 : 0,
                             threads, fold_r2.data(), fold_lambda.data(), mean_r2.data()));

  std::vector<int> outer(session.begin(), session.end());
  std::sort(outer.begin(), outer.end());
  outer.erase(std::unique(outer.begin(), outer.end()), outer.end());

  ordered_json rep;
  rep["n_images"] = X.rows;
  rep["n_features"] = X.cols;
  rep["n_voxels"] = Y.cols;
  rep["lambda_grid"] = grid;
  rep["outer_sessions"] = outer;
  rep["mean_r2"] = mean_r2;
  double overall = 0.0;
  for (double r : mean_r2) overall += r;
  rep["mean_r2_overall"] = overall / static_cast<double>(mean_r2.size());
  ordered_json fr = ordered_json::array(), fl = ordered_json::array();
  for (int s = 0; s < n_sessions; ++s) {
    fr.push_back(std::vector<double>(fold_r2.begin() + static_cast<long>(s) * Y.cols,
                                     fold_r2.begin() + static_cast<long>(s + 1) * Y.cols));
    fl.push_back(std::vector<double>(fold_lambda.begin() + static_cast<long>(s) * Y.cols,
                                     fold_lambda.begin() + static_cast<long>(s + 1) * Y.cols));
  }
  rep["fold_r2"] = fr;
  rep["fold_lambda"] = fl;
  return rep;
}

int run_encode(const EncodeArgs& a) {
  const Matrix X = read_matrix_any(a.features);
  const Matrix Y = read_matrix_any(a.responses);
  const Sessions s = read_sessions(a.sessions);
  if (X.rows != Y.rows)
    invalid("feature rows (" + std::to_string(X.rows) + ") != response rows (" +
            std::to_string(Y.rows) + ")");
  if (static_cast<int>(s.session.size()) != X.rows)
    invalid("sessions.csv rows (" + std::to_string(s.session.size()) +
            ") != feature rows (" + std::to_string(X.rows) + ")");
  const auto grid =
      a.lambda_grid.empty() ? default_lambda_grid() : parse_lambda_grid(a.lambda_grid);
  write_json(a.out,
             encode_to_json(X, Y, s.session, grid, a.shared_lambda, resolve_threads(a.threads)));
  std::string grid_str;
  for (size_t i = 0; i < grid.size(); ++i) grid_str += (i ? "," : "") + g17(grid[i]);
  write_resolved_config("encode",
                        {{"features", a.features},
                         {"responses", a.responses},
                         {"sessions", a.sessions},
                         {"lambda-grid", grid_str},
                         {"shared-lambda", a.shared_lambda ? "true" : "false"},
                         {"threads", std::to_string(resolve_threads(a.threads))},
                         {"out", a.out}},
                        a.out);
  return 0;
}

// ---------------------------------------------------------------------------
// decode

struct DecodeArgs {
  std::string responses, labels, blocks;
  std::string lambda_grid = "0.01,1,100";
  std::string fold_unit = "block";
  int threads = 0;
  std::string out = "decode.json";
};

ordered_json decode_to_json(const Matrix& Y, const std::vector<int>& labels,
                            const std::vector<int>& fold_ids, const std::vector<double>& grid,
                            int threads, const std::string& fold_unit) {
  int n_folds = 0;
  check(tsc_count_unique(fold_ids.data(), static_cast<int>(fold_ids.size()), &n_folds));
  std::vector<double> fold_acc(static_cast<size_t>(n_folds));
  std::vector<int> flagged(static_cast<size_t>(n_folds));
  double mean_acc = 0.0;
  check(tsc_decode_cv(Y.ptr(), Y.rows, Y.cols, labels.data(), fold_ids.data(), grid.data(),
                      static_cast<int>(grid.size()), threads, fold_acc.data(), flagged.data(),
                      &mean_acc));
  ordered_json rep;
  rep["fold_unit"] = fold_unit;
  rep["n_folds"] = n_folds;
  rep["lambda_grid"] = grid;
  rep["fold_accuracy"] = fold_acc;
  ordered_json fj = ordered_json::array();
  for (int i = 0; i < n_folds; ++i)
    if (flagged[static_cast<size_t>(i)]) fj.push_back(i);
  rep["flagged_folds"] = fj;
  rep["mean_accuracy"] = mean_acc;
  return rep;
}

int run_decode(const DecodeArgs& a) {
  const Matrix Y = read_matrix_any(a.responses);
  int* raw_labels = nullptr;
  int n_labels = 0;
  check(tsc_read_labels_csv(a.labels.c_str(), &raw_labels, &n_labels));
  owned<int> guard(raw_labels);
  const std::vector<int> labels(raw_labels, raw_labels + n_labels);
  const Sessions s = read_sessions(a.blocks);
  if (Y.rows != n_labels || Y.rows != static_cast<int>(s.session.size()))
    invalid("responses/labels/blocks row counts disagree");

  std::vector<int> fold_ids(static_cast<size_t>(Y.rows));
  if (a.fold_unit == "session") {
    fold_ids = s.session;
  } else if (a.fold_unit == "block") {
    // (session, block) pairs are the fold unit; block ids restart per session
    for (size_t i = 0; i < fold_ids.size(); ++i)
      fold_ids[i] = s.session[i] * 100000 + s.block[i];
  } else {
    invalid("fold-unit must be 'block' or 'session', got '" + a.fold_unit + "'");
  }
  const auto grid = parse_lambda_grid(a.lambda_grid);
  write_json(a.out,
             decode_to_json(Y, labels, fold_ids, grid, resolve_threads(a.threads), a.fold_unit));
  write_resolved_config("decode",
                        {{"responses", a.responses},
                         {"labels", a.labels},
                         {"blocks", a.blocks},
                         {"lambda-grid", a.lambda_grid},
                         {"fold-unit", a.fold_unit},
                         {"threads", std::to_string(resolve_threads(a.threads))},
                         {"out", a.out}},
                        a.out);
  return 0;
}

// ---------------------------------------------------------------------------
// compare

struct CompareArgs {
  std::string a, b;
  double threshold = 0.05;
  int top_k = 2000;
  std::string out = "map.csv,scatter.csv";
};

std::vector<double> read_mean_r2(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw CliError{2, "cannot open: " + path};
  ordered_json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    invalid("malformed CV result JSON " + path + ": " + e.what());
  }
  if (!j.contains("mean_r2") || !j["mean_r2"].is_array())
    invalid("CV result " + path + " lacks a mean_r2 array");
  return j["mean_r2"].get<std::vector<double>>();
}

const char* label_name(int code) {
  switch (code) {
    case TSC_VOXEL_RED: return "red";
    case TSC_VOXEL_BLUE: return "blue";
    default: return "unlabeled";
  }
}

int run_compare(const CompareArgs& args) {
  const auto s1 = read_mean_r2(args.a);
  const auto s2 = read_mean_r2(args.b);
  if (s1.size() != s2.size())
    invalid("voxel counts differ: " + args.a + " has " + std::to_string(s1.size()) + ", " +
            args.b + " has " + std::to_string(s2.size()));
  const int n = static_cast<int>(s1.size());

  std::vector<double> delta(s1.size());
  std::vector<int> labels(s1.size());
  std::vector<int> scatter_voxels(s1.size());
  int n_scatter = 0;
  check(tsc_compare_models(s1.data(), s2.data(), n, args.threshold, args.top_k, delta.data(),
                           labels.data(), scatter_voxels.data(), &n_scatter));

  const auto comma = args.out.find(',');
  if (comma == std::string::npos)
    invalid("--out must be 'map.csv,scatter.csv', got '" + args.out + "'");
  const std::string map_path = args.out.substr(0, comma);
  const std::string scatter_path = args.out.substr(comma + 1);

  std::ofstream map_os(map_path);
  if (!map_os) throw CliError{2, "cannot open for writing: " + map_path};
  map_os << "voxel,score_a,score_b,delta,label\n";
  for (int v = 0; v < n; ++v)
    map_os << v << ',' << g9(s1[static_cast<size_t>(v)]) << ',' << g9(s2[static_cast<size_t>(v)])
           << ',' << g9(delta[static_cast<size_t>(v)]) << ','
           << label_name(labels[static_cast<size_t>(v)]) << '\n';
  if (!map_os) throw CliError{2, "write failed: " + map_path};

  std::ofstream sc_os(scatter_path);
  if (!sc_os) throw CliError{2, "cannot open for writing: " + scatter_path};
  sc_os << "voxel,score_a,score_b\n";
  for (int i = 0; i < n_scatter; ++i) {
    const int v = scatter_voxels[static_cast<size_t>(i)];
    sc_os << v << ',' << g9(s1[static_cast<size_t>(v)]) << ','
          << g9(s2[static_cast<size_t>(v)]) << '\n';
  }
  if (!sc_os) throw CliError{2, "write failed: " + scatter_path};
  write_resolved_config("compare",
                        {{"a", args.a},
                         {"b", args.b},
                         {"threshold", g17(args.threshold)},
                         {"top-k", std::to_string(args.top_k)},
                         {"out", args.out}},
                        map_path);
  return 0;
}

// ---------------------------------------------------------------------------
// synth + reproduce share the study generator

struct StudyConfig {
  uint64_t seed = 7;
  int n_images = 216;
  int width = 128, height = 128;
  int n_sessions = 6, blocks_per_session = 36;
  int n_classes = 6;
  int voxels_per_kind = 50;
  double snr = 1.0;
  int J = 5, L = 4, M = 2;
  int threads = 1;
};

/// Texture spec JSON for image i: six classes separated by orientation
/// content, spectral slope, and (for the scrambled class) phase structure.
std::string class_texture_spec(const StudyConfig& cfg, int i) {
  MixRng rng(cfg.seed * 0x9e3779b97f4a7c15ULL + static_cast<uint64_t>(i));
  const uint64_t tex_seed = rng.next();
  const int c = i % cfg.n_classes;
  ordered_json spec;
  auto bars = [&](int lo, int hi, double length, double width, std::vector<double> angles) {
    spec["kind"] = "bars";
    spec["n_bars"] = rng.uniform_int(lo, hi);
    spec["length"] = length;
    spec["bar_width"] = width;
    spec["angles_deg"] = angles;
  };
  switch (c) {
    case 0: bars(25, 55, 30.0, 2.0, {0.0}); break;
    case 1: bars(25, 55, 30.0, 2.0, {90.0}); break;
    case 2: bars(15, 40, 45.0, 3.0, {45.0, 135.0}); break;
    case 3:
      spec["kind"] = "gaussian_field";
      spec["alpha"] = rng.uniform(0.6, 1.0);
      break;
    case 4:
      spec["kind"] = "gaussian_field";
      spec["alpha"] = rng.uniform(1.6, 2.0);
      break;
    default: {
      ordered_json src;
      src["kind"] = "bars";
      src["n_bars"] = rng.uniform_int(25, 55);
      src["length"] = 30.0;
      src["bar_width"] = 2.0;
      src["angles_deg"] = {45.0};
      src["width"] = cfg.width;
      src["height"] = cfg.height;
      src["seed"] = tex_seed + 1;
      spec["kind"] = "phase_scrambled_of";
      spec["source"] = src;
      break;
    }
  }
  spec["width"] = cfg.width;
  spec["height"] = cfg.height;
  spec["seed"] = tex_seed;
  if (c == 5) {
    spec.erase("width");
    spec.erase("height");
  }
  return spec.dump();
}

struct Study {
  StudyConfig cfg;
  tsc_filter_params params{};
  int n_features = 0, n_low = 0, n_voxels = 0;
  std::vector<double> images;    // n_images * w * h
  std::vector<double> features;  // n_images x n_features
  std::vector<int> session, block, class_labels;
  std::vector<int> kinds;        // TSC_PLANT_* per voxel
  std::vector<double> responses, beta, noise_sd;
};

Study generate_study(const StudyConfig& cfg) {
  Study st;
  st.cfg = cfg;
  st.params = make_params(cfg.J, cfg.L, cfg.width, cfg.height, 1.5, 3.0 * M_PI / 4.0, 0.0);
  check(tsc_feature_count(&st.params, cfg.M, &st.n_features));
  st.n_low = 1 + cfg.J * cfg.L;
  st.n_voxels = 4 * cfg.voxels_per_kind;

  const size_t px = static_cast<size_t>(cfg.width) * cfg.height;
  st.images.resize(static_cast<size_t>(cfg.n_images) * px);
  st.class_labels.resize(static_cast<size_t>(cfg.n_images));
  for (int i = 0; i < cfg.n_images; ++i) {
    const std::string spec = class_texture_spec(cfg, i);
    double* img = nullptr;
    int w = 0, h = 0;
    check(tsc_gen_texture(spec.c_str(), &img, &w, &h));
    owned<double> guard(img);
    if (w != cfg.width || h != cfg.height) throw CliError{2, "texture generator size mismatch"};
    std::copy(img, img + px, st.images.begin() + static_cast<long>(i) * static_cast<long>(px));
    st.class_labels[static_cast<size_t>(i)] = i % cfg.n_classes;
  }

  st.features.resize(static_cast<size_t>(cfg.n_images) * st.n_features);
  check(tsc_batch_scatter(&st.params, cfg.M, st.images.data(), cfg.n_images, cfg.width,
                          cfg.height, cfg.threads, st.features.data()));

  st.session.resize(static_cast<size_t>(cfg.n_images));
  st.block.resize(static_cast<size_t>(cfg.n_images));
  check(tsc_gen_session_labels(cfg.n_images, cfg.n_sessions, cfg.blocks_per_session,
                               st.session.data(), st.block.data()));

  st.kinds.reserve(static_cast<size_t>(st.n_voxels));
  for (int code : {TSC_PLANT_LAYER1, TSC_PLANT_LAYER2, TSC_PLANT_MIXED, TSC_PLANT_NULL})
    st.kinds.insert(st.kinds.end(), static_cast<size_t>(cfg.voxels_per_kind), code);
  st.responses.resize(static_cast<size_t>(cfg.n_images) * st.n_voxels);
  st.beta.resize(static_cast<size_t>(st.n_features) * st.n_voxels);
  st.noise_sd.resize(static_cast<size_t>(st.n_voxels));
  check(tsc_gen_voxels(st.features.data(), cfg.n_images, st.n_features, st.n_low,
                       st.kinds.data(), st.n_voxels, cfg.snr, cfg.seed, st.responses.data(),
                       st.beta.data(), st.noise_sd.data()));
  return st;
}

const char* kind_name(int code) {
  switch (code) {
    case TSC_PLANT_LAYER1: return "layer1_only";
    case TSC_PLANT_LAYER2: return "layer2_only";
    case TSC_PLANT_MIXED: return "mixed";
    default: return "null";
  }
}

void write_study_artifacts(const Study& st, const fs::path& dir) {
  fs::create_directories(dir);
  check(tsc_write_matrix_file((dir / "features.bin").string().c_str(), st.features.data(),
                              st.cfg.n_images, st.n_features));
  check(tsc_write_matrix_file((dir / "responses.bin").string().c_str(), st.responses.data(),
                              st.cfg.n_images, st.n_voxels));
  check(tsc_write_matrix_file((dir / "beta.bin").string().c_str(), st.beta.data(), st.n_features,
                              st.n_voxels));
  check(tsc_write_sessions_csv((dir / "sessions.csv").string().c_str(), st.session.data(),
                               st.block.data(), st.cfg.n_images));
  check(tsc_write_labels_csv((dir / "labels.csv").string().c_str(), st.class_labels.data(),
                             st.cfg.n_images));

  ordered_json gt;
  gt["seed"] = st.cfg.seed;
  gt["snr"] = st.cfg.snr;
  gt["n_images"] = st.cfg.n_images;
  gt["n_features"] = st.n_features;
  gt["n_low"] = st.n_low;
  gt["beta_file"] = "beta.bin";
  ordered_json kinds = ordered_json::array();
  for (int k : st.kinds) kinds.push_back(kind_name(k));
  gt["kinds"] = kinds;
  gt["noise_sd"] = st.noise_sd;
  write_json(dir / "ground_truth.json", gt);
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  std::string textures, plant;
  std::string out_dir = "synth_out";
  int threads = 0;
  bool dump_images = false;
};

StudyConfig parse_study_config(const SynthArgs& a) {
  StudyConfig cfg;
  auto load = [](const std::string& path) {
    std::ifstream is(path);
    if (!is) throw CliError{2, "cannot open: " + path};
    try {
      return ordered_json::parse(is);
    } catch (const std::exception& e) {
      throw CliError{1, "malformed JSON " + path + ": " + e.what()};
    }
  };
  if (!a.textures.empty()) {
    const auto j = load(a.textures);
    for (const auto& [key, val] : j.items()) {
      if (key == "n_images") cfg.n_images = val.get<int>();
      else if (key == "width") cfg.width = val.get<int>();
      else if (key == "height") cfg.height = val.get<int>();
      else if (key == "n_sessions") cfg.n_sessions = val.get<int>();
      else if (key == "blocks_per_session") cfg.blocks_per_session = val.get<int>();
      else if (key == "seed") cfg.seed = val.get<uint64_t>();
      else if (key == "J") cfg.J = val.get<int>();
      else if (key == "L") cfg.L = val.get<int>();
      else invalid("textures spec: unknown key '" + key + "'");
    }
  }
  if (!a.plant.empty()) {
    const auto j = load(a.plant);
    for (const auto& [key, val] : j.items()) {
      if (key == "voxels_per_kind") cfg.voxels_per_kind = val.get<int>();
      else if (key == "snr") cfg.snr = val.get<double>();
      else if (key == "seed") cfg.seed = val.get<uint64_t>();
      else invalid("plant spec: unknown key '" + key + "'");
    }
  }
  return cfg;
}

int run_synth(const SynthArgs& a) {
  StudyConfig cfg = parse_study_config(a);
  cfg.threads = resolve_threads(a.threads);
  const Study st = generate_study(cfg);
  const fs::path dir(a.out_dir);
  write_study_artifacts(st, dir);
  if (a.dump_images) {
    const fs::path img_dir = dir / "images";
    fs::create_directories(img_dir);
    const size_t px = static_cast<size_t>(cfg.width) * cfg.height;
    for (int i = 0; i < cfg.n_images; ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "img%04d.ras", i);
      check(tsc_write_raster_file((img_dir / name).string().c_str(),
                                  st.images.data() + static_cast<size_t>(i) * px, cfg.width,
                                  cfg.height));
    }
  }
  write_resolved_config("synth",
                        {{"textures", a.textures},
                         {"plant", a.plant},
                         {"out-dir", a.out_dir},
                         {"threads", std::to_string(cfg.threads)},
                         {"dump-images", a.dump_images ? "true" : "false"}},
                        dir);
  return 0;
}

// ---------------------------------------------------------------------------
// reproduce

struct ReproduceArgs {
  uint64_t seed = 7;
  std::string out_dir = "run";
  int threads = 0;
  double threshold = 0.05;
  int top_k = 2000;
};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int run_reproduce(const ReproduceArgs& a) {
  StudyConfig cfg;
  cfg.seed = a.seed;
  cfg.threads = resolve_threads(a.threads);
  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  write_resolved_config("reproduce",
                        {{"seed", std::to_string(a.seed)},
                         {"out-dir", a.out_dir},
                         {"threads", std::to_string(cfg.threads)},
                         {"threshold", g17(a.threshold)},
                         {"top-k", std::to_string(a.top_k)}},
                        dir);

  const Study st = generate_study(cfg);
  write_study_artifacts(st, dir);

  // encoding with layer-0/1 features only (M1) vs the full vector (M2)
  Matrix X2{st.features, cfg.n_images, st.n_features};
  Matrix X1;
  X1.rows = cfg.n_images;
  X1.cols = st.n_low;
  X1.data.resize(static_cast<size_t>(X1.rows) * X1.cols);
  for (int i = 0; i < X1.rows; ++i)
    for (int f = 0; f < X1.cols; ++f)
      X1.data[static_cast<size_t>(i) * X1.cols + f] = X2.at(i, f);
  Matrix Y{st.responses, cfg.n_images, st.n_voxels};

  const auto grid = default_lambda_grid();
  const ordered_json cv1 = encode_to_json(X1, Y, st.session, grid, false, cfg.threads);
  const ordered_json cv2 = encode_to_json(X2, Y, st.session, grid, false, cfg.threads);
  write_json(dir / "cv_m1.json", cv1);
  write_json(dir / "cv_m2.json", cv2);
  const auto r2_m1 = cv1["mean_r2"].get<std::vector<double>>();
  const auto r2_m2 = cv2["mean_r2"].get<std::vector<double>>();

  // comparison map + scatter CSV
  std::vector<double> delta(r2_m1.size());
  std::vector<int> vox_labels(r2_m1.size());
  std::vector<int> scatter_voxels(r2_m1.size());
  int n_scatter = 0;
  check(tsc_compare_models(r2_m1.data(), r2_m2.data(), st.n_voxels, a.threshold, a.top_k,
                           delta.data(), vox_labels.data(), scatter_voxels.data(), &n_scatter));
  {
    std::ofstream os(dir / "map.csv");
    os << "voxel,kind,r2_m1,r2_m2,delta,label\n";
    for (int v = 0; v < st.n_voxels; ++v)
      os << v << ',' << kind_name(st.kinds[static_cast<size_t>(v)]) << ','
         << g9(r2_m1[static_cast<size_t>(v)]) << ',' << g9(r2_m2[static_cast<size_t>(v)]) << ','
         << g9(delta[static_cast<size_t>(v)]) << ','
         << label_name(vox_labels[static_cast<size_t>(v)]) << '\n';
    if (!os) throw CliError{2, "write failed: map.csv"};
  }
  {
    std::ofstream os(dir / "scatter.csv");
    os << "voxel,r2_m1,r2_m2\n";
    for (int i = 0; i < n_scatter; ++i) {
      const int v = scatter_voxels[static_cast<size_t>(i)];
      os << v << ',' << g9(r2_m1[static_cast<size_t>(v)]) << ','
         << g9(r2_m2[static_cast<size_t>(v)]) << '\n';
    }
    if (!os) throw CliError{2, "write failed: scatter.csv"};
  }

  // decoding on session folds (each session holds every class)
  const ordered_json decode_rep = decode_to_json(Y, st.class_labels, st.session,
                                                 {0.01, 1.0, 100.0}, cfg.threads, "session");
  write_json(dir / "decode.json", decode_rep);

  // summary
  ordered_json summary;
  summary["seed"] = cfg.seed;
  summary["n_images"] = cfg.n_images;
  summary["n_voxels"] = st.n_voxels;
  summary["n_features"] = {{"m1", st.n_low}, {"m2", st.n_features}};
  summary["mean_r2"] = {{"m1", cv1["mean_r2_overall"]}, {"m2", cv2["mean_r2_overall"]}};

  auto wilcoxon_json = [](const std::vector<double>& hi, const std::vector<double>& lo) {
    ordered_json out;
    double w = 0.0, p = 1.0;
    int n_used = 0, exact = 0;
    const int rc = tsc_wilcoxon(hi.data(), lo.data(), static_cast<int>(hi.size()), &w, &p,
                                &n_used, &exact);
    if (rc != TSC_OK) {
      out["error"] = tsc_last_error();
    } else {
      out["n"] = n_used;
      out["W"] = w;
      out["p_two_sided"] = p;
      out["exact"] = exact != 0;
    }
    return out;
  };
  {
    // top-k voxels by M1 score (the scatterplot set)
    std::vector<double> hi, lo;
    for (int i = 0; i < n_scatter; ++i) {
      const int v = scatter_voxels[static_cast<size_t>(i)];
      hi.push_back(r2_m2[static_cast<size_t>(v)]);
      lo.push_back(r2_m1[static_cast<size_t>(v)]);
    }
    summary["wilcoxon_top_k"] = wilcoxon_json(hi, lo);
  }
  {
    std::vector<double> hi, lo;
    for (int v = 0; v < st.n_voxels; ++v)
      if (st.kinds[static_cast<size_t>(v)] == TSC_PLANT_LAYER2) {
        hi.push_back(r2_m2[static_cast<size_t>(v)]);
        lo.push_back(r2_m1[static_cast<size_t>(v)]);
      }
    summary["wilcoxon_layer2_only"] = wilcoxon_json(hi, lo);
  }

  int reds = 0, blues = 0, unlabeled = 0;
  for (int l : vox_labels)
    (l == TSC_VOXEL_RED ? reds : l == TSC_VOXEL_BLUE ? blues : unlabeled)++;
  summary["counts"] = {{"red", reds}, {"blue", blues}, {"unlabeled", unlabeled}};

  ordered_json per_kind;
  for (int code : {TSC_PLANT_LAYER1, TSC_PLANT_LAYER2, TSC_PLANT_MIXED, TSC_PLANT_NULL}) {
    double m1 = 0.0, m2 = 0.0;
    int n = 0, red = 0;
    for (int v = 0; v < st.n_voxels; ++v) {
      if (st.kinds[static_cast<size_t>(v)] != code) continue;
      ++n;
      m1 += r2_m1[static_cast<size_t>(v)];
      m2 += r2_m2[static_cast<size_t>(v)];
      if (vox_labels[static_cast<size_t>(v)] == TSC_VOXEL_RED) ++red;
    }
    per_kind[kind_name(code)] = {{"n", n},
                                 {"mean_r2_m1", m1 / n},
                                 {"mean_r2_m2", m2 / n},
                                 {"mean_delta", (m2 - m1) / n},
                                 {"red_fraction", static_cast<double>(red) / n}};
  }
  summary["per_kind"] = per_kind;
  summary["decode"] = decode_rep;
  summary["timestamp"] = utc_timestamp();
  write_json(dir / "summary.json", summary);
  return 0;
}

// ---------------------------------------------------------------------------

/// Flat key=value config support: `--config file` after the subcommand loads
/// defaults for any flag not given on the command line; unknown keys error.
std::vector<std::string> apply_config_file(CLI::App* sub, std::vector<std::string> args) {
  std::string config_path;
  for (size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) invalid("--config requires a file path");
      config_path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
  }
  if (config_path.empty()) return args;

  std::ifstream is(config_path);
  if (!is) throw CliError{2, "cannot open config: " + config_path};
  std::string line;
  int lineno = 0;
  std::vector<std::string> extra;
  while (std::getline(is, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      invalid(config_path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(first, eq - first);
    std::string value = line.substr(eq + 1);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    while (!value.empty() && (value.back() == '\r' || value.back() == '\n')) value.pop_back();
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);

    const std::string flag = "--" + key;
    const CLI::Option* opt = nullptr;
    for (const auto* o : sub->get_options())
      if (o->check_name(flag)) opt = o;
    if (!opt) invalid(config_path + ": unknown config key '" + key + "'");
    // command line wins over the config file
    bool on_cli = false;
    for (size_t i = 1; i < args.size(); ++i)
      if (args[i] == flag || args[i].rfind(flag + "=", 0) == 0) on_cli = true;
    if (on_cli) continue;
    if (opt->get_expected_min() == 0) {  // flag
      if (value == "true" || value == "1") extra.push_back(flag);
      else if (value != "false" && value != "0")
        invalid(config_path + ": flag '" + key + "' must be true/false");
    } else {
      if (value.empty()) continue;  // unset optional
      extra.push_back(flag);
      extra.push_back(value);
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"translation-invariant scattering features and the voxel encoding/decoding "
               "pipeline"};
  app.require_subcommand(0, 1);
  app.option_defaults()->always_capture_default();

  FiltersArgs fa;
  CLI::App* filters = app.add_subcommand("filters", "build a Morlet bank and report its "
                                                    "Littlewood-Paley coverage");
  filters->add_option("--J", fa.J, "number of scales");
  filters->add_option("--L", fa.L, "orientations over 180 degrees");
  filters->add_option("--size", fa.size, "grid size WxH");
  filters->add_option("--sigma0", fa.sigma0, "mother envelope std (px)");
  filters->add_option("--xi0", fa.xi0, "mother center frequency (rad/px)");
  filters->add_option("--slant", fa.slant, "envelope anisotropy (0 = 4/L)");
  filters->add_option("--r-lo", fa.r_lo, "annulus inner radius (rad/px)");
  filters->add_option("--r-hi", fa.r_hi, "annulus outer radius (rad/px)");
  filters->add_option("--out", fa.out, "LP report JSON path");
  filters->add_option("--dump-spectra", fa.dump_dir, "directory for spectrum magnitude rasters");

  ScatterArgs sa;
  CLI::App* scatter = app.add_subcommand("scatter", "scattering features for a set of images");
  scatter->add_option("--images", sa.images, "image directory or comma-separated file list")
      ->required();
  scatter->add_option("--M", sa.M, "layer depth (1 or 2)");
  scatter->add_option("--J", sa.J, "number of scales");
  scatter->add_option("--L", sa.L, "orientations over 180 degrees");
  scatter->add_option("--sigma0", sa.sigma0, "mother envelope std (px)");
  scatter->add_option("--xi0", sa.xi0, "mother center frequency (rad/px)");
  scatter->add_option("--slant", sa.slant, "envelope anisotropy (0 = 4/L)");
  scatter->add_option("--threads", sa.threads, "worker threads (default SCATTER_THREADS or 1)");
  scatter->add_option("--out", sa.out, "output features (.csv or .bin)");

  EncodeArgs ea;
  CLI::App* encode = app.add_subcommand("encode", "nested leave-one-session-out ridge encoding");
  encode->add_option("--features", ea.features, "feature matrix (.csv or .bin)")->required();
  encode->add_option("--responses", ea.responses, "voxel responses (.bin)")->required();
  encode->add_option("--sessions", ea.sessions, "sessions.csv (image_id,session,block)")
      ->required();
  encode->add_option("--lambda-grid", ea.lambda_grid,
                     "comma-separated penalties (default: 10 log-spaced in [1e-3,1e5])");
  encode->add_flag("--shared-lambda", ea.shared_lambda, "one lambda across voxels");
  encode->add_option("--threads", ea.threads, "worker threads (default SCATTER_THREADS or 1)");
  encode->add_option("--out", ea.out, "CV result JSON path");

  DecodeArgs da;
  CLI::App* decode = app.add_subcommand("decode", "leave-one-block-out OVR logistic decoding");
  decode->add_option("--responses", da.responses, "voxel responses (.bin)")->required();
  decode->add_option("--labels", da.labels, "labels.csv (image_id,label)")->required();
  decode->add_option("--blocks", da.blocks, "sessions.csv supplying the fold ids")->required();
  decode->add_option("--lambda-grid", da.lambda_grid, "comma-separated penalties");
  decode->add_option("--fold-unit", da.fold_unit, "'block' or 'session'");
  decode->add_option("--threads", da.threads, "worker threads (default SCATTER_THREADS or 1)");
  decode->add_option("--out", da.out, "decode result JSON path");

  CompareArgs ca;
  CLI::App* compare = app.add_subcommand("compare", "voxelwise comparison of two CV results");
  compare->add_option("--a", ca.a, "baseline CV result JSON")->required();
  compare->add_option("--b", ca.b, "comparison CV result JSON")->required();
  compare->add_option("--threshold", ca.threshold, "red threshold on delta r^2");
  compare->add_option("--top-k", ca.top_k, "scatterplot voxel count");
  compare->add_option("--out", ca.out, "output pair 'map.csv,scatter.csv'");

  SynthArgs ya;
  CLI::App* synth = app.add_subcommand("synth", "synthetic textures and planted voxel responses");
  synth->add_option("--textures", ya.textures, "texture/session spec JSON");
  synth->add_option("--plant", ya.plant, "voxel plant spec JSON");
  synth->add_option("--out-dir", ya.out_dir, "output directory");
  synth->add_option("--threads", ya.threads, "worker threads (default SCATTER_THREADS or 1)");
  synth->add_flag("--dump-images", ya.dump_images, "also write each texture as a raster");

  ReproduceArgs ra;
  CLI::App* reproduce = app.add_subcommand("reproduce", "run the full synthetic study");
  reproduce->add_option("--seed", ra.seed, "master seed");
  reproduce->add_option("--out-dir", ra.out_dir, "output directory");
  reproduce->add_option("--threads", ra.threads, "worker threads (default SCATTER_THREADS or 1)");
  reproduce->add_option("--threshold", ra.threshold, "red threshold on delta r^2");
  reproduce->add_option("--top-k", ra.top_k, "scatterplot voxel count");

  if (argc <= 1) {
    std::fputs(app.help().c_str(), stderr);
    return 1;
  }
  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (CLI::App* sub = app.get_subcommand_no_throw(args.front()); sub && args.front()[0] != '-')
      args = apply_config_file(sub, std::move(args));
    // CLI11 wants reversed arguments when parsing from a vector
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.exit_code;
  }

  try {
    if (filters->parsed()) return run_filters(fa);
    if (scatter->parsed()) return run_scatter(sa);
    if (encode->parsed()) return run_encode(ea);
    if (decode->parsed()) return run_decode(da);
    if (compare->parsed()) return run_compare(ca);
    if (synth->parsed()) return run_synth(ya);
    if (reproduce->parsed()) return run_reproduce(ra);
    std::fputs(app.help().c_str(), stderr);
    return 1;
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
