// End-to-end checks of the installed command-line tool (TISCAT_CLI_PATH).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tiscat_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

RunResult run(const TempDir& tmp, const std::string& args) {
  static int counter = 0;
  const fs::path out_f = tmp.path / ("stdout_" + std::to_string(counter));
  const fs::path err_f = tmp.path / ("stderr_" + std::to_string(counter));
  ++counter;
  const std::string cmd = std::string(TISCAT_CLI_PATH) + " " + args + " > " + out_f.string() +
                          " 2> " + err_f.string();
  const int rc = std::system(cmd.c_str());
  RunResult res;
  res.code = rc == -1 ? -1 : WEXITSTATUS(rc);
  res.out = slurp(out_f);
  res.err = slurp(err_f);
  return res;
}

template <typename T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void write_raster_file(const std::string& path, int w, int h, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
  std::ofstream os(path, std::ios::binary);
  os.write("SCATRAS1", 8);
  put<uint32_t>(os, static_cast<uint32_t>(w));
  put<uint32_t>(os, static_cast<uint32_t>(h));
  for (int i = 0; i < w * h; ++i) put<float>(os, dist(gen));
}

void write_matrix_file(const std::string& path, const std::vector<std::vector<double>>& rows) {
  std::ofstream os(path, std::ios::binary);
  os.write("SCATMAT1", 8);
  put<uint32_t>(os, static_cast<uint32_t>(rows.size()));
  put<uint32_t>(os, static_cast<uint32_t>(rows[0].size()));
  for (const auto& r : rows)
    for (double v : r) put<double>(os, v);
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("no arguments prints help and fails") {
  TempDir tmp;
  const RunResult res = run(tmp, "");
  CHECK(res.code == 1);
  CHECK(res.err.find("Usage") != std::string::npos);
  CHECK(res.err.find("scatter") != std::string::npos);
}

TEST_CASE("unknown flags are rejected with an error prefix") {
  TempDir tmp;
  const RunResult res = run(tmp, "filters --no-such-flag");
  CHECK(res.code == 1);
  CHECK(res.err.rfind("error:", 0) == 0);
}

TEST_CASE("filters writes an LP report and its resolved config") {
  TempDir tmp;
  const std::string out = tmp.file("lp.json");
  const RunResult res = run(tmp, "filters --J 3 --L 2 --size 64x64 --out " + out);
  CHECK(res.code == 0);
  const std::string rep = slurp(out);
  CHECK(rep.find("\"a_min\"") != std::string::npos);
  CHECK(rep.find("\"ratio\"") != std::string::npos);

  const std::string cfg = slurp(tmp.path / "filters_lp.config");
  CHECK(cfg.find("J=3\n") != std::string::npos);
  CHECK(cfg.find("L=2\n") != std::string::npos);
  CHECK(cfg.find("size=64x64\n") != std::string::npos);

  // a run driven by the resolved config reproduces the report
  const std::string out2 = tmp.file("lp2.json");
  const RunResult res2 =
      run(tmp, "filters --config " + tmp.file("filters_lp.config") + " --out " + out2);
  CHECK(res2.code == 0);
  std::string a = slurp(out), b = slurp(out2);
  CHECK(a == b);
}

TEST_CASE("invalid filter parameters exit nonzero") {
  TempDir tmp;
  const RunResult res = run(tmp, "filters --J 0 --out " + tmp.file("x.json"));
  CHECK(res.code != 0);
  CHECK(res.err.rfind("error:", 0) == 0);
}

TEST_CASE("config file handling") {
  TempDir tmp;
  SUBCASE("unknown keys are rejected") {
    std::ofstream(tmp.file("bad.config")) << "bogus=1\n";
    const RunResult res = run(tmp, "filters --config " + tmp.file("bad.config"));
    CHECK(res.code == 1);
    CHECK(res.err.find("unknown config key 'bogus'") != std::string::npos);
  }
  SUBCASE("missing config file is a runtime error") {
    const RunResult res = run(tmp, "filters --config " + tmp.file("nope.config"));
    CHECK(res.code == 2);
    CHECK(res.err.find("cannot open config") != std::string::npos);
  }
  SUBCASE("command line overrides the config") {
    std::ofstream(tmp.file("j.config")) << "J=2\nL=2\nsize=64x64\n";
    const std::string out = tmp.file("lp.json");
    const RunResult res =
        run(tmp, "filters --config " + tmp.file("j.config") + " --J 4 --out " + out);
    CHECK(res.code == 0);
    // resolved config records the effective value
    CHECK(slurp(tmp.path / "filters_lp.config").find("J=4\n") != std::string::npos);
  }
  SUBCASE("malformed lines are flagged with a line number") {
    std::ofstream(tmp.file("m.config")) << "# comment ok\nnot a pair\n";
    const RunResult res = run(tmp, "filters --config " + tmp.file("m.config"));
    CHECK(res.code == 1);
    CHECK(res.err.find(":2:") != std::string::npos);
  }
}

TEST_CASE("scatter produces the expected feature table") {
  TempDir tmp;
  for (int i = 0; i < 3; ++i)
    write_raster_file(tmp.file("img" + std::to_string(i) + ".bin"), 64, 64, 100u + i);
  const std::string images =
      tmp.file("img0.bin") + "," + tmp.file("img1.bin") + "," + tmp.file("img2.bin");
  const std::string out = tmp.file("feats.csv");
  const RunResult res =
      run(tmp, "scatter --images " + images + " --J 4 --L 8 --M 2 --threads 2 --out " + out);
  REQUIRE(res.code == 0);

  const std::string csv = slurp(out);
  CHECK(count_lines(csv) == 4);  // header + 3 images
  const std::string header = csv.substr(0, csv.find('\n'));
  CHECK(header.rfind("image_id,m0,m1_j0g0", 0) == 0);
  // 417 features for J=4, L=8, M=2 plus the id column
  CHECK(std::count(header.begin(), header.end(), ',') == 417);

  // binary output carries the same matrix shape
  const std::string bin = tmp.file("feats.bin");
  const RunResult res2 =
      run(tmp, "scatter --images " + images + " --J 4 --L 8 --M 2 --out " + bin);
  REQUIRE(res2.code == 0);
  const std::string payload = slurp(bin);
  CHECK(payload.size() == 16 + 3u * 417u * 8u);
  CHECK(payload.substr(0, 8) == "SCATMAT1");
}

TEST_CASE("scatter rejects missing inputs") {
  TempDir tmp;
  const RunResult res = run(tmp, "scatter --images " + tmp.file("none.bin") + " --out " +
                                     tmp.file("f.csv"));
  CHECK(res.code != 0);
  CHECK(res.err.rfind("error:", 0) == 0);
}

TEST_CASE("encode, decode and compare round trip") {
  TempDir tmp;
  // 24 images, 3 features; voxel 0 follows feature 1, voxel 1 is noise
  std::mt19937 gen(9);
  std::normal_distribution<double> dist;
  std::vector<std::vector<double>> X(24, std::vector<double>(3));
  std::vector<std::vector<double>> Y(24, std::vector<double>(2));
  for (int i = 0; i < 24; ++i) {
    for (int f = 0; f < 3; ++f) X[static_cast<size_t>(i)][static_cast<size_t>(f)] = dist(gen);
    Y[static_cast<size_t>(i)][0] = 2.0 * X[static_cast<size_t>(i)][1];
    Y[static_cast<size_t>(i)][1] = dist(gen);
  }
  write_matrix_file(tmp.file("X.bin"), X);
  write_matrix_file(tmp.file("Y.bin"), Y);
  {
    std::ofstream os(tmp.file("sessions.csv"));
    os << "image_id,session,block\n";
    for (int i = 0; i < 24; ++i) os << i << ',' << i / 8 + 1 << ',' << i % 8 / 2 + 1 << '\n';
    std::ofstream ol(tmp.file("labels.csv"));
    ol << "image_id,label\n";
    for (int i = 0; i < 24; ++i) ol << i << ',' << i % 2 << '\n';
  }

  const RunResult enc = run(tmp, "encode --features " + tmp.file("X.bin") + " --responses " +
                                     tmp.file("Y.bin") + " --sessions " + tmp.file("sessions.csv") +
                                     " --lambda-grid 0.001,1 --out " + tmp.file("cv.json"));
  REQUIRE(enc.code == 0);
  const std::string cv = slurp(tmp.file("cv.json"));
  CHECK(cv.find("\"mean_r2\"") != std::string::npos);
  CHECK(cv.find("\"outer_sessions\"") != std::string::npos);

  const RunResult dec = run(tmp, "decode --responses " + tmp.file("Y.bin") + " --labels " +
                                     tmp.file("labels.csv") + " --blocks " +
                                     tmp.file("sessions.csv") +
                                     " --fold-unit session --lambda-grid 1 --out " +
                                     tmp.file("dec.json"));
  REQUIRE(dec.code == 0);
  CHECK(slurp(tmp.file("dec.json")).find("\"mean_accuracy\"") != std::string::npos);

  const RunResult cmp = run(tmp, "compare --a " + tmp.file("cv.json") + " --b " +
                                     tmp.file("cv.json") + " --out " + tmp.file("map.csv") + "," +
                                     tmp.file("scatter.csv"));
  REQUIRE(cmp.code == 0);
  const std::string map = slurp(tmp.file("map.csv"));
  CHECK(count_lines(map) == 3);  // header + 2 voxels
  // identical models: every delta is zero, all voxels blue
  CHECK(map.find("red") == std::string::npos);
  CHECK(fs::exists(tmp.file("scatter.csv")));
}

TEST_CASE("encode with a missing input file fails cleanly") {
  TempDir tmp;
  const RunResult res = run(tmp, "encode --features " + tmp.file("nope.bin") + " --responses " +
                                     tmp.file("nope2.bin") + " --sessions " + tmp.file("s.csv") +
                                     " --out " + tmp.file("cv.json"));
  CHECK(res.code == 2);
  CHECK(res.err.rfind("error:", 0) == 0);
}
