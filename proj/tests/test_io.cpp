#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "core/io.hpp"

using namespace tiscat;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tiscat_io_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("raster container round trip") {
  TempDir tmp;
  std::mt19937 gen(1);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  Raster img(7, 5);
  for (double& v : img.data) v = dist(gen);

  const std::string path = tmp.file("img.bin");
  io::write_raster(path, img);
  const Raster back = io::read_raster(path);
  REQUIRE(back.width == 7);
  REQUIRE(back.height == 5);
  // payload is float32, so the round trip lands exactly on the cast values
  for (size_t i = 0; i < img.size(); ++i)
    CHECK(back.data[i] == static_cast<double>(static_cast<float>(img.data[i])));
}

TEST_CASE("pgm ingestion") {
  TempDir tmp;
  const std::string path = tmp.file("img.pgm");
  {
    std::ofstream os(path, std::ios::binary);
    os << "P5\n# a comment\n3 2\n255\n";
    const unsigned char px[6] = {0, 51, 102, 153, 204, 255};
    os.write(reinterpret_cast<const char*>(px), 6);
  }
  const Raster img = io::read_raster(path);
  REQUIRE(img.width == 3);
  REQUIRE(img.height == 2);
  // raster-scan order: first row y=0 holds pixels 0, 51, 102
  CHECK(img.at(0, 0) == 0.0);
  CHECK(img.at(1, 0) == doctest::Approx(51.0 / 255.0).epsilon(1e-12));
  CHECK(img.at(2, 1) == 1.0);
}

TEST_CASE("raster error paths") {
  TempDir tmp;
  CHECK_THROWS(io::read_raster(tmp.file("missing.bin")));
  const std::string junk = tmp.file("junk.bin");
  io::write_text_file(junk, "NOTAMAGC89");
  CHECK_THROWS_AS(io::read_raster(junk), std::runtime_error);
  const std::string trunc = tmp.file("trunc.bin");
  io::write_text_file(trunc, "SCATRAS1");
  CHECK_THROWS_AS(io::read_raster(trunc), std::runtime_error);
  // 16-bit PGM is rejected
  const std::string deep = tmp.file("deep.pgm");
  io::write_text_file(deep, "P5\n2 2\n65535\n");
  CHECK_THROWS_AS(io::read_raster(deep), std::runtime_error);
}

TEST_CASE("matrix container round trip is bitwise") {
  TempDir tmp;
  std::mt19937 gen(2);
  std::normal_distribution<double> dist;
  Eigen::MatrixXd m(4, 6);
  for (long i = 0; i < m.size(); ++i) m(i) = dist(gen);
  m(0, 0) = 1e-300;  // denormal-ish corners survive float64 storage
  m(1, 1) = -0.0;

  const std::string path = tmp.file("m.bin");
  io::write_matrix(path, m);
  const Eigen::MatrixXd back = io::read_matrix(path);
  REQUIRE(back.rows() == 4);
  REQUIRE(back.cols() == 6);
  for (long i = 0; i < m.size(); ++i) CHECK(back(i) == m(i));

  const std::string bad = tmp.file("bad.bin");
  io::write_text_file(bad, "SCATRAS1xxxxxxxx");
  CHECK_THROWS_AS(io::read_matrix(bad), std::runtime_error);
}

TEST_CASE("sessions csv round trip") {
  TempDir tmp;
  SessionLabels labels;
  labels.session = {1, 1, 2, 2, 3, 3};
  labels.block = {1, 2, 1, 2, 1, 2};
  const std::string path = tmp.file("sessions.csv");
  io::write_sessions_csv(path, labels);
  const SessionLabels back = io::read_sessions_csv(path);
  CHECK(back.session == labels.session);
  CHECK(back.block == labels.block);
  // header + contiguous ids starting at 0
  const std::string text = io::read_text_file(path);
  CHECK(text.substr(0, text.find('\n')) == "image_id,session,block");

  io::write_text_file(path, "image_id,session,block\n0,1,1\n2,1,2\n");
  CHECK_THROWS_AS(io::read_sessions_csv(path), std::runtime_error);
  io::write_text_file(path, "image_id,session,block\n");
  CHECK_THROWS_AS(io::read_sessions_csv(path), std::runtime_error);
}

TEST_CASE("labels csv round trip") {
  TempDir tmp;
  const std::vector<int> labels = {0, 5, 2, 2, 1};
  const std::string path = tmp.file("labels.csv");
  io::write_labels_csv(path, labels);
  CHECK(io::read_labels_csv(path) == labels);

  io::write_text_file(path, "image_id,label\n1,0\n");
  CHECK_THROWS_AS(io::read_labels_csv(path), std::runtime_error);
  io::write_text_file(path, "image_id,label\n0,zebra\n");
  CHECK_THROWS_AS(io::read_labels_csv(path), std::runtime_error);
}

TEST_CASE("g9 formatting") {
  CHECK(io::format_g9(0.0) == "0");
  CHECK(io::format_g9(1.0) == "1");
  CHECK(io::format_g9(-2.5) == "-2.5");
  CHECK(io::format_g9(0.1).substr(0, 3) == "0.1");
  // nine significant digits survive
  CHECK(std::stod(io::format_g9(0.123456789)) == doctest::Approx(0.123456789).epsilon(1e-9));
  CHECK(io::format_g9(1e-30).find('e') != std::string::npos);
}

TEST_CASE("matrix csv round trip") {
  TempDir tmp;
  Eigen::MatrixXd m(2, 3);
  m << 1.5, -2.25, 3.0, 0.0625, 5.0, -0.5;
  const std::string path = tmp.file("m.csv");

  SUBCASE("with row ids") {
    io::write_matrix_csv(path, m, {"a", "b", "c"}, {"r0", "r1"});
    const Eigen::MatrixXd back = io::read_matrix_csv(path);
    REQUIRE(back.rows() == 2);
    REQUIRE(back.cols() == 3);
    for (long i = 0; i < m.size(); ++i) CHECK(back(i) == m(i));
    const std::string text = io::read_text_file(path);
    CHECK(text.substr(0, text.find('\n')) == "image_id,a,b,c");
  }
  SUBCASE("without row ids") {
    io::write_matrix_csv(path, m, {"a", "b", "c"}, {});
    const Eigen::MatrixXd back = io::read_matrix_csv(path);
    REQUIRE(back.rows() == 2);
    for (long i = 0; i < m.size(); ++i) CHECK(back(i) == m(i));
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(io::write_matrix_csv(path, m, {"a"}, {}), std::invalid_argument);
    CHECK_THROWS_AS(io::write_matrix_csv(path, m, {"a", "b", "c"}, {"r0"}),
                    std::invalid_argument);
    io::write_text_file(path, "a,b\n1,2\n3\n");
    CHECK_THROWS_AS(io::read_matrix_csv(path), std::runtime_error);
    io::write_text_file(path, "a,b\n");
    CHECK_THROWS_AS(io::read_matrix_csv(path), std::runtime_error);
  }
}

TEST_CASE("text files") {
  TempDir tmp;
  const std::string path = tmp.file("t.txt");
  const std::string content = "line1\nline2\n";
  io::write_text_file(path, content);
  CHECK(io::read_text_file(path) == content);
  CHECK_THROWS(io::read_text_file(tmp.file("missing.txt")));
}
