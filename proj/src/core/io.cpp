#include "core/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tiscat::io {

namespace {

// LE scalar helpers; assume a little-endian host (checked nowhere fancier —
// the build targets x86-64/aarch64).
template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& is, const std::string& path) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw std::runtime_error("truncated file: " + path);
  return v;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::binary) {
  std::ofstream os(path, mode);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::binary) {
  std::ifstream is(path, mode);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return is;
}

Raster read_pgm(std::istream& is, const std::string& path) {
  auto next_token = [&]() {
    std::string tok;
    int c;
    while ((c = is.get()) != EOF) {
      if (c == '#') {  // comment to end of line
        while ((c = is.get()) != EOF && c != '\n') {
        }
        continue;
      }
      if (std::isspace(c)) {
        if (!tok.empty()) break;
        continue;
      }
      tok.push_back(static_cast<char>(c));
    }
    if (tok.empty()) throw std::runtime_error("malformed PGM header: " + path);
    return tok;
  };
  const int w = std::stoi(next_token());
  const int h = std::stoi(next_token());
  const int maxval = std::stoi(next_token());
  if (w < 1 || h < 1 || maxval < 1 || maxval > 255)
    throw std::runtime_error("unsupported PGM (need 8-bit P5): " + path);
  // header terminated by the single whitespace already consumed by next_token
  std::vector<unsigned char> buf(static_cast<size_t>(w) * h);
  is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!is) throw std::runtime_error("truncated PGM payload: " + path);
  Raster img(w, h);
  size_t i = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img.at(x, y) = static_cast<double>(buf[i++]) / maxval;
  return img;
}

}  // namespace

void write_raster(const std::string& path, const Raster& img) {
  std::ofstream os = open_out(path);
  os.write("SCATRAS1", 8);
  put<uint32_t>(os, static_cast<uint32_t>(img.width));
  put<uint32_t>(os, static_cast<uint32_t>(img.height));
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) put<float>(os, static_cast<float>(img.at(x, y)));
  if (!os) throw std::runtime_error("write failed: " + path);
}

Raster read_raster(const std::string& path) {
  std::ifstream is = open_in(path);
  char magic[8];
  is.read(magic, 8);
  if (!is) throw std::runtime_error("truncated file: " + path);
  if (std::memcmp(magic, "SCATRAS1", 8) == 0) {
    const auto w = get<uint32_t>(is, path);
    const auto h = get<uint32_t>(is, path);
    if (w < 1 || h < 1 || w > (1u << 20) || h > (1u << 20))
      throw std::runtime_error("implausible raster dimensions: " + path);
    Raster img(static_cast<int>(w), static_cast<int>(h));
    for (uint32_t y = 0; y < h; ++y)
      for (uint32_t x = 0; x < w; ++x)
        img.at(static_cast<int>(x), static_cast<int>(y)) = get<float>(is, path);
    return img;
  }
  if (magic[0] == 'P' && magic[1] == '5') {
    is.seekg(2);
    return read_pgm(is, path);
  }
  throw std::runtime_error("unrecognized raster format (want SCATRAS1 or PGM P5): " + path);
}

void write_matrix(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream os = open_out(path);
  os.write("SCATMAT1", 8);
  put<uint32_t>(os, static_cast<uint32_t>(m.rows()));
  put<uint32_t>(os, static_cast<uint32_t>(m.cols()));
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c) put<double>(os, m(r, c));
  if (!os) throw std::runtime_error("write failed: " + path);
}

Eigen::MatrixXd read_matrix(const std::string& path) {
  std::ifstream is = open_in(path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, "SCATMAT1", 8) != 0)
    throw std::runtime_error("unrecognized matrix format (want SCATMAT1): " + path);
  const auto rows = get<uint32_t>(is, path);
  const auto cols = get<uint32_t>(is, path);
  Eigen::MatrixXd m(rows, cols);
  for (uint32_t r = 0; r < rows; ++r)
    for (uint32_t c = 0; c < cols; ++c) m(r, c) = get<double>(is, path);
  return m;
}

void write_sessions_csv(const std::string& path, const SessionLabels& labels) {
  std::ofstream os = open_out(path, std::ios::out);
  os << "image_id,session,block\n";
  for (int i = 0; i < labels.n_images(); ++i)
    os << i << ',' << labels.session[static_cast<size_t>(i)] << ','
       << labels.block[static_cast<size_t>(i)] << '\n';
  if (!os) throw std::runtime_error("write failed: " + path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

int parse_int(const std::string& s, const std::string& path) {
  try {
    size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("malformed integer '" + s + "' in " + path);
  }
}

}  // namespace

SessionLabels read_sessions_csv(const std::string& path) {
  std::ifstream is = open_in(path, std::ios::in);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty file: " + path);
  SessionLabels labels;
  int expect = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 3) throw std::runtime_error("expected 3 columns in " + path);
    if (parse_int(cells[0], path) != expect)
      throw std::runtime_error("non-contiguous image_id in " + path);
    labels.session.push_back(parse_int(cells[1], path));
    labels.block.push_back(parse_int(cells[2], path));
    ++expect;
  }
  if (labels.session.empty()) throw std::runtime_error("no rows in " + path);
  return labels;
}

void write_labels_csv(const std::string& path, const std::vector<int>& labels) {
  std::ofstream os = open_out(path, std::ios::out);
  os << "image_id,label\n";
  for (size_t i = 0; i < labels.size(); ++i) os << i << ',' << labels[i] << '\n';
  if (!os) throw std::runtime_error("write failed: " + path);
}

std::vector<int> read_labels_csv(const std::string& path) {
  std::ifstream is = open_in(path, std::ios::in);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty file: " + path);
  std::vector<int> labels;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 2) throw std::runtime_error("expected 2 columns in " + path);
    if (parse_int(cells[0], path) != static_cast<int>(labels.size()))
      throw std::runtime_error("non-contiguous image_id in " + path);
    labels.push_back(parse_int(cells[1], path));
  }
  if (labels.empty()) throw std::runtime_error("no rows in " + path);
  return labels;
}

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& col_labels,
                      const std::vector<std::string>& row_ids) {
  if (col_labels.size() != static_cast<size_t>(m.cols()))
    throw std::invalid_argument("column label count mismatch");
  if (!row_ids.empty() && row_ids.size() != static_cast<size_t>(m.rows()))
    throw std::invalid_argument("row id count mismatch");
  std::ofstream os = open_out(path, std::ios::out);
  if (!row_ids.empty()) os << "image_id";
  for (size_t c = 0; c < col_labels.size(); ++c) {
    if (c > 0 || !row_ids.empty()) os << ',';
    os << col_labels[c];
  }
  os << '\n';
  for (long r = 0; r < m.rows(); ++r) {
    if (!row_ids.empty()) os << row_ids[static_cast<size_t>(r)];
    for (long c = 0; c < m.cols(); ++c) {
      if (c > 0 || !row_ids.empty()) os << ',';
      os << format_g9(m(r, c));
    }
    os << '\n';
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::ifstream is = open_in(path, std::ios::in);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty file: " + path);
  auto header = split_csv_line(line);
  if (header.empty()) throw std::runtime_error("empty header in " + path);
  const bool skip_first = header[0] == "image_id" || header[0] == "id";
  const size_t first_col = skip_first ? 1 : 0;
  const size_t n_cols = header.size() - first_col;

  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw std::runtime_error("inconsistent column count in " + path);
    std::vector<double> row(n_cols);
    for (size_t c = first_col; c < cells.size(); ++c) {
      const auto& s = cells[c];
      double v;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || p != s.data() + s.size())
        throw std::runtime_error("malformed number '" + s + "' in " + path);
      row[c - first_col] = v;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("no data rows in " + path);
  Eigen::MatrixXd m(static_cast<long>(rows.size()), static_cast<long>(n_cols));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < n_cols; ++c) m(static_cast<long>(r), static_cast<long>(c)) = rows[r][c];
  return m;
}

std::string read_text_file(const std::string& path) {
  std::ifstream is = open_in(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os = open_out(path);
  os << content;
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace tiscat::io
