#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "core/encoding.hpp"
#include "core/raster.hpp"

namespace tiscat::io {

// Raster container: 8-byte magic "SCATRAS1", u32 LE width, u32 LE height,
// then width*height float32 LE in raster-scan order (y outer, x inner).
void write_raster(const std::string& path, const Raster& img);
Raster read_raster(const std::string& path);  // also ingests 8-bit binary PGM (P5)

// Matrix container: 8-byte magic "SCATMAT1", u32 LE rows, u32 LE cols,
// then rows*cols float64 LE row-major.
void write_matrix(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(const std::string& path);

// sessions.csv: header image_id,session,block
void write_sessions_csv(const std::string& path, const SessionLabels& labels);
SessionLabels read_sessions_csv(const std::string& path);

// labels.csv: header image_id,label
void write_labels_csv(const std::string& path, const std::vector<int>& labels);
std::vector<int> read_labels_csv(const std::string& path);

/// Shortest decimal form with 9 significant digits, '.' decimal, no locale.
std::string format_g9(double v);

/// CSV with a header row; first column holds row_ids (may be empty).
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& col_labels,
                      const std::vector<std::string>& row_ids);
/// Reads a numeric CSV produced by write_matrix_csv; the first column is
/// skipped when its header is "image_id" or "id" (a row-id column).
Eigen::MatrixXd read_matrix_csv(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace tiscat::io
