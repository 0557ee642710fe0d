#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sscnet/types.hpp"

namespace sscnet {

enum class MatrixFormat { npy, csv };

/// .npy -> npy, .csv/.txt -> csv; anything else is an io error.
MatrixFormat format_from_path(const std::filesystem::path& path);

/// NPY v1.0/v2.0 with descr '<f4' or '<f8' and a 2-D shape.
Matrix decode_npy(std::string_view bytes);
/// NPY v1.0, '<f8', C order.
std::string encode_npy(const Matrix& m);

/// Headerless comma-separated rows.
Matrix decode_csv(std::string_view text);
/// Shortest round-trip decimal representation of every entry.
std::string encode_csv(const Matrix& m);

/// Reads any finite 2-D matrix; format chosen by extension.
Matrix read_matrix(const std::filesystem::path& path);
/// read_matrix plus ActivationMatrix validation (d x N, N >= 2).
ActivationMatrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const Matrix& m);

/// Newline-delimited integer class ids.
LabelVector load_labels(const std::filesystem::path& path, int num_classes = -1);
void save_labels(const std::filesystem::path& path, const LabelVector& labels);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace sscnet
