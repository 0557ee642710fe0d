#include "sscnet/matrix_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <regex>
#include <sstream>
#include <vector>

#include "sscnet/error.hpp"

namespace sscnet {

namespace {

static_assert(std::endian::native == std::endian::little,
              "NPY reader/writer assumes a little-endian host");

constexpr std::string_view kNpyMagic = "\x93NUMPY";

[[noreturn]] void parse_error(const std::string& message) {
  throw Error(ErrorCode::parse, message);
}

std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r' && c != '\n'; };
  const auto first = std::find_if(s.begin(), s.end(), not_space);
  const auto last = std::find_if(s.rbegin(), s.rend(), not_space).base();
  return first < last ? std::string_view(first, static_cast<std::size_t>(last - first))
                      : std::string_view{};
}

void require_finite(const Matrix& m, const std::string& source) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j))) {
        throw Error(ErrorCode::invalid_input, source + ": non-finite value (NaN or Inf) at row " +
                                                  std::to_string(i) + ", column " +
                                                  std::to_string(j));
      }
    }
  }
}

struct NpyHeader {
  std::string descr;
  bool fortran_order = false;
  std::vector<Index> shape;
};

NpyHeader parse_npy_header(const std::string& dict) {
  NpyHeader h;
  std::smatch m;
  static const std::regex descr_re(R"('descr'\s*:\s*'([^']*)')");
  static const std::regex order_re(R"('fortran_order'\s*:\s*(True|False))");
  static const std::regex shape_re(R"('shape'\s*:\s*\(([^)]*)\))");
  if (!std::regex_search(dict, m, descr_re)) parse_error("npy: malformed header (no 'descr')");
  h.descr = m[1];
  if (!std::regex_search(dict, m, order_re)) {
    parse_error("npy: malformed header (no 'fortran_order')");
  }
  h.fortran_order = m[1] == "True";
  if (!std::regex_search(dict, m, shape_re)) parse_error("npy: malformed header (no 'shape')");
  const std::string dims = m[1];
  std::stringstream ss(dims);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string_view t = trim(item);
    if (t.empty()) continue;
    long long v = -1;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || v < 0) {
      parse_error("npy: malformed header (bad shape entry '" + std::string(t) + "')");
    }
    h.shape.push_back(static_cast<Index>(v));
  }
  return h;
}

template <class T>
Matrix read_payload(std::string_view payload, Index rows, Index cols, bool fortran_order) {
  const std::size_t count = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  if (payload.size() != count * sizeof(T)) {
    parse_error("npy: payload holds " + std::to_string(payload.size()) + " bytes, expected " +
                std::to_string(count * sizeof(T)));
  }
  std::vector<T> buf(count);
  std::memcpy(buf.data(), payload.data(), payload.size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const std::size_t at = fortran_order ? static_cast<std::size_t>(j * rows + i)
                                           : static_cast<std::size_t>(i * cols + j);
      m(i, j) = static_cast<double>(buf[at]);
    }
  }
  return m;
}

}  // namespace

MatrixFormat format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".npy") return MatrixFormat::npy;
  if (ext == ".csv" || ext == ".txt") return MatrixFormat::csv;
  throw Error(ErrorCode::io, "unrecognized matrix file extension '" + ext + "' (" +
                                 path.string() + "); expected .npy or .csv");
}

Matrix decode_npy(std::string_view bytes) {
  if (bytes.size() < 10 || bytes.substr(0, kNpyMagic.size()) != kNpyMagic) {
    parse_error("npy: missing magic bytes");
  }
  const auto major = static_cast<unsigned char>(bytes[6]);
  std::size_t header_len = 0;
  std::size_t offset = 0;
  if (major == 1) {
    header_len = static_cast<unsigned char>(bytes[8]) |
                 (static_cast<std::size_t>(static_cast<unsigned char>(bytes[9])) << 8);
    offset = 10;
  } else if (major == 2 || major == 3) {
    if (bytes.size() < 12) parse_error("npy: truncated header");
    for (int b = 0; b < 4; ++b) {
      header_len |= static_cast<std::size_t>(static_cast<unsigned char>(bytes[8 + b])) << (8 * b);
    }
    offset = 12;
  } else {
    parse_error("npy: unsupported format version " + std::to_string(major));
  }
  if (bytes.size() < offset + header_len) parse_error("npy: truncated header");
  const NpyHeader h = parse_npy_header(std::string(bytes.substr(offset, header_len)));

  if (h.shape.size() != 2) {
    throw Error(ErrorCode::invalid_input,
                "npy: expected a 2-D array, got " + std::to_string(h.shape.size()) + "-D");
  }
  const std::string_view payload = bytes.substr(offset + header_len);
  if (h.descr == "<f8") return read_payload<double>(payload, h.shape[0], h.shape[1], h.fortran_order);
  if (h.descr == "<f4") return read_payload<float>(payload, h.shape[0], h.shape[1], h.fortran_order);
  throw Error(ErrorCode::invalid_input,
              "npy: unsupported element type '" + h.descr + "' (expected '<f4' or '<f8')");
}

std::string encode_npy(const Matrix& m) {
  std::string dict = "{'descr': '<f8', 'fortran_order': False, 'shape': (" +
                     std::to_string(m.rows()) + ", " + std::to_string(m.cols()) + "), }";
  // Pad so that magic + version + length + header is a multiple of 64 bytes.
  const std::size_t unpadded = kNpyMagic.size() + 2 + 2 + dict.size() + 1;
  dict.append((64 - unpadded % 64) % 64, ' ');
  dict.push_back('\n');

  std::string out;
  out.reserve(10 + dict.size() + static_cast<std::size_t>(m.size()) * sizeof(double));
  out.append(kNpyMagic);
  out.push_back('\x01');
  out.push_back('\x00');
  out.push_back(static_cast<char>(dict.size() & 0xff));
  out.push_back(static_cast<char>((dict.size() >> 8) & 0xff));
  out.append(dict);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      std::array<char, sizeof(double)> raw{};
      const double v = m(i, j);
      std::memcpy(raw.data(), &v, sizeof v);
      out.append(raw.data(), raw.size());
    }
  }
  return out;
}

Matrix decode_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t field_start = 0;
    while (true) {
      std::size_t comma = line.find(',', field_start);
      const std::string_view field =
          trim(line.substr(field_start, comma == std::string_view::npos ? line.size() - field_start
                                                                          : comma - field_start));
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
        parse_error("csv: line " + std::to_string(line_no) + ": cannot parse '" +
                    std::string(field) + "' as a real number");
      }
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      field_start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      parse_error("csv: line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                  " columns, expected " + std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) parse_error("csv: no data rows");
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string encode_csv(const Matrix& m) {
  std::string out;
  std::array<char, 32> buf{};
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out.push_back(',');
      const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), m(i, j));
      out.append(buf.data(), ptr);
    }
    out.push_back('\n');
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path.string() + "' for reading");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io, "cannot open '" + tmp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorCode::io, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::io, "cannot move output into place at '" + path.string() + "'");
  }
}

Matrix read_matrix(const std::filesystem::path& path) {
  const MatrixFormat format = format_from_path(path);
  const std::string bytes = read_file(path);
  Matrix m;
  try {
    m = format == MatrixFormat::npy ? decode_npy(bytes) : decode_csv(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
  require_finite(m, path.string());
  return m;
}

ActivationMatrix load_matrix(const std::filesystem::path& path) {
  Matrix m = read_matrix(path);
  try {
    return ActivationMatrix(std::move(m));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void save_matrix(const std::filesystem::path& path, const Matrix& m) {
  const MatrixFormat format = format_from_path(path);
  write_file_atomic(path, format == MatrixFormat::npy ? encode_npy(m) : encode_csv(m));
}

LabelVector load_labels(const std::filesystem::path& path, int num_classes) {
  const std::string text = read_file(path);
  std::vector<int> ids;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty()) continue;
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
      throw Error(ErrorCode::parse, path.string() + ": line " + std::to_string(line_no) +
                                        ": '" + std::string(t) + "' is not an integer label");
    }
    ids.push_back(v);
  }
  try {
    return LabelVector(std::move(ids), num_classes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void save_labels(const std::filesystem::path& path, const LabelVector& labels) {
  std::string out;
  for (int id : labels.ids()) {
    out += std::to_string(id);
    out.push_back('\n');
  }
  write_file_atomic(path, out);
}

}  // namespace sscnet
