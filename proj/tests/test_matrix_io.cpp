#include <doctest.h>

#include <filesystem>
#include <limits>
#include <random>
#include <string>

#include "oracles.hpp"
#include "support.hpp"
#include "sscnet/matrix_io.hpp"

using namespace sscnet;
using support::code_of;
namespace fs = std::filesystem;

namespace {

const fs::path kIo = fs::path(SSCNET_FIXTURE_DIR) / "io";

Matrix small_3x4() {
  Matrix m(3, 4);
  m << 1.5, -2, 0, 4,
       0.25, 3, -1e-3, 7,
       -8, 9.75, 10, 0.5;
  return m;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("sscnet_io_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("format follows the extension") {
  CHECK(format_from_path("a/b.npy") == MatrixFormat::npy);
  CHECK(format_from_path("b.CSV") == MatrixFormat::csv);
  CHECK(format_from_path("b.txt") == MatrixFormat::csv);
  CHECK(code_of([] { format_from_path("b.mat"); }) == ErrorCode::io);
}

TEST_CASE("save then load is bit-identical") {
  TempDir dir;
  std::mt19937_64 rng(1);
  Matrix m = oracle::random_matrix(7, 5, rng, 1e3);
  m(0, 0) = std::numeric_limits<double>::denorm_min();
  m(1, 1) = -0.0;
  m(2, 2) = 0.1;
  for (const char* name : {"m.npy", "m.csv"}) {
    save_matrix(dir.path / name, m);
    const Matrix back = read_matrix(dir.path / name);
    CHECK(support::bit_equal(back, m));
  }
  CHECK(encode_npy(m).size() % 64 == 5 * 7 * 8 % 64);
  CHECK(support::bit_equal(decode_npy(encode_npy(m)), m));
}

TEST_CASE("numpy-written files decode") {
  const Matrix ref = small_3x4();
  CHECK(read_matrix(kIo / "small_3x4_f8.npy") == ref);
  CHECK(read_matrix(kIo / "small_3x4_fortran.npy") == ref);
  CHECK(read_matrix(kIo / "small_3x4_v2.npy") == ref);
  const Matrix f4 = read_matrix(kIo / "small_3x4_f4.npy");
  CHECK(f4 == ref.cast<float>().cast<double>());
}

TEST_CASE("csv fixture with 3 rows and 4 columns") {
  const ActivationMatrix x = load_matrix(kIo / "small_3x4.csv");
  CHECK(x.neurons() == 3);
  CHECK(x.samples() == 4);
  CHECK(x.values() == small_3x4());
}

TEST_CASE("malformed inputs are rejected with distinct errors") {
  CHECK(code_of([] { read_matrix(kIo / "vector.npy"); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { read_matrix(kIo / "int32.npy"); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { read_matrix(kIo / "missing.npy"); }) == ErrorCode::io);
  CHECK(code_of([] { decode_npy("not an npy file"); }) == ErrorCode::parse);
  const std::string good = encode_npy(small_3x4());
  CHECK(code_of([&] { decode_npy(good.substr(0, good.size() - 3)); }) == ErrorCode::parse);
  CHECK(code_of([&] { decode_npy(good.substr(0, 20)); }) == ErrorCode::parse);

  CHECK(code_of([] { decode_csv("1,2\n3\n"); }) == ErrorCode::parse);
  CHECK(code_of([] { decode_csv("1,x\n"); }) == ErrorCode::parse);
  CHECK(code_of([] { decode_csv("1,,2\n"); }) == ErrorCode::parse);
  CHECK(code_of([] { decode_csv("\n\n"); }) == ErrorCode::parse);

  TempDir dir;
  write_file_atomic(dir.path / "nan.csv", "1,2\nnan,4\n");
  try {
    read_matrix(dir.path / "nan.csv");
    FAIL("expected invalid_input");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_input);
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  }
  write_file_atomic(dir.path / "one_col.csv", "1\n2\n");
  CHECK(code_of([&] { load_matrix(dir.path / "one_col.csv"); }) == ErrorCode::invalid_input);
}

TEST_CASE("labels round trip and reject junk") {
  TempDir dir;
  const LabelVector labels({2, 0, 1, 1, 0});
  save_labels(dir.path / "labels.txt", labels);
  const LabelVector back = load_labels(dir.path / "labels.txt");
  CHECK(back.ids() == labels.ids());
  CHECK(back.num_classes() == 3);

  write_file_atomic(dir.path / "bad.txt", "0\n1\nzz\n");
  CHECK(code_of([&] { load_labels(dir.path / "bad.txt"); }) == ErrorCode::parse);
  write_file_atomic(dir.path / "neg.txt", "0\n-1\n");
  CHECK(code_of([&] { load_labels(dir.path / "neg.txt"); }) == ErrorCode::invalid_input);
}

TEST_CASE("atomic write leaves no temporary behind") {
  TempDir dir;
  write_file_atomic(dir.path / "out.txt", "first");
  write_file_atomic(dir.path / "out.txt", "second");
  CHECK(read_file(dir.path / "out.txt") == "second");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path)) ++entries;
  CHECK(entries == 1);
}
