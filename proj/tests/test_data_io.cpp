#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

#include "oba/dataset.hpp"
#include "oba/rng.hpp"

using namespace oba;
namespace fs = std::filesystem;

namespace {

struct TempFile {
  fs::path path;
  explicit TempFile(const std::string& name)
      : path(fs::temp_directory_path() / name) {}
  ~TempFile() { std::remove(path.string().c_str()); }
  void fill(const std::string& text) {
    std::ofstream out(path);
    out << text;
  }
};

}  // namespace

TEST_CASE("reads a small libsvm file") {
  TempFile f("oba_io_basic.txt");
  f.fill("+1 1:0.5 3:2\n-1 2:-1.5\n");
  auto ds = read_libsvm(f.path.string());
  CHECK(ds.a.rows() == 2);
  CHECK(ds.a.cols() == 3);
  CHECK(ds.y == std::vector<double>{1, -1});
  CHECK(ds.a.matvec(DenseVector{1, 1, 1}) == DenseVector{2.5, -1.5});
}

TEST_CASE("comments, blank lines and CRLF are tolerated") {
  TempFile f("oba_io_crlf.txt");
  f.fill("# header comment\r\n1 1:2.0\r\n\r\n0 2:3.0 # trailing comment\r\n");
  auto ds = read_libsvm(f.path.string());
  CHECK(ds.a.rows() == 2);
  CHECK(ds.y == std::vector<double>{1, -1});  // default map sends 0 to -1
}

TEST_CASE("custom label map and passthrough") {
  TempFile f("oba_io_map.txt");
  f.fill("3 1:1\n7 1:2\n");
  auto mapped = read_libsvm(f.path.string(),
                            std::map<double, double>{{3, -1}, {7, 1}});
  CHECK(mapped.y == std::vector<double>{-1, 1});
  // regression targets survive untouched (no 0/1 present)
  auto raw = read_libsvm(f.path.string());
  CHECK(raw.y == std::vector<double>{3, 7});
}

TEST_CASE("malformed input is rejected with a line number") {
  TempFile f("oba_io_bad.txt");

  f.fill("1 2:1 1:2\n");  // decreasing index
  CHECK_THROWS_WITH_AS(read_libsvm(f.path.string()),
                       doctest::Contains("line 1"), std::runtime_error);

  f.fill("1 1:1\n1 0:2\n");  // zero index (format is 1-based)
  CHECK_THROWS_WITH_AS(read_libsvm(f.path.string()),
                       doctest::Contains("line 2"), std::runtime_error);

  f.fill("1 1:abc\n");
  CHECK_THROWS(read_libsvm(f.path.string()));

  f.fill("1 1:1 1:2\n");  // duplicate index
  CHECK_THROWS(read_libsvm(f.path.string()));

  CHECK_THROWS(read_libsvm("/nonexistent/oba_missing.txt"));
}

TEST_CASE("write then read round trips exactly") {
  Uniform01 rng(3);
  std::vector<double> dense(7 * 5, 0.0);
  for (double& v : dense)
    if (rng.next() < 0.6) v = rng.next_signed() * 1e3;
  Dataset ds{SparseMatrix::from_dense(7, 5, dense), {}};
  for (int i = 0; i < 7; ++i) ds.y.push_back(rng.next() > 0.5 ? 1.0 : -1.0);

  TempFile f("oba_io_roundtrip.txt");
  write_libsvm(ds, f.path.string());
  auto back = read_libsvm(f.path.string());
  CHECK(back.y == ds.y);
  REQUIRE(back.a.rows() == ds.a.rows());
  Uniform01 probe(4);
  for (int rep = 0; rep < 5; ++rep) {
    DenseVector v(5);
    for (double& x : v) x = probe.next_signed();
    CHECK(back.a.matvec(v) == ds.a.matvec(v));  // bitwise, %.17g is lossless
  }
}

TEST_CASE("binary_labels validates") {
  Dataset ok{SparseMatrix::identity(2), {1, -1}};
  CHECK(ok.binary_labels() == std::vector<double>{1, -1});
  Dataset bad{SparseMatrix::identity(2), {1, 0.5}};
  CHECK_THROWS_AS(bad.binary_labels(), std::invalid_argument);
}

TEST_CASE("normalize_features scales columns into [-1, 1]") {
  // cols: (2, -4), (0, 0), (1, 0.5)
  std::vector<double> dense{2, 0, 1, -4, 0, 0.5};
  Dataset ds{SparseMatrix::from_dense(2, 3, dense), {1, -1}};
  auto norm = normalize_features(ds);
  DenseVector e0{1, 0, 0}, e2{0, 0, 1};
  CHECK(norm.a.matvec(e0) == DenseVector{0.5, -1.0});
  CHECK(norm.a.matvec(e2) == DenseVector{1.0, 0.5});
  // zero column untouched, labels carried over
  CHECK(norm.a.matvec(DenseVector{0, 1, 0}) == DenseVector{0, 0});
  CHECK(norm.y == ds.y);
}

TEST_CASE("synthetic generator is deterministic and shaped n-by-n") {
  SyntheticSpec spec;
  spec.n = 40;
  spec.seed = 123;
  auto a = generate_synthetic(spec);
  auto b = generate_synthetic(spec);
  CHECK(a.a.rows() == 40);
  CHECK(a.a.cols() == 40);
  CHECK(a.y == b.y);
  Uniform01 probe(5);
  DenseVector v(40);
  for (double& x : v) x = probe.next_signed();
  CHECK(a.a.matvec(v) == b.a.matvec(v));

  spec.seed = 124;
  auto c = generate_synthetic(spec);
  CHECK(a.a.matvec(v) != c.a.matvec(v));
}

TEST_CASE("synthetic labels are plus or minus one and balanced-ish") {
  SyntheticSpec spec;
  spec.n = 400;
  spec.seed = 7;
  auto ds = generate_synthetic(spec);
  int pos = 0;
  for (double y : ds.y) {
    CHECK((y == 1.0 || y == -1.0));
    if (y > 0) ++pos;
  }
  CHECK(pos > 100);
  CHECK(pos < 300);
}

TEST_CASE("synthetic matrix is upper triangular with PSD gram") {
  SyntheticSpec spec;
  spec.n = 30;
  spec.seed = 11;
  auto ds = generate_synthetic(spec);
  // X e_j has no component below row j
  for (std::size_t j = 0; j < 30; ++j) {
    DenseVector e(30, 0.0);
    e[j] = 1.0;
    DenseVector col = ds.a.matvec(e);
    for (std::size_t i = j + 1; i < 30; ++i) CHECK(col[i] == 0.0);
  }
  // v' X'X v >= 0 for random probes
  Uniform01 rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    DenseVector v(30);
    for (double& x : v) x = rng.next_signed();
    CHECK(norm2_sq(ds.a.matvec(v)) >= 0.0);
    CHECK(all_finite(ds.a.matvec(v)));
  }
}

TEST_CASE("synthetic spec validation") {
  SyntheticSpec spec;
  spec.n = 1;
  CHECK_THROWS_AS(generate_synthetic(spec), std::invalid_argument);
}
