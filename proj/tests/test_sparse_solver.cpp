#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "solver.h"

using namespace sl4;

namespace {

const uint32_t P = 31991;

// Random sparse matrix of shape rows x cols with the given rank, built as a
// product of a rows x rank and a rank x cols dense factor.
SparseMatrixModP random_rank_matrix(uint32_t rows, uint32_t cols, uint32_t rank,
                                    std::mt19937_64& rng) {
  PrimeField F(P);
  std::vector<std::vector<uint32_t>> a(rows, std::vector<uint32_t>(rank)),
      b(rank, std::vector<uint32_t>(cols));
  std::uniform_int_distribution<uint32_t> d(0, P - 1);
  for (auto& row : a)
    for (auto& x : row) x = d(rng);
  for (auto& row : b)
    for (auto& x : row) x = d(rng);
  SparseMatrixModP m;
  m.rows = rows;
  m.cols = cols;
  m.p = P;
  for (uint32_t i = 0; i < rows; i++)
    for (uint32_t j = 0; j < cols; j++) {
      uint64_t acc = 0;
      for (uint32_t k = 0; k < rank; k++) acc += (uint64_t)a[i][k] * b[k][j] % P;
      uint32_t v = static_cast<uint32_t>(acc % P);
      if (v) m.add_entry(i, j, v);
    }
  m.finalize();
  return m;
}

std::vector<uint32_t> random_vec(uint32_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<uint32_t> d(0, P - 1);
  std::vector<uint32_t> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

bool is_zero_vec(const std::vector<uint32_t>& v) {
  for (uint32_t x : v)
    if (x) return false;
  return true;
}

}  // namespace

TEST_CASE("matvec basics") {
  std::mt19937_64 rng(1);
  auto id = SparseMatrixModP::identity(20, P);
  auto v = random_vec(20, rng);
  CHECK(id.matvec(v) == v);
  SparseMatrixModP z;
  z.rows = 7;
  z.cols = 20;
  z.p = P;
  z.finalize();
  CHECK(is_zero_vec(z.matvec(v)));
  // random 20x20 against a dense oracle
  auto m = random_rank_matrix(20, 20, 20, rng);
  auto dense = m.to_dense();
  auto w = m.matvec(v);
  for (uint32_t i = 0; i < 20; i++) {
    uint64_t acc = 0;
    for (uint32_t j = 0; j < 20; j++) acc += (uint64_t)dense[i][j] * v[j] % P;
    CHECK(w[i] == acc % P);
  }
  CHECK_THROWS_AS(m.matvec(random_vec(19, rng)), ShapeError);
}

TEST_CASE("sparse format roundtrip") {
  std::mt19937_64 rng(2);
  auto m = random_rank_matrix(15, 11, 6, rng);
  std::stringstream ss;
  m.write(ss);
  auto m2 = SparseMatrixModP::read(ss);
  CHECK(m2.rows == m.rows);
  CHECK(m2.cols == m.cols);
  CHECK(m2.v == m.v);
  CHECK(m2.r == m.r);
  CHECK(m2.c == m.c);
}

TEST_CASE("gauss kernel basics") {
  auto id = SparseMatrixModP::identity(6, P);
  auto kb = gauss_kernel(id);
  CHECK(kb.kprime == 0);

  SparseMatrixModP z;
  z.rows = 4;
  z.cols = 5;
  z.p = P;
  z.finalize();
  auto kz = gauss_kernel(z);
  CHECK(kz.kprime == 5);

  CHECK_THROWS_AS(gauss_kernel(SparseMatrixModP::identity(100, P), 99), TooLarge);
}

TEST_CASE("lanczos single runs") {
  LanczosOptions opt;
  opt.spool_dir = "/tmp";
  // identity: trivial kernel, no vector produced
  auto id = SparseMatrixModP::identity(25, P);
  LanczosRun r = lanczos_kernel_vector(id, 42, opt);
  CHECK(r.status == LanczosStatus::no_kernel);
  CHECK(!r.kernel_vector.has_value());

  // zero matrix: any nonzero seed vector is a kernel vector
  SparseMatrixModP z;
  z.rows = 9;
  z.cols = 5;
  z.p = P;
  z.finalize();
  LanczosRun rz = lanczos_kernel_vector(z, 42, opt);
  CHECK(rz.status == LanczosStatus::success);
  CHECK(rz.k == 5);
  CHECK(rz.kernel_vector.has_value());
  CHECK(!is_zero_vec(*rz.kernel_vector));
}

TEST_CASE("lanczos agrees with the dense oracle") {
  std::mt19937_64 rng(3);
  LanczosOptions opt;
  opt.spool_dir = "/tmp";
  // 200 x 150 of rank 140: kernel dimension 10
  auto m = random_rank_matrix(200, 150, 140, rng);
  auto dense_kb = gauss_kernel(m);
  CHECK(dense_kb.kprime == 10);
  auto kb = kernel_basis(m, 60, 1000, 10, opt);
  CHECK(kb.kprime == 10);
  for (const auto& y : kb.vectors) CHECK(is_zero_vec(m.matvec(y)));
  CHECK(kb.kprime <= kb.k_consensus);

  // zero matrix: full kernel
  SparseMatrixModP z;
  z.rows = 3;
  z.cols = 5;
  z.p = P;
  z.finalize();
  auto kz = kernel_basis(z, 60, 7, 10, opt);
  CHECK(kz.kprime == 5);

  // a few random shapes and ranks
  for (auto [rows, cols, rank] :
       std::vector<std::array<uint32_t, 3>>{{60, 40, 35}, {50, 50, 50}, {80, 30, 22}}) {
    auto mm = random_rank_matrix(rows, cols, rank, rng);
    auto g = gauss_kernel(mm);
    auto l = kernel_basis(mm, 80, 99, 10, opt);
    CHECK(g.kprime == cols - rank);
    CHECK(l.kprime == g.kprime);
  }
}

TEST_CASE("seed determinism") {
  std::mt19937_64 rng(4);
  auto m = random_rank_matrix(40, 30, 25, rng);
  LanczosOptions opt;
  opt.spool_dir = "/tmp";
  LanczosRun a = lanczos_kernel_vector(m, 77, opt);
  LanczosRun b = lanczos_kernel_vector(m, 77, opt);
  CHECK(a.status == b.status);
  CHECK(a.k == b.k);
  if (a.kernel_vector && b.kernel_vector) CHECK(*a.kernel_vector == *b.kernel_vector);
}

TEST_CASE("kernel file roundtrip") {
  std::mt19937_64 rng(5);
  auto m = random_rank_matrix(30, 20, 15, rng);
  auto kb = gauss_kernel(m);
  std::stringstream ss;
  write_kernel(ss, kb, 20, P);
  uint32_t s = 0, p = 0;
  auto kb2 = read_kernel(ss, s, p);
  CHECK(s == 20);
  CHECK(p == P);
  CHECK(kb2.vectors == kb.vectors);
}
