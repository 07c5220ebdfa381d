#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "arith.h"

using namespace sl4;

namespace {

Mat4 random_unimodular(std::mt19937_64& rng, int steps = 12) {
  // Random product of elementary row operations.
  Mat4 u = Mat4::identity();
  std::uniform_int_distribution<int> row(0, 3), coef(-3, 3);
  for (int s = 0; s < steps; s++) {
    int i = row(rng), j = row(rng);
    if (i == j) continue;
    int c = coef(rng);
    for (int k = 0; k < 4; k++) u.at(i, k) += c * u.at(j, k);
  }
  return u;
}

}  // namespace

TEST_CASE("determinant and adjugate") {
  Mat4 id = Mat4::identity();
  CHECK(id.det() == 1);
  Mat4 m = mat4_of({2, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 3});
  CHECK(m.det() == 6);
  Mat4 adj = m.adjugate();
  Mat4 prod = adj * m;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) CHECK(prod.at(i, j) == (i == j ? Int(6) : Int(0)));

  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; t++) {
    Mat4 u = random_unimodular(rng);
    CHECK(u.det() == 1);
    Mat4 inv = u.inverse_unimodular();
    CHECK((inv * u) == Mat4::identity());
  }
}

TEST_CASE("prime field basics") {
  PrimeField F(31991);
  // inv(2): extended Euclid gives 15996; direct check 2*15996 = 31992 = 1 mod p.
  CHECK(F.inv(2) == 15996);
  CHECK(F.mul(2, 15996) == 1);
  CHECK(F.add(31990, 1) == 0);
  PrimeField F5(5);
  CHECK(F5.inv(3) == 2);
  CHECK_THROWS_AS(F.inv(0), DivisionByZero);
  CHECK_THROWS_AS(PrimeField(31989), InvariantError);  // 31989 = 3 * 10663
  // field axioms on random samples
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<uint32_t> d(1, 31990);
  for (int t = 0; t < 200; t++) {
    uint32_t x = d(rng);
    CHECK(F.mul(x, F.inv(x)) == 1);
    CHECK(F.add(x, F.neg(x)) == 0);
  }
}

TEST_CASE("primitive vectors canonicalize") {
  PrimVec4 v(vec4_of(-1, 2, 0, 3));
  CHECK(v.v == vec4_of(1, -2, 0, -3));
  PrimVec4 w(vec4_of(1, -2, 0, -3));
  CHECK(v == w);  // +-v identified
  CHECK_THROWS_AS(PrimVec4(vec4_of(2, 4, 0, 6)), NotPrimitive);
  CHECK(primitive_part(vec4_of(2, 4, 0, 6)).v == vec4_of(1, 2, 0, 3));
  CHECK_THROWS_AS(primitive_part(vec4_of(0, 0, 0, 0)), NotPrimitive);
  // idempotence
  PrimVec4 again(v.v);
  CHECK(again == v);
}

TEST_CASE("hnf with transform") {
  // identity -> (identity, identity)
  std::vector<Vec4> id_cols = {vec4_of(1, 0, 0, 0), vec4_of(0, 1, 0, 0), vec4_of(0, 0, 1, 0),
                               vec4_of(0, 0, 0, 1)};
  auto r = hnf_with_transform(id_cols);
  CHECK(r.rank == 4);
  CHECK(r.u == Mat4::identity());
  for (int j = 0; j < 4; j++) CHECK(r.h_cols[j] == id_cols[j]);

  // diag(1,1,1,2) is already in form
  std::vector<Vec4> diag_cols = {vec4_of(1, 0, 0, 0), vec4_of(0, 1, 0, 0), vec4_of(0, 0, 1, 0),
                                 vec4_of(0, 0, 0, 2)};
  auto r2 = hnf_with_transform(diag_cols);
  CHECK(r2.u == Mat4::identity());
  CHECK(r2.h_cols[3] == vec4_of(0, 0, 0, 2));

  // random unimodular times diag(1,1,1,2): h recovers the diagonal, u the factor
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; t++) {
    Mat4 u = random_unimodular(rng);
    std::vector<Vec4> cols;
    for (int j = 0; j < 4; j++) {
      Vec4 c = u.col(j);
      if (j == 3)
        for (auto& x : c) x *= 2;
      cols.push_back(c);
    }
    auto rr = hnf_with_transform(cols);
    CHECK(rr.rank == 4);
    Int du = rr.u.det();
    CHECK((du == 1 || du == -1));
    // u * h == m exactly
    for (size_t j = 0; j < cols.size(); j++) {
      Vec4 prod = rr.u * rr.h_cols[j];
      CHECK(prod == cols[j]);
    }
    // canonical form of the class: diag(1,1,1,2) up to the convention
    Mat4 h = Mat4::from_cols(rr.h_cols[0], rr.h_cols[1], rr.h_cols[2], rr.h_cols[3]);
    Int dh = h.det();
    if (dh < 0) dh = -dh;
    CHECK(dh == 2);
    for (int i = 0; i < 4; i++)
      for (int j = i + 1; j < 4; j++) CHECK(h.at(i, j) == 0);
  }

  // rank-deficient input
  std::vector<Vec4> bad = {vec4_of(1, 0, 0, 0), vec4_of(2, 0, 0, 0), vec4_of(0, 1, 0, 0),
                           vec4_of(0, 0, 1, 0)};
  CHECK_THROWS_AS(hnf_with_transform(bad), RankDeficient);
  auto rb = hnf_with_transform(bad, false);
  CHECK(rb.rank == 3);
}

TEST_CASE("bottom row lift") {
  Mat4 g = bottom_row_lift({0, 0, 0, 1}, 11);
  CHECK(g == Mat4::identity());

  for (auto [a, N] : std::vector<std::pair<std::array<int64_t, 4>, int64_t>>{
           {{0, 0, 1, 0}, 11}, {{2, 3, 0, 1}, 7}, {{5, 10, 3, 0}, 12}, {{2, 4, 6, 3}, 9}}) {
    Mat4 m = bottom_row_lift(a, N);
    CHECK(m.det() == 1);
    for (int j = 0; j < 4; j++) {
      Int diff = m.at(3, j) - a[j];
      CHECK(diff % N == 0);
    }
  }
  CHECK_THROWS_AS(bottom_row_lift({2, 4, 6, 8}, 4), NotPrimitive);
  CHECK_THROWS_AS(bottom_row_lift({0, 0, 0, 0}, 5), NotPrimitive);
}

TEST_CASE("lattice hnf basis") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; t++) {
    Mat4 u = random_unimodular(rng);
    // lattice = u * diag(1,1,2,6) * Z^4
    std::vector<Vec4> gens;
    Int diag[4] = {1, 1, 2, 6};
    for (int j = 0; j < 4; j++) gens.push_back(u * Vec4{diag[0] * (j == 0), diag[1] * (j == 1),
                                                        diag[2] * (j == 2), diag[3] * (j == 3)});
    Mat4 b = lattice_hnf_basis(gens);
    Int db = b.det();
    if (db < 0) db = -db;
    CHECK(db == 12);
    // lower triangular with positive diagonal
    for (int i = 0; i < 4; i++) {
      CHECK(b.at(i, i) > 0);
      for (int j = i + 1; j < 4; j++) CHECK(b.at(i, j) == 0);
    }
  }
}
