#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.h"

namespace sl4 {

using Int = mpz_class;
using Vec4 = std::array<Int, 4>;

// 4x4 integer matrix, row-major.
struct Mat4 {
  std::array<Int, 16> a;

  Mat4() { a.fill(0); }
  static Mat4 identity();
  static Mat4 scalar(const Int& c);
  static Mat4 from_rows(const Vec4& r0, const Vec4& r1, const Vec4& r2, const Vec4& r3);
  static Mat4 from_cols(const Vec4& c0, const Vec4& c1, const Vec4& c2, const Vec4& c3);

  Int& at(int i, int j) { return a[4 * i + j]; }
  const Int& at(int i, int j) const { return a[4 * i + j]; }
  Vec4 row(int i) const;
  Vec4 col(int j) const;

  Mat4 operator*(const Mat4& o) const;
  Vec4 operator*(const Vec4& v) const;  // column vector on the right
  bool operator==(const Mat4& o) const { return a == o.a; }
  bool operator<(const Mat4& o) const { return a < o.a; }

  Mat4 transpose() const;
  Int det() const;
  // Adjugate: adj * this == det * I.
  Mat4 adjugate() const;
  // Exact inverse; requires det == +-1.
  Mat4 inverse_unimodular() const;
  Mat4 negate_row(int i) const;

  std::string str() const;
};

Vec4 operator+(const Vec4& x, const Vec4& y);
Vec4 operator-(const Vec4& x, const Vec4& y);
Vec4 operator*(const Int& c, const Vec4& x);
// Row vector times matrix.
Vec4 mul_row(const Vec4& r, const Mat4& m);
Int dot(const Vec4& x, const Vec4& y);
bool is_zero(const Vec4& x);
Int content(const Vec4& x);  // gcd of entries, >= 0

Int det4(const Vec4& c0, const Vec4& c1, const Vec4& c2, const Vec4& c3);  // columns

// Primitive vector with canonical sign: gcd of entries is 1 and the first
// nonzero entry is positive.  Identifies v with -v.
struct PrimVec4 {
  Vec4 v;

  PrimVec4() { v = {0, 0, 0, 0}; }
  explicit PrimVec4(const Vec4& raw);  // throws NotPrimitive on zero

  bool operator==(const PrimVec4& o) const { return v == o.v; }
  bool operator<(const PrimVec4& o) const { return v < o.v; }
  std::string str() const;
};

// Divides out the content and normalizes the sign; the input need not be
// primitive.  Zero input throws NotPrimitive.
PrimVec4 primitive_part(const Vec4& x);

// Prime field F_p with residues in [0, p).  p checked prime at construction.
struct PrimeField {
  uint32_t p;

  explicit PrimeField(uint32_t modulus);

  uint32_t add(uint32_t x, uint32_t y) const { return (x + y) % p; }
  uint32_t sub(uint32_t x, uint32_t y) const { return (x + p - y) % p; }
  uint32_t mul(uint32_t x, uint32_t y) const {
    return static_cast<uint32_t>((uint64_t)x * y % p);
  }
  uint32_t neg(uint32_t x) const { return x == 0 ? 0 : p - x; }
  uint32_t inv(uint32_t x) const;  // throws DivisionByZero on 0
  uint32_t pow(uint32_t x, uint64_t e) const;
  uint32_t reduce_int(const Int& z) const;
  uint32_t reduce_i64(int64_t z) const;
};

bool is_prime_u32(uint32_t n);

// Left Hermite reduction: m = u * h with u unimodular 4x4 and h the canonical
// representative of GL4(Z)*m.  Convention: pivots are assigned to columns from
// the right, making the pivot block lower triangular for square full-rank
// input (diagonal positive, entries below a pivot reduced into [0, pivot)).
// rank is always returned; u restricted to the generic full-rank contract.
struct HnfResult {
  std::vector<Vec4> h_cols;
  Mat4 u;
  int rank = 0;
};
HnfResult hnf_with_transform(const std::vector<Vec4>& cols, bool require_full_rank = true);

// Canonical column basis of the lattice spanned by the given columns:
// right-multiplication HNF, lower triangular, diagonal positive, entries to
// the left of a diagonal reduced into [0, diagonal).  Requires full rank.
Mat4 lattice_hnf_basis(const std::vector<Vec4>& gens);

// gamma in SL4(Z) whose bottom row is congruent mod N to the given primitive
// tuple.  Deterministic: the tuple is lifted to a primitive integer vector
// with entries in [0, N) (one entry bumped by N when needed), completed to a
// basis, and the sign fixed by negating the first row.
Mat4 bottom_row_lift(const std::array<int64_t, 4>& a, int64_t N);

Vec4 vec4_of(int64_t a, int64_t b, int64_t c, int64_t d);
Mat4 mat4_of(std::initializer_list<int64_t> rowmajor);

}  // namespace sl4
