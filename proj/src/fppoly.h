#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arith.h"

namespace sl4 {

// Dense polynomials over F_p, low degree: coefficient vector, constant first,
// no trailing zeros.
struct FpPoly {
  uint32_t p = 0;
  std::vector<uint32_t> c;

  static FpPoly zero(uint32_t p) { return {p, {}}; }
  static FpPoly one(uint32_t p) { return {p, {1}}; }
  static FpPoly x(uint32_t p) { return {p, {0, 1}}; }
  static FpPoly from(uint32_t p, std::vector<int64_t> coeffs);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void trim();
  uint32_t leading() const { return c.back(); }
  FpPoly monic() const;
  uint32_t eval(uint32_t x) const;

  bool operator==(const FpPoly& o) const { return p == o.p && c == o.c; }
  std::string str(const std::string& var = "X") const;
};

FpPoly operator+(const FpPoly& a, const FpPoly& b);
FpPoly operator-(const FpPoly& a, const FpPoly& b);
FpPoly operator*(const FpPoly& a, const FpPoly& b);
FpPoly scale(const FpPoly& a, uint32_t s);
// Division with remainder: a = q*b + r.
void divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r);
FpPoly gcd(FpPoly a, FpPoly b);
FpPoly powmod(const FpPoly& base, const Int& e, const FpPoly& mod);
FpPoly derivative(const FpPoly& a);

// Full factorization into monic irreducibles with multiplicity (deterministic
// given the seed; Cantor-Zassenhaus equal-degree splitting).
std::vector<std::pair<FpPoly, int>> factor(const FpPoly& a, uint64_t seed = 12345);

// Roots in F_p with multiplicity.
std::vector<std::pair<uint32_t, int>> roots(const FpPoly& a);

// ---------------------------------------------------------------------------
// F_{p^2} as F_p[t]/(t^2 - nonresidue).

struct Fp2Ctx {
  PrimeField F;
  uint32_t nonresidue;
  explicit Fp2Ctx(uint32_t p);
};

struct Fp2 {
  uint32_t a = 0, b = 0;  // a + b t
  bool operator==(const Fp2& o) const { return a == o.a && b == o.b; }
  bool is_zero() const { return a == 0 && b == 0; }
};

Fp2 fp2_add(const Fp2Ctx& k, Fp2 x, Fp2 y);
Fp2 fp2_sub(const Fp2Ctx& k, Fp2 x, Fp2 y);
Fp2 fp2_mul(const Fp2Ctx& k, Fp2 x, Fp2 y);
Fp2 fp2_neg(const Fp2Ctx& k, Fp2 x);
Fp2 fp2_inv(const Fp2Ctx& k, Fp2 x);
Fp2 fp2_pow(const Fp2Ctx& k, Fp2 x, const Int& e);
Fp2 fp2_conj(const Fp2Ctx& k, Fp2 x);  // Frobenius x -> x^p

// Roots of a polynomial with F_p coefficients inside F_{p^2} (used for
// degree <= 2 factors and for fixture minimal polynomials of any degree).
std::vector<Fp2> roots_fp2(const Fp2Ctx& k, const FpPoly& a);

// Evaluate at an F_{p^2} point.
Fp2 eval_fp2(const Fp2Ctx& k, const FpPoly& a, Fp2 x);

}  // namespace sl4
