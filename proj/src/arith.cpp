#include "arith.h"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sl4 {

Mat4 Mat4::identity() {
  Mat4 m;
  for (int i = 0; i < 4; i++) m.at(i, i) = 1;
  return m;
}

Mat4 Mat4::scalar(const Int& c) {
  Mat4 m;
  for (int i = 0; i < 4; i++) m.at(i, i) = c;
  return m;
}

Mat4 Mat4::from_rows(const Vec4& r0, const Vec4& r1, const Vec4& r2, const Vec4& r3) {
  Mat4 m;
  const Vec4* rows[4] = {&r0, &r1, &r2, &r3};
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) m.at(i, j) = (*rows[i])[j];
  return m;
}

Mat4 Mat4::from_cols(const Vec4& c0, const Vec4& c1, const Vec4& c2, const Vec4& c3) {
  Mat4 m;
  const Vec4* cols[4] = {&c0, &c1, &c2, &c3};
  for (int j = 0; j < 4; j++)
    for (int i = 0; i < 4; i++) m.at(i, j) = (*cols[j])[i];
  return m;
}

Vec4 Mat4::row(int i) const { return {at(i, 0), at(i, 1), at(i, 2), at(i, 3)}; }

Vec4 Mat4::col(int j) const { return {at(0, j), at(1, j), at(2, j), at(3, j)}; }

Mat4 Mat4::operator*(const Mat4& o) const {
  Mat4 r;
  for (int i = 0; i < 4; i++)
    for (int k = 0; k < 4; k++) {
      if (at(i, k) == 0) continue;
      for (int j = 0; j < 4; j++) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

Vec4 Mat4::operator*(const Vec4& v) const {
  Vec4 r = {0, 0, 0, 0};
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) r[i] += at(i, j) * v[j];
  return r;
}

Mat4 Mat4::transpose() const {
  Mat4 r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) r.at(i, j) = at(j, i);
  return r;
}

static Int det3(const Int& a, const Int& b, const Int& c, const Int& d, const Int& e,
                const Int& f, const Int& g, const Int& h, const Int& i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

Int Mat4::det() const {
  // Laplace expansion along the first row.
  Int r = 0;
  for (int j = 0; j < 4; j++) {
    if (at(0, j) == 0) continue;
    Int cols[3][3];
    int cc = 0;
    for (int c = 0; c < 4; c++) {
      if (c == j) continue;
      for (int rr = 1; rr < 4; rr++) cols[rr - 1][cc] = at(rr, c);
      cc++;
    }
    Int m = det3(cols[0][0], cols[0][1], cols[0][2], cols[1][0], cols[1][1], cols[1][2],
                 cols[2][0], cols[2][1], cols[2][2]);
    if (j % 2 == 0)
      r += at(0, j) * m;
    else
      r -= at(0, j) * m;
  }
  return r;
}

Mat4 Mat4::adjugate() const {
  Mat4 adj;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) {
      Int sub[3][3];
      int ri = 0;
      for (int r = 0; r < 4; r++) {
        if (r == i) continue;
        int ci = 0;
        for (int c = 0; c < 4; c++) {
          if (c == j) continue;
          sub[ri][ci] = at(r, c);
          ci++;
        }
        ri++;
      }
      Int m = det3(sub[0][0], sub[0][1], sub[0][2], sub[1][0], sub[1][1], sub[1][2],
                   sub[2][0], sub[2][1], sub[2][2]);
      adj.at(j, i) = ((i + j) % 2 == 0) ? m : -m;
    }
  return adj;
}

Mat4 Mat4::inverse_unimodular() const {
  Int d = det();
  if (d != 1 && d != -1) throw RankDeficient("inverse_unimodular: determinant not a unit");
  Mat4 adj = adjugate();
  if (d == -1)
    for (auto& x : adj.a) x = -x;
  return adj;
}

Mat4 Mat4::negate_row(int i) const {
  Mat4 m = *this;
  for (int j = 0; j < 4; j++) m.at(i, j) = -m.at(i, j);
  return m;
}

std::string Mat4::str() const {
  std::ostringstream os;
  for (int i = 0; i < 4; i++) {
    os << (i == 0 ? "[" : " ") << "[";
    for (int j = 0; j < 4; j++) os << at(i, j) << (j < 3 ? " " : "");
    os << "]" << (i == 3 ? "]" : "\n");
  }
  return os.str();
}

Vec4 operator+(const Vec4& x, const Vec4& y) {
  return {x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]};
}

Vec4 operator-(const Vec4& x, const Vec4& y) {
  return {x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3]};
}

Vec4 operator*(const Int& c, const Vec4& x) { return {c * x[0], c * x[1], c * x[2], c * x[3]}; }

Vec4 mul_row(const Vec4& r, const Mat4& m) {
  Vec4 out = {0, 0, 0, 0};
  for (int j = 0; j < 4; j++)
    for (int i = 0; i < 4; i++) out[j] += r[i] * m.at(i, j);
  return out;
}

Int dot(const Vec4& x, const Vec4& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}

bool is_zero(const Vec4& x) { return x[0] == 0 && x[1] == 0 && x[2] == 0 && x[3] == 0; }

Int content(const Vec4& x) {
  Int g = 0;
  for (const auto& e : x) {
    Int a = abs(e);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  }
  return g;
}

Int det4(const Vec4& c0, const Vec4& c1, const Vec4& c2, const Vec4& c3) {
  return Mat4::from_cols(c0, c1, c2, c3).det();
}

PrimVec4::PrimVec4(const Vec4& raw) {
  Int g = content(raw);
  if (g != 1) throw NotPrimitive("PrimVec4: gcd of coordinates is " + g.get_str());
  v = raw;
  for (int i = 0; i < 4; i++) {
    if (v[i] == 0) continue;
    if (v[i] < 0)
      for (int j = 0; j < 4; j++) v[j] = -v[j];
    break;
  }
}

std::string PrimVec4::str() const {
  std::ostringstream os;
  os << "(" << v[0] << "," << v[1] << "," << v[2] << "," << v[3] << ")";
  return os.str();
}

PrimVec4 primitive_part(const Vec4& x) {
  Int g = content(x);
  if (g == 0) throw NotPrimitive("primitive_part: zero vector");
  Vec4 y;
  for (int i = 0; i < 4; i++) y[i] = x[i] / g;
  return PrimVec4(y);
}

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n % q == 0) return n == q;
  }
  // Deterministic Miller-Rabin for 32-bit inputs.
  uint32_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) d /= 2, s++;
  for (uint64_t a : {2ull, 7ull, 61ull}) {
    uint64_t x = 1, base = a % n, e = d;
    while (e) {
      if (e & 1) x = x * base % n;
      base = base * base % n;
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; r++) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(uint32_t modulus) : p(modulus) {
  if (!is_prime_u32(p)) throw InvariantError("PrimeField: modulus is not prime");
}

uint32_t PrimeField::inv(uint32_t x) const {
  if (x == 0) throw DivisionByZero("PrimeField::inv(0)");
  int64_t t = 0, newt = 1, r = p, newr = x % p;
  while (newr != 0) {
    int64_t q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  return static_cast<uint32_t>(t < 0 ? t + p : t);
}

uint32_t PrimeField::pow(uint32_t x, uint64_t e) const {
  uint64_t r = 1, b = x % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(r);
}

uint32_t PrimeField::reduce_int(const Int& z) const {
  Int r = z % p;
  if (r < 0) r += p;
  return static_cast<uint32_t>(r.get_ui());
}

uint32_t PrimeField::reduce_i64(int64_t z) const {
  int64_t r = z % static_cast<int64_t>(p);
  if (r < 0) r += p;
  return static_cast<uint32_t>(r);
}

HnfResult hnf_with_transform(const std::vector<Vec4>& cols, bool require_full_rank) {
  // Row operations (tracked in u) assign pivots to columns scanned from the
  // right; pivot k lands in row 3-k, so a full-rank square input ends lower
  // triangular.
  HnfResult res;
  res.h_cols = cols;
  res.u = Mat4::identity();
  Mat4 uinv = Mat4::identity();  // accumulated row transform, h = uinv * m
  auto& h = res.h_cols;
  int c = static_cast<int>(h.size());

  auto rowswap = [&](int r1, int r2) {
    for (int j = 0; j < c; j++) std::swap(h[j][r1], h[j][r2]);
    for (int j = 0; j < 4; j++) std::swap(uinv.at(r1, j), uinv.at(r2, j));
  };
  auto rownegate = [&](int r) {
    for (int j = 0; j < c; j++) h[j][r] = -h[j][r];
    for (int j = 0; j < 4; j++) uinv.at(r, j) = -uinv.at(r, j);
  };
  auto rowaxpy = [&](const Int& f, int src, int dst) {  // row dst += f * row src
    for (int j = 0; j < c; j++) h[j][dst] += f * h[j][src];
    for (int j = 0; j < 4; j++) uinv.at(dst, j) += f * uinv.at(src, j);
  };

  int pivot_row = 3;
  std::vector<int> pivot_cols;
  for (int j = c - 1; j >= 0 && pivot_row >= 0; j--) {
    // Euclidean elimination within column j on rows 0..pivot_row.
    while (true) {
      int nz = -1;
      for (int r = 0; r <= pivot_row; r++)
        if (h[j][r] != 0) {
          if (nz == -1 || abs(h[j][r]) < abs(h[j][nz])) nz = r;
        }
      if (nz == -1) break;
      if (nz != pivot_row) rowswap(nz, pivot_row);
      bool cleared = true;
      for (int r = 0; r < pivot_row; r++) {
        if (h[j][r] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), h[j][r].get_mpz_t(), h[j][pivot_row].get_mpz_t());
        rowaxpy(-q, pivot_row, r);
        if (h[j][r] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (h[j][pivot_row] == 0) continue;
    if (h[j][pivot_row] < 0) rownegate(pivot_row);
    pivot_cols.push_back(j);
    pivot_row--;
  }
  res.rank = static_cast<int>(pivot_cols.size());
  if (require_full_rank && res.rank < 4)
    throw RankDeficient("hnf_with_transform: rank " + std::to_string(res.rank));

  // Reduce entries below each pivot into [0, pivot).
  for (size_t k = 0; k < pivot_cols.size(); k++) {
    int j = pivot_cols[k];
    int r = 3 - static_cast<int>(k);
    for (int rr = r + 1; rr < 4; rr++) {
      if (h[j][rr] == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h[j][rr].get_mpz_t(), h[j][r].get_mpz_t());
      rowaxpy(-q, r, rr);
    }
  }

  res.u = uinv.inverse_unimodular();
  return res;
}

Mat4 lattice_hnf_basis(const std::vector<Vec4>& gens) {
  // Column HNF under right multiplication: Euclidean column reduction.
  std::vector<Vec4> w = gens;
  int c = static_cast<int>(w.size());
  Mat4 basis;
  int bcol = 0;
  for (int i = 0; i < 4; i++) {  // pivot rows top to bottom
    while (true) {
      int nz = -1;
      for (int j = 0; j < c; j++)
        if (w[j][i] != 0 && (nz == -1 || abs(w[j][i]) < abs(w[nz][i]))) nz = j;
      if (nz == -1) break;
      bool done = true;
      for (int j = 0; j < c; j++) {
        if (j == nz || w[j][i] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), w[j][i].get_mpz_t(), w[nz][i].get_mpz_t());
        for (int r = 0; r < 4; r++) w[j][r] -= q * w[nz][r];
        if (w[j][i] != 0) done = false;
      }
      if (done) {
        if (nz != 0) std::swap(w[nz], w[0]);
        break;
      }
    }
    if (c == 0 || w.empty()) break;
    if (w[0][i] == 0) throw RankDeficient("lattice_hnf_basis: rank-deficient generators");
    Vec4 piv = w[0];
    if (piv[i] < 0)
      for (auto& x : piv) x = -x;
    for (int r = 0; r < 4; r++) basis.at(r, bcol) = piv[r];
    bcol++;
    w.erase(w.begin());
    c--;
    // Rows above i are already zero in remaining columns by induction.
  }
  if (bcol != 4) throw RankDeficient("lattice_hnf_basis: rank-deficient generators");
  // Reduce entries left of each diagonal into [0, diag).
  for (int i = 1; i < 4; i++)
    for (int j = 0; j < i; j++) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), basis.at(i, j).get_mpz_t(), basis.at(i, i).get_mpz_t());
      if (q != 0)
        for (int r = 0; r < 4; r++) basis.at(r, j) -= q * basis.at(r, i);
    }
  return basis;
}

Mat4 bottom_row_lift(const std::array<int64_t, 4>& a, int64_t N) {
  if (N <= 1) throw InvalidLevel("bottom_row_lift: level must exceed 1");
  Vec4 r;
  Int gN = 0;
  for (int i = 0; i < 4; i++) {
    int64_t x = a[i] % N;
    if (x < 0) x += N;
    r[i] = x;
    mpz_gcd(gN.get_mpz_t(), gN.get_mpz_t(), r[i].get_mpz_t());
  }
  mpz_gcd_ui(gN.get_mpz_t(), gN.get_mpz_t(), static_cast<unsigned long>(N));
  if (gN != 1) throw NotPrimitive("bottom_row_lift: tuple not primitive mod N");

  Int g = content(r);
  if (g == 0) {
    // Tuple is congruent to zero mod N only if non-primitive; unreachable.
    throw NotPrimitive("bottom_row_lift: zero tuple");
  }
  if (g != 1) {
    // g is coprime to N, so bumping the first entry by N makes the vector
    // primitive in one step.
    r[0] += N;
    if (content(r) != 1) throw InvariantError("bottom_row_lift: lift not primitive");
  }

  // Row-reduce r to e4 by right multiplication: r * M = (0,0,0,1).
  // Then gamma := M^{-1} has bottom row r.
  Mat4 m = Mat4::identity();
  Vec4 w = r;
  auto colaxpy = [&](const Int& f, int src, int dst) {
    w[dst] += f * w[src];
    for (int i = 0; i < 4; i++) m.at(i, dst) += f * m.at(i, src);
  };
  auto colswap = [&](int c1, int c2) {
    std::swap(w[c1], w[c2]);
    for (int i = 0; i < 4; i++) std::swap(m.at(i, c1), m.at(i, c2));
  };
  auto colneg = [&](int cc) {
    w[cc] = -w[cc];
    for (int i = 0; i < 4; i++) m.at(i, cc) = -m.at(i, cc);
  };
  while (true) {
    int nz = -1;
    for (int j = 0; j < 4; j++)
      if (w[j] != 0 && (nz == -1 || abs(w[j]) < abs(w[nz]))) nz = j;
    bool others = false;
    for (int j = 0; j < 4; j++)
      if (j != nz && w[j] != 0) others = true;
    if (!others) {
      if (nz != 3) colswap(nz, 3);
      if (w[3] < 0) colneg(3);
      break;
    }
    for (int j = 0; j < 4; j++) {
      if (j == nz || w[j] == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), w[j].get_mpz_t(), w[nz].get_mpz_t());
      colaxpy(-q, nz, j);
    }
  }
  if (w[3] != 1) throw InvariantError("bottom_row_lift: gcd reduction failed");
  Mat4 gamma = m.inverse_unimodular();
  if (gamma.det() == -1) gamma = gamma.negate_row(0);
  return gamma;
}

Vec4 vec4_of(int64_t a, int64_t b, int64_t c, int64_t d) {
  return {Int(a), Int(b), Int(c), Int(d)};
}

Mat4 mat4_of(std::initializer_list<int64_t> rowmajor) {
  Mat4 m;
  int k = 0;
  for (int64_t v : rowmajor) {
    m.a[k] = v;
    k++;
    if (k == 16) break;
  }
  return m;
}

}  // namespace sl4
