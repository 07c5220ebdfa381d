#include "fppoly.h"

#include <random>
#include <sstream>

namespace sl4 {

FpPoly FpPoly::from(uint32_t p, std::vector<int64_t> coeffs) {
  PrimeField F(p);
  FpPoly out;
  out.p = p;
  for (int64_t v : coeffs) out.c.push_back(F.reduce_i64(v));
  out.trim();
  return out;
}

void FpPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  PrimeField F(p);
  return scale(*this, F.inv(leading()));
}

uint32_t FpPoly::eval(uint32_t x) const {
  PrimeField F(p);
  uint32_t r = 0;
  for (size_t i = c.size(); i-- > 0;) r = F.add(F.mul(r, x), c[i]);
  return r;
}

std::string FpPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c.size(); i++) {
    if (c[i] == 0) continue;
    // centered lift for readability
    int64_t v = c[i] > p / 2 ? static_cast<int64_t>(c[i]) - p : c[i];
    if (!first) os << (v >= 0 ? " + " : " - ");
    else if (v < 0) os << "-";
    int64_t av = v < 0 ? -v : v;
    if (i == 0 || av != 1) os << av;
    if (i >= 1) {
      if (av != 1) os << "*";
      os << var;
      if (i >= 2) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  PrimeField F(a.p);
  FpPoly r;
  r.p = a.p;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); i++) {
    uint32_t x = i < a.c.size() ? a.c[i] : 0;
    uint32_t y = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = F.add(x, y);
  }
  r.trim();
  return r;
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  PrimeField F(a.p);
  FpPoly r;
  r.p = a.p;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); i++) {
    uint32_t x = i < a.c.size() ? a.c[i] : 0;
    uint32_t y = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = F.sub(x, y);
  }
  r.trim();
  return r;
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return FpPoly::zero(a.p);
  PrimeField F(a.p);
  FpPoly r;
  r.p = a.p;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); i++) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); j++)
      r.c[i + j] = static_cast<uint32_t>((r.c[i + j] + (uint64_t)a.c[i] * b.c[j]) % a.p);
  }
  r.trim();
  return r;
}

FpPoly scale(const FpPoly& a, uint32_t s) {
  PrimeField F(a.p);
  FpPoly r = a;
  for (auto& x : r.c) x = F.mul(x, s);
  r.trim();
  return r;
}

void divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r) {
  if (b.is_zero()) throw DivisionByZero("FpPoly divmod by zero");
  PrimeField F(a.p);
  q = FpPoly::zero(a.p);
  r = a;
  if (r.degree() >= b.degree()) q.c.assign(r.degree() - b.degree() + 1, 0);
  uint32_t binv = F.inv(b.leading());
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int shift = r.degree() - b.degree();
    uint32_t f = F.mul(r.leading(), binv);
    q.c[shift] = F.add(q.c[shift], f);
    for (size_t i = 0; i < b.c.size(); i++) {
      size_t k = i + shift;
      r.c[k] = F.sub(r.c[k], F.mul(f, b.c[i]));
    }
    r.trim();
  }
  q.trim();
}

FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

FpPoly powmod(const FpPoly& base, const Int& e, const FpPoly& mod) {
  FpPoly result = FpPoly::one(base.p);
  FpPoly b = base;
  {
    FpPoly q, r;
    divmod(b, mod, q, r);
    b = r;
  }
  Int exp = e;
  while (exp > 0) {
    if (mpz_odd_p(exp.get_mpz_t())) {
      FpPoly q, r;
      divmod(result * b, mod, q, r);
      result = r;
    }
    FpPoly q, r;
    divmod(b * b, mod, q, r);
    b = r;
    exp >>= 1;
  }
  return result;
}

FpPoly derivative(const FpPoly& a) {
  PrimeField F(a.p);
  FpPoly r;
  r.p = a.p;
  for (size_t i = 1; i < a.c.size(); i++)
    r.c.push_back(F.mul(a.c[i], static_cast<uint32_t>(i % a.p)));
  r.trim();
  return r;
}

namespace {

// Equal-degree splitting of a squarefree product of degree-d irreducibles.
void edf(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  PrimeField F(f.p);
  Int q = Int(f.p);
  Int e;
  mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), d);
  e = (e - 1) / 2;
  while (true) {
    FpPoly a;
    a.p = f.p;
    a.c.resize(f.degree(), 0);
    for (auto& x : a.c) x = static_cast<uint32_t>(rng() % f.p);
    a.trim();
    if (a.degree() < 1) continue;
    FpPoly g = gcd(a, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      FpPoly q1, r1;
      divmod(f, g, q1, r1);
      edf(g, d, rng, out);
      edf(q1, d, rng, out);
      return;
    }
    FpPoly b = powmod(a, e, f);
    b = b - FpPoly::one(f.p);
    g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      FpPoly q1, r1;
      divmod(f, g, q1, r1);
      edf(g, d, rng, out);
      edf(q1, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<FpPoly, int>> factor(const FpPoly& a, uint64_t seed) {
  std::vector<std::pair<FpPoly, int>> out;
  if (a.degree() < 1) return out;
  std::mt19937_64 rng(seed);
  FpPoly f = a.monic();

  // Yun squarefree decomposition (p far exceeds the degrees used here, so the
  // p-th power branch cannot occur).
  std::vector<std::pair<FpPoly, int>> parts;
  {
    FpPoly fp = derivative(f);
    if (fp.is_zero()) throw InvariantError("factor: inseparable polynomial");
    FpPoly c = gcd(f, fp);
    FpPoly w, r;
    divmod(f, c, w, r);
    int i = 1;
    while (w.degree() > 0) {
      FpPoly y = gcd(w, c);
      FpPoly z, r2;
      divmod(w, y, z, r2);
      if (z.degree() > 0) parts.push_back({z.monic(), i});
      w = y;
      FpPoly cq, cr;
      divmod(c, y, cq, cr);
      c = cq;
      i++;
    }
  }

  for (auto& [sf, m] : parts) {
    // Distinct-degree then equal-degree on each squarefree part.
    FpPoly rem = sf;
    FpPoly xp = FpPoly::x(sf.p);
    int d = 0;
    while (rem.degree() > 0) {
      d++;
      if (2 * d > rem.degree()) {
        out.push_back({rem.monic(), m});
        break;
      }
      xp = powmod(xp, Int(sf.p), rem);
      FpPoly g = gcd(xp - FpPoly::x(sf.p), rem);
      if (g.degree() > 0) {
        std::vector<FpPoly> irr;
        edf(g, d, rng, irr);
        for (auto& i : irr) out.push_back({i, m});
        FpPoly q, r;
        divmod(rem, g, q, r);
        rem = q;
        FpPoly q2, r2;
        divmod(xp, rem, q2, r2);
        xp = r2;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
    return x.first.c < y.first.c;
  });
  return out;
}

std::vector<std::pair<uint32_t, int>> roots(const FpPoly& a) {
  std::vector<std::pair<uint32_t, int>> out;
  for (const auto& [f, m] : factor(a))
    if (f.degree() == 1) {
      PrimeField F(a.p);
      out.push_back({F.neg(f.c[0]), m});  // monic X + c0
    }
  return out;
}

Fp2Ctx::Fp2Ctx(uint32_t p) : F(p), nonresidue(0) {
  for (uint32_t n = 2; n < p; n++) {
    if (F.pow(n, (p - 1) / 2) == p - 1) {
      nonresidue = n;
      break;
    }
  }
  if (!nonresidue) throw InvariantError("Fp2Ctx: no quadratic nonresidue (p = 2?)");
}

Fp2 fp2_add(const Fp2Ctx& k, Fp2 x, Fp2 y) { return {k.F.add(x.a, y.a), k.F.add(x.b, y.b)}; }
Fp2 fp2_sub(const Fp2Ctx& k, Fp2 x, Fp2 y) { return {k.F.sub(x.a, y.a), k.F.sub(x.b, y.b)}; }

Fp2 fp2_mul(const Fp2Ctx& k, Fp2 x, Fp2 y) {
  // (a + bt)(c + dt) = ac + bd*nr + (ad + bc) t
  uint32_t ac = k.F.mul(x.a, y.a), bd = k.F.mul(x.b, y.b);
  uint32_t ad = k.F.mul(x.a, y.b), bc = k.F.mul(x.b, y.a);
  return {k.F.add(ac, k.F.mul(bd, k.nonresidue)), k.F.add(ad, bc)};
}

Fp2 fp2_neg(const Fp2Ctx& k, Fp2 x) { return {k.F.neg(x.a), k.F.neg(x.b)}; }

Fp2 fp2_inv(const Fp2Ctx& k, Fp2 x) {
  // 1/(a + bt) = (a - bt)/(a^2 - nr b^2)
  uint32_t denom = k.F.sub(k.F.mul(x.a, x.a), k.F.mul(k.nonresidue, k.F.mul(x.b, x.b)));
  uint32_t dinv = k.F.inv(denom);
  return {k.F.mul(x.a, dinv), k.F.mul(k.F.neg(x.b), dinv)};
}

Fp2 fp2_pow(const Fp2Ctx& k, Fp2 x, const Int& e) {
  Fp2 r{1, 0};
  Fp2 b = x;
  Int exp = e;
  while (exp > 0) {
    if (mpz_odd_p(exp.get_mpz_t())) r = fp2_mul(k, r, b);
    b = fp2_mul(k, b, b);
    exp >>= 1;
  }
  return r;
}

Fp2 fp2_conj(const Fp2Ctx& k, Fp2 x) { return {x.a, k.F.neg(x.b)}; }

Fp2 eval_fp2(const Fp2Ctx& k, const FpPoly& a, Fp2 x) {
  Fp2 r{0, 0};
  for (size_t i = a.c.size(); i-- > 0;) r = fp2_add(k, fp2_mul(k, r, x), Fp2{a.c[i], 0});
  return r;
}

namespace {

// Square root in F_p of a quadratic residue (Tonelli-Shanks; fast path for
// p = 3 mod 4).
uint32_t sqrt_fp(const Fp2Ctx& k, uint32_t x) {
  if (x == 0) return 0;
  if (k.F.p % 4 == 3) return k.F.pow(x, (k.F.p + 1) / 4);
  uint32_t q = k.F.p - 1, s = 0;
  while (q % 2 == 0) q /= 2, s++;
  uint32_t m2 = s, cc = k.F.pow(k.nonresidue, q), t = k.F.pow(x, q),
           rr = k.F.pow(x, (q + 1) / 2);
  while (t != 1) {
    uint32_t i = 0, tt = t;
    while (tt != 1) {
      tt = k.F.mul(tt, tt);
      i++;
    }
    uint32_t bb = cc;
    for (uint32_t j = 0; j + i + 1 < m2; j++) bb = k.F.mul(bb, bb);
    m2 = i;
    cc = k.F.mul(bb, bb);
    t = k.F.mul(t, cc);
    rr = k.F.mul(rr, bb);
  }
  return rr;
}

// Square root of any field element inside F_{p^2}.
Fp2 sqrt_fp2(const Fp2Ctx& k, uint32_t x) {
  if (x == 0) return {0, 0};
  if (k.F.pow(x, (k.F.p - 1) / 2) == 1) return {sqrt_fp(k, x), 0};
  return {0, sqrt_fp(k, k.F.mul(x, k.F.inv(k.nonresidue)))};
}

}  // namespace

std::vector<Fp2> roots_fp2(const Fp2Ctx& k, const FpPoly& a) {
  std::vector<Fp2> out;
  for (const auto& [f, m] : factor(a)) {
    (void)m;
    if (f.degree() == 1) {
      out.push_back({k.F.neg(f.c[0]), 0});
    } else if (f.degree() == 2) {
      // monic X^2 + bX + c: roots (-b +- sqrt(b^2 - 4c)) / 2
      uint32_t b = f.c[1], c = f.c[0];
      uint32_t disc = k.F.sub(k.F.mul(b, b), k.F.mul(4 % k.F.p, c));
      uint32_t inv2 = k.F.inv(2);
      if (disc == 0) {
        out.push_back({k.F.mul(k.F.neg(b), inv2), 0});
        continue;
      }
      Fp2 sq = sqrt_fp2(k, disc);
      Fp2 mb{k.F.neg(b), 0};
      out.push_back(fp2_mul(k, fp2_add(k, mb, sq), Fp2{inv2, 0}));
      out.push_back(fp2_mul(k, fp2_sub(k, mb, sq), Fp2{inv2, 0}));
    }
    // Higher-degree irreducible factors have no roots in F_{p^2}.
  }
  return out;
}

}  // namespace sl4
