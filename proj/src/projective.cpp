#include "projective.h"

#include <algorithm>
#include <numeric>

namespace sl4 {

static int64_t gcd64(int64_t a, int64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a < 0 ? -a : a;
}

ProjSpace::ProjSpace(int64_t N) : N_(N) {
  if (N <= 1) throw InvalidLevel("ProjSpace: level must exceed 1");
  if (N > 65535) throw InvalidLevel("ProjSpace: level too large for packed points");
  for (int64_t u = 1; u < N; u++)
    if (gcd64(u, N) == 1) units_.push_back(u);

  // Enumerate canonical representatives in lexicographic order.
  std::array<uint16_t, 4> t;
  for (int64_t x0 = 0; x0 < N; x0++)
    for (int64_t x1 = 0; x1 < N; x1++)
      for (int64_t x2 = 0; x2 < N; x2++)
        for (int64_t x3 = 0; x3 < N; x3++) {
          int64_t g = gcd64(gcd64(x0, x1), gcd64(x2, gcd64(x3, N)));
          if (g != 1) continue;
          bool canonical = true;
          for (int64_t u : units_) {
            if (u == 1) continue;
            int64_t y0 = u * x0 % N;
            if (y0 > x0) continue;
            if (y0 < x0) { canonical = false; break; }
            int64_t y1 = u * x1 % N;
            if (y1 > x1) continue;
            if (y1 < x1) { canonical = false; break; }
            int64_t y2 = u * x2 % N;
            if (y2 > x2) continue;
            if (y2 < x2) { canonical = false; break; }
            int64_t y3 = u * x3 % N;
            if (y3 < x3) { canonical = false; break; }
          }
          if (!canonical) continue;
          t = {(uint16_t)x0, (uint16_t)x1, (uint16_t)x2, (uint16_t)x3};
          index_.emplace(pack(t), (uint32_t)points_.size());
          points_.push_back(t);
        }
}

std::array<uint16_t, 4> ProjSpace::canonicalize(const std::array<int64_t, 4>& x) const {
  std::array<int64_t, 4> r;
  int64_t g = N_;
  for (int i = 0; i < 4; i++) {
    r[i] = x[i] % N_;
    if (r[i] < 0) r[i] += N_;
    g = gcd64(g, r[i]);
  }
  if (g != 1) throw NotPrimitive("ProjSpace: tuple not primitive mod N");
  std::array<int64_t, 4> best = r;
  for (int64_t u : units_) {
    if (u == 1) continue;
    std::array<int64_t, 4> c;
    bool smaller = false, decided = false;
    for (int i = 0; i < 4; i++) {
      c[i] = u * r[i] % N_;
      if (!decided) {
        if (c[i] < best[i]) { smaller = true; decided = true; }
        else if (c[i] > best[i]) { decided = true; }
      }
    }
    if (smaller) best = c;
  }
  return {(uint16_t)best[0], (uint16_t)best[1], (uint16_t)best[2], (uint16_t)best[3]};
}

uint32_t ProjSpace::index_of(const std::array<int64_t, 4>& x) const {
  auto c = canonicalize(x);
  auto it = index_.find(pack(c));
  if (it == index_.end()) throw InvariantError("ProjSpace: canonical point missing from table");
  return it->second;
}

std::array<int64_t, 16> ProjSpace::reduce_matrix(const Mat4& g) const {
  std::array<int64_t, 16> m;
  for (int i = 0; i < 16; i++) {
    Int r = g.a[i] % N_;
    if (r < 0) r += N_;
    m[i] = r.get_si();
  }
  return m;
}

uint32_t ProjSpace::act_reduced(uint32_t idx, const std::array<int64_t, 16>& gmod) const {
  const auto& a = points_[idx];
  std::array<int64_t, 4> y;
  for (int j = 0; j < 4; j++) {
    int64_t s = 0;
    for (int i = 0; i < 4; i++) s += (int64_t)a[i] * gmod[4 * i + j];
    y[j] = s % N_;
  }
  return index_of(y);
}

uint32_t ProjSpace::act(uint32_t idx, const Mat4& g) const {
  return act_reduced(idx, reduce_matrix(g));
}

uint32_t ProjSpace::bottom_row(const Mat4& g) const {
  std::array<int64_t, 4> r;
  for (int j = 0; j < 4; j++) {
    Int v = g.at(3, j) % N_;
    if (v < 0) v += N_;
    r[j] = v.get_si();
  }
  return index_of(r);
}

int64_t ProjSpace::count_formula(int64_t N) {
  int64_t count = 1;
  int64_t n = N;
  for (int64_t q = 2; q * q <= n; q++) {
    if (n % q) continue;
    int64_t pe = 1;
    while (n % q == 0) { n /= q; pe *= q; }
    // p^{3(e-1)} * (p^3 + p^2 + p + 1)
    int64_t p3e1 = (pe / q) * (pe / q) * (pe / q);
    count *= p3e1 * (q * q * q + q * q + q + 1);
  }
  if (n > 1) count *= n * n * n + n * n + n + 1;
  return count;
}

void SignedGroup::check_closed() const {
  if (elems.empty()) throw InvalidGroup("SignedGroup: empty");
  if (elems.size() != signs.size()) throw InvalidGroup("SignedGroup: sign list size mismatch");
  std::unordered_map<std::string, size_t> keys;
  for (size_t i = 0; i < elems.size(); i++) {
    std::string k = elems[i].str();
    if (!keys.emplace(k, i).second) throw InvalidGroup("SignedGroup: duplicate element");
  }
  bool has_id = false;
  for (const auto& e : elems)
    if (e == Mat4::identity()) has_id = true;
  if (!has_id) throw InvalidGroup("SignedGroup: identity missing");
  for (size_t i = 0; i < elems.size(); i++)
    for (size_t j = 0; j < elems.size(); j++) {
      Mat4 p = elems[i] * elems[j];
      auto it = keys.find(p.str());
      if (it == keys.end()) throw InvalidGroup("SignedGroup: not closed under multiplication");
      if (signs[it->second] != signs[i] * signs[j])
        throw InvalidGroup("SignedGroup: orientation character not multiplicative");
    }
}

OrbitTable orbit_decompose(const ProjSpace& ps, const SignedGroup& group,
                           const std::string& tag) {
  group.check_closed();
  OrbitTable table;
  table.group_tag = tag;
  uint32_t n = ps.size();
  table.orbit_of.assign(n, UINT32_MAX);
  table.pos_in_orbit.assign(n, 0);

  std::vector<std::array<int64_t, 16>> reduced;
  reduced.reserve(group.size());
  for (const auto& g : group.elems) reduced.push_back(ps.reduce_matrix(g));

  std::vector<int8_t> seen_sign(n, 0);
  for (uint32_t p = 0; p < n; p++) {
    if (table.orbit_of[p] != UINT32_MAX) continue;
    Orbit orb;
    orb.base = p;
    uint32_t oid = static_cast<uint32_t>(table.orbits.size());
    for (size_t gi = 0; gi < group.size(); gi++) {
      uint32_t q = ps.act_reduced(p, reduced[gi]);
      int8_t s = group.signs[gi];
      if (table.orbit_of[q] == oid) {
        if (seen_sign[q] != s) orb.orientable = false;
        continue;
      }
      if (table.orbit_of[q] != UINT32_MAX)
        throw InvariantError("orbit_decompose: orbits not disjoint");
      table.orbit_of[q] = oid;
      table.pos_in_orbit[q] = static_cast<uint32_t>(orb.members.size());
      seen_sign[q] = s;
      orb.members.push_back(q);
      orb.signs.push_back(s);
      orb.witness.push_back(static_cast<uint32_t>(gi));
    }
    if (!orb.orientable) orb.signs.clear();
    if (group.size() % orb.members.size() != 0)
      throw InvariantError("orbit_decompose: orbit size does not divide group order");
    table.stab_order.push_back(static_cast<uint32_t>(group.size() / orb.members.size()));
    table.orbits.push_back(std::move(orb));
  }
  return table;
}

}  // namespace sl4
