#include "e1complex.h"

#include <algorithm>

namespace sl4 {

BasisIndex build_basis_index(const CellDatabase& db, const LevelOrbits& lo, int dim) {
  BasisIndex b;
  std::vector<std::string> ids;
  for (const auto& t : db.types)
    if (t.dim == dim) ids.push_back(t.type_id);
  std::sort(ids.begin(), ids.end());
  for (const auto& id : ids) {
    const OrbitTable& tab = lo.table(id);
    for (uint32_t oi = 0; oi < tab.orbits.size(); oi++) {
      if (!tab.orbits[oi].orientable) continue;
      b.index[{id, oi}] = b.size();
      b.entries.push_back({id, oi});
    }
  }
  return b;
}

std::vector<Suborbit> facet_suborbits(const ProjSpace& ps, const Orbit& orbit,
                                      const FacetClass& fc) {
  auto amod = ps.reduce_matrix(fc.alpha);
  std::vector<uint32_t> oalpha;
  oalpha.reserve(orbit.members.size());
  for (uint32_t m : orbit.members) oalpha.push_back(ps.act_reduced(m, amod));
  std::sort(oalpha.begin(), oalpha.end());
  oalpha.erase(std::unique(oalpha.begin(), oalpha.end()), oalpha.end());
  if (oalpha.size() != orbit.members.size())
    throw InvariantError("facet_suborbits: translation is not a bijection");

  std::vector<std::array<int64_t, 16>> cmod;
  for (const auto& c : fc.c_group) cmod.push_back(ps.reduce_matrix(c));

  std::vector<Suborbit> subs;
  std::map<uint32_t, bool> visited;
  for (uint32_t q : oalpha) visited[q] = false;
  for (uint32_t q : oalpha) {
    if (visited[q]) continue;
    Suborbit so;
    so.rep = q;
    std::vector<uint32_t> stack = {q};
    visited[q] = true;
    while (!stack.empty()) {
      uint32_t cur = stack.back();
      stack.pop_back();
      so.members.push_back(cur);
      for (const auto& cm : cmod) {
        uint32_t nxt = ps.act_reduced(cur, cm);
        auto it = visited.find(nxt);
        if (it == visited.end())
          throw InvariantError("facet_suborbits: C does not preserve O*alpha");
        if (!it->second) {
          it->second = true;
          stack.push_back(nxt);
        }
      }
    }
    std::sort(so.members.begin(), so.members.end());
    so.rep = so.members.front();
    subs.push_back(std::move(so));
  }
  return subs;
}

int64_t transfer_scalar(size_t stab_order, size_t orbit_size, size_t c_order,
                        size_t suborbit_size) {
  // #Gamma_sigma = stab_order / orbit_size, #Gamma_sigmatau = c_order / suborbit_size.
  if (orbit_size == 0 || suborbit_size == 0 || stab_order % orbit_size != 0 ||
      c_order % suborbit_size != 0)
    throw DataInconsistency("transfer_scalar: stabilizer orders not integral");
  int64_t gs = static_cast<int64_t>(stab_order / orbit_size);
  int64_t gst = static_cast<int64_t>(c_order / suborbit_size);
  if (gst == 0 || gs % gst != 0)
    throw DataInconsistency("transfer_scalar: transfer index not integral");
  int64_t t = gs / gst;
  if (t <= 0) throw DataInconsistency("transfer_scalar: non-positive index");
  return t;
}

SparseMatrixModP assemble_d1(int i, const CellDatabase& db, const LevelOrbits& lo,
                             const BasisIndex& src, const BasisIndex& dst, uint32_t p) {
  PrimeField F(p);
  SparseMatrixModP d;
  d.rows = dst.size();
  d.cols = src.size();
  d.p = p;
  const ProjSpace& ps = *lo.ps;

  for (uint32_t row = 0; row < dst.size(); row++) {
    const auto& entry = dst.entries[row];
    const CellType& t = db.type(entry.type_id);
    const OrbitTable& ttab = lo.table(entry.type_id);
    const Orbit& orbit = ttab.orbits[entry.orbit];

    for (const auto& fc : t.facets) {
      const CellType& tp = db.type(fc.target_type);
      if (tp.dim != i) continue;
      const OrbitTable& ptab = lo.table(fc.target_type);
      Mat4 ainv = fc.alpha.inverse_unimodular();
      auto ainv_mod = ps.reduce_matrix(ainv);

      for (const auto& so : facet_suborbits(ps, orbit, fc)) {
        uint32_t aj = so.rep;
        uint32_t target_orbit = ptab.orbit_of[aj];
        if (!ptab.orbits[target_orbit].orientable) continue;
        int32_t col = src.find(fc.target_type, target_orbit);
        if (col < 0) throw InvariantError("assemble_d1: missing column for orientable orbit");

        uint32_t x = ps.act_reduced(aj, ainv_mod);
        if (ttab.orbit_of[x] != entry.orbit)
          throw DataInconsistency("assemble_d1: pulled-back point leaves the source orbit");
        int e_sign = ttab.sign_of(x);
        int f_sign = ptab.sign_of(aj);
        if (e_sign == 0 || f_sign == 0)
          throw DataInconsistency("assemble_d1: missing orientation number");

        int64_t t_scalar = transfer_scalar(t.stab_order(), orbit.members.size(),
                                           fc.c_group.size(), so.members.size());
        int sign = e_sign * f_sign * fc.rel_sign;
        uint32_t val = F.reduce_i64(sign > 0 ? t_scalar : -t_scalar);
        d.add_entry(row, static_cast<uint32_t>(col), val);
      }
    }
  }
  d.finalize();
  return d;
}

SparseMatrixModP assemble_harmonic_stack(const SparseMatrixModP& d5,
                                         const SparseMatrixModP& d4) {
  if (d4.rows != d5.cols)
    throw ShapeError("assemble_harmonic_stack: degree-5 dimension mismatch");
  return SparseMatrixModP::stack(d5, d4.transpose());
}

}  // namespace sl4
