#include "orbits.h"

namespace sl4 {

const OrbitTable& LevelOrbits::table(const std::string& type_id) const {
  auto it = tables.find(type_id);
  if (it == tables.end()) throw InvariantError("LevelOrbits: no table for type " + type_id);
  return it->second;
}

LevelOrbits build_level_orbits(const CellDatabase& db, int64_t N) {
  LevelOrbits lo;
  lo.ps = std::make_unique<ProjSpace>(N);
  for (const auto& t : db.types) {
    if (t.dim < 4 || t.dim > 6) continue;
    lo.tables.emplace(t.type_id, orbit_decompose(*lo.ps, t.signed_group(), t.type_id));
  }
  return lo;
}

}  // namespace sl4
