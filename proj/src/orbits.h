#pragma once

#include <map>
#include <memory>
#include <string>

#include "celldb.h"
#include "projective.h"

namespace sl4 {

// Orbit tables for every cell type of dimension 4..6 at a fixed level.
struct LevelOrbits {
  std::unique_ptr<ProjSpace> ps;
  std::map<std::string, OrbitTable> tables;

  const OrbitTable& table(const std::string& type_id) const;
};

LevelOrbits build_level_orbits(const CellDatabase& db, int64_t N);

}  // namespace sl4
