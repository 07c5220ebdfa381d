#pragma once

#include <map>
#include <string>
#include <vector>

#include "orbits.h"
#include "sparse.h"

namespace sl4 {

// Index of the orientable orbits of one dimension: the coordinates of the
// degree-i term of the first page.  Ordering is (type_id, orbit id), which is
// deterministic for a fixed database and level.
struct BasisIndex {
  struct Entry {
    std::string type_id;
    uint32_t orbit = 0;
  };
  std::vector<Entry> entries;
  std::map<std::pair<std::string, uint32_t>, uint32_t> index;

  uint32_t size() const { return static_cast<uint32_t>(entries.size()); }
  int32_t find(const std::string& type_id, uint32_t orbit) const {
    auto it = index.find({type_id, orbit});
    return it == index.end() ? -1 : static_cast<int32_t>(it->second);
  }
};

BasisIndex build_basis_index(const CellDatabase& db, const LevelOrbits& lo, int dim);

struct Suborbit {
  std::vector<uint32_t> members;  // points of O*alpha in one C-orbit
  uint32_t rep = 0;
};

// Decomposition of O*alpha under the right action of the intersection group.
std::vector<Suborbit> facet_suborbits(const ProjSpace& ps, const Orbit& orbit,
                                      const FacetClass& fc);

// [Stab(T) : point stab] / [C : point stab in C]; throws DataInconsistency
// when the quotient is not a positive integer.
int64_t transfer_scalar(size_t stab_order, size_t orbit_size, size_t c_order,
                        size_t suborbit_size);

// The degree-i differential as a sparse matrix: rows are the orientable
// orbits of dimension i+1, columns those of dimension i.
SparseMatrixModP assemble_d1(int i, const CellDatabase& db, const LevelOrbits& lo,
                             const BasisIndex& src, const BasisIndex& dst, uint32_t p);

// d5 stacked on the transpose of d4; kernel = harmonic degree-5 cochains.
SparseMatrixModP assemble_harmonic_stack(const SparseMatrixModP& d5,
                                         const SparseMatrixModP& d4);

}  // namespace sl4
