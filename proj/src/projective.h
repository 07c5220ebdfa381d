#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "arith.h"

namespace sl4 {

// P^3(Z/N): primitive row vectors mod N up to unit scaling.  Points are kept
// as canonical tuples (lexicographically smallest among unit multiples) and
// addressed by their index in the enumeration order.
class ProjSpace {
 public:
  explicit ProjSpace(int64_t N);

  int64_t level() const { return N_; }
  uint32_t size() const { return static_cast<uint32_t>(points_.size()); }
  const std::array<uint16_t, 4>& point(uint32_t idx) const { return points_[idx]; }

  // Canonical form of an arbitrary tuple (not necessarily primitive: throws
  // NotPrimitive if the ideal generated by the entries is not (1)).
  std::array<uint16_t, 4> canonicalize(const std::array<int64_t, 4>& x) const;
  uint32_t index_of(const std::array<int64_t, 4>& x) const;

  // Right action a * g, g integral (matrix reduced mod N internally).
  uint32_t act(uint32_t idx, const Mat4& g) const;
  // Same, with a matrix already reduced mod N (row-major, entries in [0,N)).
  uint32_t act_reduced(uint32_t idx, const std::array<int64_t, 16>& gmod) const;

  std::array<int64_t, 16> reduce_matrix(const Mat4& g) const;

  uint32_t bottom_row(const Mat4& g) const;

  static int64_t count_formula(int64_t N);  // multiplicative closed form

 private:
  int64_t N_;
  std::vector<std::array<uint16_t, 4>> points_;
  std::unordered_map<uint64_t, uint32_t> index_;
  std::vector<int64_t> units_;

  uint64_t pack(const std::array<uint16_t, 4>& t) const {
    return (uint64_t)t[0] | ((uint64_t)t[1] << 16) | ((uint64_t)t[2] << 32) |
           ((uint64_t)t[3] << 48);
  }
};

// One orbit of a right group action on P^3(Z/N).  Members carry orientation
// numbers and witness group elements: base * group[witness] == member.
// Orientation numbers are stored only when the orbit is orientable.
struct Orbit {
  uint32_t base = 0;  // canonical representative: smallest point index
  bool orientable = true;
  std::vector<uint32_t> members;
  std::vector<int8_t> signs;       // empty when non-orientable
  std::vector<uint32_t> witness;   // index into the acting group's element list
};

// Acting group: full element list with orientation signs; must be closed
// under multiplication (checked).
struct SignedGroup {
  std::vector<Mat4> elems;
  std::vector<int8_t> signs;

  size_t size() const { return elems.size(); }
  void check_closed() const;  // throws InvalidGroup
};

struct OrbitTable {
  std::string group_tag;
  std::vector<Orbit> orbits;
  std::vector<uint32_t> orbit_of;     // point index -> orbit id
  std::vector<uint32_t> pos_in_orbit; // point index -> member slot
  std::vector<uint32_t> stab_order;   // per orbit: order of the point stabilizer

  int8_t sign_of(uint32_t point) const {
    const Orbit& o = orbits[orbit_of[point]];
    return o.signs.empty() ? 0 : o.signs[pos_in_orbit[point]];
  }
};

OrbitTable orbit_decompose(const ProjSpace& ps, const SignedGroup& group,
                           const std::string& tag);

}  // namespace sl4
