#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "arith.h"
#include "projective.h"

namespace sl4 {

// One facet double-coset record of a standard cell: the facet cells of type
// target_type form the single double coset Stab(T) * alpha * Stab(T'), with
// c_group = alpha^{-1} Stab(T) alpha  intersect  Stab(T') and rel_sign the
// incidence sign between the oriented standard cells.
struct FacetClass {
  std::string target_type;
  Mat4 alpha;
  std::vector<Mat4> c_group;
  int rel_sign = 0;
};

// One of the SL4(Z)-classes of cells of the well-rounded retract.  Cells are
// recorded by their minimal vectors (one member of each +-v pair); the listed
// order fixes the orientation of the standard cell via the rays q(v) of the
// dual cone.
struct CellType {
  std::string type_id;
  int dim = 0;
  std::vector<PrimVec4> min_vectors;
  std::vector<Mat4> stabilizer;
  std::vector<int8_t> stab_signs;
  std::vector<FacetClass> facets;
  std::vector<Mat4> omega;  // dim-5 types only: boundary face words of the
                            // matching degree-1 chain generator

  SignedGroup signed_group() const;
  size_t stab_order() const { return stabilizer.size(); }
};

struct CellDatabase {
  std::vector<CellType> types;

  const CellType& type(const std::string& id) const;
  bool has_type(const std::string& id) const;
  std::vector<const CellType*> types_of_dim(int d) const;

  void write(std::ostream& os) const;
  static CellDatabase read(std::istream& is);
  void write_file(const std::string& path) const;
  static CellDatabase read_file(const std::string& path);

  std::string content_hash() const;
};

// Coordinates of the rank-one form q(v) = v v^t in the 10-dimensional space
// of symmetric 4x4 matrices: (v1^2, v2^2, v3^2, v4^2, v1v2, v1v3, v1v4,
// v2v3, v2v4, v3v4).
std::array<Int, 10> q_coords(const Vec4& v);
int q_rank(const std::vector<PrimVec4>& vs);
int vec_rank(const std::vector<PrimVec4>& vs);

// Orientation character value of a stabilizer element: the sign of the
// permutation it induces on the +-v pairs of the cell's minimal vectors
// (trivial for 0-dimensional cells).
int orientation_sign(const CellType& t, const Mat4& gamma);

// Incidence sign between the oriented standard cell of T and the pushed
// standard cell alpha * sigma_{T'}, which must be a facet of sigma_T.
int relative_sign(const CellType& t, const CellType& tprime, const Mat4& alpha);

// Full regeneration from the two perfect quaternary forms.
CellDatabase generate_celldb();

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> notes;
  void fail(const std::string& msg) {
    ok = false;
    notes.push_back(msg);
  }
};

VerifyReport verify_celldb(const CellDatabase& db);

// Loads the database from path, generating and persisting it when absent.
CellDatabase load_or_generate_celldb(const std::string& path);

}  // namespace sl4
