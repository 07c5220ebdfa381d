#include "celldb.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace sl4 {

std::array<Int, 10> q_coords(const Vec4& v) {
  return {v[0] * v[0], v[1] * v[1], v[2] * v[2], v[3] * v[3], v[0] * v[1],
          v[0] * v[2], v[0] * v[3], v[1] * v[2], v[1] * v[3], v[2] * v[3]};
}

namespace {

// Fraction-free Gaussian elimination rank over the integers.
int int_rank(std::vector<std::vector<Int>> m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; c++) {
    size_t piv = r;
    while (piv < rows && m[piv][c] == 0) piv++;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (size_t i = r + 1; i < rows; i++) {
      if (m[i][c] == 0) continue;
      Int f1 = m[r][c], f2 = m[i][c];
      for (size_t j = c; j < cols; j++) m[i][j] = m[i][j] * f1 - m[r][j] * f2;
    }
    r++;
    rank++;
  }
  return rank;
}

Int det_small(std::vector<std::vector<Int>> m) {
  size_t n = m.size();
  Int det = 1;
  int sign = 1;
  for (size_t c = 0; c < n; c++) {
    size_t piv = c;
    while (piv < n && m[piv][c] == 0) piv++;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      sign = -sign;
    }
    for (size_t i = c + 1; i < n; i++) {
      if (m[i][c] == 0) continue;
      // Fraction-free elimination: row_i <- (row_i * m[c][c] - row_c * m[i][c]) / prev_pivot
      for (size_t j = c + 1; j < n; j++) m[i][j] = m[i][j] * m[c][c] - m[c][j] * m[i][c];
      m[i][c] = 0;
      if (c > 0)
        for (size_t j = c + 1; j < n; j++) m[i][j] /= m[c - 1][c - 1];
    }
  }
  det = m[n - 1][n - 1];
  return sign > 0 ? det : -det;
}

}  // namespace

int q_rank(const std::vector<PrimVec4>& vs) {
  std::vector<std::vector<Int>> m;
  for (const auto& v : vs) {
    auto q = q_coords(v.v);
    m.emplace_back(q.begin(), q.end());
  }
  return int_rank(std::move(m));
}

int vec_rank(const std::vector<PrimVec4>& vs) {
  std::vector<std::vector<Int>> m;
  for (const auto& v : vs) m.push_back({v.v[0], v.v[1], v.v[2], v.v[3]});
  return int_rank(std::move(m));
}

SignedGroup CellType::signed_group() const {
  SignedGroup g;
  g.elems = stabilizer;
  g.signs = stab_signs;
  return g;
}

const CellType& CellDatabase::type(const std::string& id) const {
  for (const auto& t : types)
    if (t.type_id == id) return t;
  throw InvariantError("CellDatabase: unknown type " + id);
}

bool CellDatabase::has_type(const std::string& id) const {
  for (const auto& t : types)
    if (t.type_id == id) return true;
  return false;
}

std::vector<const CellType*> CellDatabase::types_of_dim(int d) const {
  std::vector<const CellType*> out;
  for (const auto& t : types)
    if (t.dim == d) out.push_back(&t);
  return out;
}

int orientation_sign(const CellType& t, const Mat4& gamma) {
  if (t.dim == 0) return 1;
  const size_t m = t.min_vectors.size();
  std::vector<int> perm(m, -1);
  std::vector<bool> used(m, false);
  for (size_t i = 0; i < m; i++) {
    PrimVec4 w = primitive_part(gamma * t.min_vectors[i].v);
    int found = -1;
    for (size_t j = 0; j < m; j++)
      if (!used[j] && t.min_vectors[j] == w) {
        found = static_cast<int>(j);
        break;
      }
    if (found < 0)
      throw ContractViolation("orientation_sign: element does not permute the minimal vectors");
    perm[i] = found;
    used[found] = true;
  }
  int sign = 1;
  std::vector<bool> seen(m, false);
  for (size_t i = 0; i < m; i++) {
    if (seen[i]) continue;
    size_t len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = perm[j];
      len++;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

int relative_sign(const CellType& t, const CellType& tprime, const Mat4& alpha) {
  // Rays of the pushed facet cell, in the order fixed by T''s minimal vectors.
  std::vector<PrimVec4> pushed;
  for (const auto& v : tprime.min_vectors) pushed.push_back(primitive_part(alpha * v.v));
  std::set<PrimVec4> pushed_set(pushed.begin(), pushed.end());
  for (const auto& a : t.min_vectors)
    if (!pushed_set.count(a)) throw InvalidFacet("relative_sign: not a facet of the standard cell");
  PrimVec4 extra;
  int extra_count = 0;
  std::set<PrimVec4> base_set(t.min_vectors.begin(), t.min_vectors.end());
  for (const auto& b : pushed)
    if (!base_set.count(b)) {
      extra = b;
      extra_count++;
    }
  if (extra_count != 1) throw InvalidFacet("relative_sign: facet has wrong corank");

  // Orientation comparison inside the common span: columns q(pushed order)
  // against q(base order) followed by the extra ray.
  size_t k = pushed.size();
  std::vector<std::array<Int, 10>> m1, m2;
  for (const auto& b : pushed) m1.push_back(q_coords(b.v));
  for (const auto& a : t.min_vectors) m2.push_back(q_coords(a.v));
  m2.push_back(q_coords(extra.v));

  // Select k independent coordinate rows of m2.
  std::vector<int> rows_sel;
  {
    std::vector<std::vector<Int>> acc;
    for (int r = 0; r < 10 && rows_sel.size() < k; r++) {
      std::vector<Int> row(k);
      for (size_t j = 0; j < k; j++) row[j] = m2[j][r];
      acc.push_back(row);
      if (int_rank(acc) == static_cast<int>(acc.size()))
        rows_sel.push_back(r);
      else
        acc.pop_back();
    }
  }
  if (rows_sel.size() != k) throw InvalidFacet("relative_sign: degenerate ray span");

  auto subdet = [&](const std::vector<std::array<Int, 10>>& cols) {
    std::vector<std::vector<Int>> m(k, std::vector<Int>(k));
    for (size_t i = 0; i < k; i++)
      for (size_t j = 0; j < k; j++) m[i][j] = cols[j][rows_sel[i]];
    return det_small(std::move(m));
  };
  Int d1 = subdet(m1), d2 = subdet(m2);
  if (d1 == 0 || d2 == 0) throw InvalidFacet("relative_sign: singular transition");
  return (d1 > 0) == (d2 > 0) ? 1 : -1;
}

void CellDatabase::write(std::ostream& os) const {
  os << "CELLDB 1 n=4 p=any\n";
  for (const auto& t : types) {
    os << "TYPE " << t.type_id << " DIM " << t.dim << " NVEC " << t.min_vectors.size() << "\n";
    for (const auto& v : t.min_vectors)
      os << v.v[0] << " " << v.v[1] << " " << v.v[2] << " " << v.v[3] << "\n";
    os << "STAB " << t.stabilizer.size() << "\n";
    for (size_t i = 0; i < t.stabilizer.size(); i++) {
      for (int k = 0; k < 16; k++) os << t.stabilizer[i].a[k] << " ";
      os << (t.stab_signs[i] > 0 ? "+" : "-") << "\n";
    }
    os << "FACETS " << t.facets.size() << "\n";
    for (const auto& f : t.facets) {
      os << "TO " << f.target_type << "\n";
      os << "ALPHA";
      for (int k = 0; k < 16; k++) os << " " << f.alpha.a[k];
      os << "\n";
      os << "RELSIGN " << f.rel_sign << "\n";
      os << "CGROUP " << f.c_group.size() << "\n";
      for (const auto& c : f.c_group) {
        for (int k = 0; k < 16; k++) os << c.a[k] << (k < 15 ? " " : "\n");
      }
    }
    if (!t.omega.empty()) {
      os << "OMEGA " << t.omega.size() << "\n";
      for (const auto& w : t.omega) {
        for (int k = 0; k < 16; k++) os << w.a[k] << (k < 15 ? " " : "\n");
      }
    }
    os << "ENDTYPE\n";
  }
  os << "END\n";
}

namespace {

Mat4 read_mat16(std::istream& is) {
  Mat4 m;
  for (int k = 0; k < 16; k++) {
    std::string tok;
    if (!(is >> tok)) throw CorruptDatabase("CELLDB: truncated matrix");
    m.a[k] = Int(tok);
  }
  return m;
}

}  // namespace

CellDatabase CellDatabase::read(std::istream& is) {
  std::string tok;
  CellDatabase db;
  if (!(is >> tok) || tok != "CELLDB") throw CorruptDatabase("CELLDB: bad magic");
  int version;
  std::string ntag, ptag;
  if (!(is >> version >> ntag >> ptag) || version != 1 || ntag != "n=4")
    throw CorruptDatabase("CELLDB: unsupported header");
  while (is >> tok) {
    if (tok == "END") break;
    if (tok != "TYPE") throw CorruptDatabase("CELLDB: expected TYPE");
    CellType t;
    std::string kw;
    size_t nvec;
    if (!(is >> t.type_id >> kw >> t.dim) || kw != "DIM") throw CorruptDatabase("CELLDB: bad TYPE");
    if (!(is >> kw >> nvec) || kw != "NVEC") throw CorruptDatabase("CELLDB: bad NVEC");
    for (size_t i = 0; i < nvec; i++) {
      Vec4 v;
      for (int j = 0; j < 4; j++) {
        std::string s;
        if (!(is >> s)) throw CorruptDatabase("CELLDB: truncated vector");
        v[j] = Int(s);
      }
      t.min_vectors.push_back(PrimVec4(v));
    }
    size_t order;
    if (!(is >> kw >> order) || kw != "STAB") throw CorruptDatabase("CELLDB: bad STAB");
    for (size_t i = 0; i < order; i++) {
      t.stabilizer.push_back(read_mat16(is));
      std::string s;
      if (!(is >> s) || (s != "+" && s != "-")) throw CorruptDatabase("CELLDB: bad sign");
      t.stab_signs.push_back(s == "+" ? 1 : -1);
    }
    size_t nfacets;
    if (!(is >> kw >> nfacets) || kw != "FACETS") throw CorruptDatabase("CELLDB: bad FACETS");
    for (size_t i = 0; i < nfacets; i++) {
      FacetClass f;
      if (!(is >> kw >> f.target_type) || kw != "TO") throw CorruptDatabase("CELLDB: bad TO");
      if (!(is >> kw) || kw != "ALPHA") throw CorruptDatabase("CELLDB: bad ALPHA");
      f.alpha = read_mat16(is);
      if (!(is >> kw >> f.rel_sign) || kw != "RELSIGN" || (f.rel_sign != 1 && f.rel_sign != -1))
        throw CorruptDatabase("CELLDB: bad RELSIGN");
      size_t csize;
      if (!(is >> kw >> csize) || kw != "CGROUP") throw CorruptDatabase("CELLDB: bad CGROUP");
      for (size_t j = 0; j < csize; j++) f.c_group.push_back(read_mat16(is));
      t.facets.push_back(std::move(f));
    }
    // Optional OMEGA section, then ENDTYPE.
    if (!(is >> kw)) throw CorruptDatabase("CELLDB: missing ENDTYPE");
    if (kw == "OMEGA") {
      size_t n;
      if (!(is >> n)) throw CorruptDatabase("CELLDB: bad OMEGA");
      for (size_t j = 0; j < n; j++) t.omega.push_back(read_mat16(is));
      if (!(is >> kw)) throw CorruptDatabase("CELLDB: missing ENDTYPE");
    }
    if (kw != "ENDTYPE") throw CorruptDatabase("CELLDB: expected ENDTYPE");
    db.types.push_back(std::move(t));
  }
  if (tok != "END") throw CorruptDatabase("CELLDB: missing END");
  VerifyReport rep = verify_celldb(db);
  if (!rep.ok) throw CorruptDatabase("CELLDB: invariant failed: " + rep.notes.front());
  return db;
}

void CellDatabase::write_file(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw ResourceError("cannot open " + path);
  write(os);
}

CellDatabase CellDatabase::read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw CorruptDatabase("cannot open " + path);
  return read(is);
}

std::string CellDatabase::content_hash() const {
  std::ostringstream os;
  write(os);
  std::string s = os.str();
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CellDatabase load_or_generate_celldb(const std::string& path) {
  {
    std::ifstream is(path);
    if (is) return CellDatabase::read(is);
  }
  CellDatabase db = generate_celldb();
  db.write_file(path);
  return db;
}

static const int64_t kPrintedAlpha[16] = {0, 0, 1, 0, 0, 0, 0, 1, -1, 0, 1, 0, 0, -1, 1, 0};

VerifyReport verify_celldb(const CellDatabase& db) {
  VerifyReport rep;
  if (db.types.size() != 18) rep.fail("class count is not 18");
  int n6 = 0, n5 = 0;
  for (const auto& t : db.types) {
    if (t.dim == 6) n6++;
    if (t.dim == 5) n5++;
  }
  if (n6 != 1) rep.fail("dimension-6 class count is not 1");
  if (n5 != 3) rep.fail("dimension-5 class count is not 3");

  for (const auto& t : db.types) {
    if (vec_rank(t.min_vectors) != 4) rep.fail(t.type_id + ": minimal vectors do not span");
    int qr = q_rank(t.min_vectors);
    if (t.dim + qr != 10) rep.fail(t.type_id + ": dual cone dimension violates duality");
    if (t.dim >= 1 && static_cast<int>(t.min_vectors.size()) != qr)
      rep.fail(t.type_id + ": dual cone not simplicial");
    try {
      t.signed_group().check_closed();
    } catch (const InvalidGroup& e) {
      rep.fail(t.type_id + ": stabilizer: " + e.what());
    }
    for (size_t i = 0; i < t.stabilizer.size(); i++) {
      try {
        if (orientation_sign(t, t.stabilizer[i]) != t.stab_signs[i])
          rep.fail(t.type_id + ": stored orientation sign mismatch");
      } catch (const ContractViolation&) {
        rep.fail(t.type_id + ": stabilizer element does not preserve the cell");
      }
      if (t.stabilizer[i].det() != 1) rep.fail(t.type_id + ": stabilizer element not in SL4");
    }
    for (const auto& f : t.facets) {
      if (!db.has_type(f.target_type)) {
        rep.fail(t.type_id + ": facet target missing");
        continue;
      }
      const CellType& tp = db.type(f.target_type);
      if (tp.dim != t.dim - 1) rep.fail(t.type_id + ": facet target has wrong dimension");
      try {
        if (relative_sign(t, tp, f.alpha) != f.rel_sign)
          rep.fail(t.type_id + "->" + f.target_type + ": stored relative sign mismatch");
      } catch (const InvalidFacet& e) {
        rep.fail(t.type_id + "->" + f.target_type + ": " + e.what());
      }
      // c_group must be exactly alpha^{-1} Stab(T) alpha intersect Stab(T').
      Mat4 ainv = f.alpha.inverse_unimodular();
      std::set<std::string> cset;
      for (const auto& c : f.c_group) cset.insert(c.str());
      size_t expected = 0;
      for (const auto& s : tp.stabilizer) {
        Mat4 conj = f.alpha * s * ainv;
        bool in_t = false;
        for (const auto& g : t.stabilizer)
          if (g == conj) {
            in_t = true;
            break;
          }
        if (in_t) {
          expected++;
          if (!cset.count(s.str()))
            rep.fail(t.type_id + "->" + f.target_type + ": c_group missing an element");
        }
      }
      if (expected != f.c_group.size())
        rep.fail(t.type_id + "->" + f.target_type + ": c_group size mismatch");
      if (t.stab_order() % f.c_group.size() != 0)
        rep.fail(t.type_id + "->" + f.target_type + ": facet count not integral");
      // Character compatibility across the facet pair.
      for (const auto& c : f.c_group) {
        Mat4 conj = f.alpha * c * ainv;
        if (orientation_sign(t, conj) != orientation_sign(tp, c)) {
          rep.fail(t.type_id + "->" + f.target_type + ": characters disagree on c_group");
          break;
        }
      }
    }
    if (t.dim >= 4 && t.dim <= 6 && t.facets.empty())
      rep.fail(t.type_id + ": missing facet data");
  }

  if (db.has_type("5b") && db.has_type("4b")) {
    const CellType& t5b = db.type("5b");
    bool found = false;
    for (const auto& f : t5b.facets)
      if (f.target_type == "4b") {
        found = true;
        Mat4 printed;
        for (int k = 0; k < 16; k++) printed.a[k] = kPrintedAlpha[k];
        if (!(f.alpha == printed)) rep.fail("5b->4b alpha differs from the pinned matrix");
      }
    if (!found) rep.fail("5b has no 4b facet class");
  } else {
    rep.fail("types 5b/4b missing");
  }
  return rep;
}

}  // namespace sl4
