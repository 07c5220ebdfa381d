#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "celldb.h"

namespace sl4 {

namespace {

using IV4 = std::array<int64_t, 4>;
using Q10 = std::array<int64_t, 10>;

IV4 canon_sign(IV4 v) {
  for (int i = 0; i < 4; i++) {
    if (v[i] == 0) continue;
    if (v[i] < 0)
      for (int j = 0; j < 4; j++) v[j] = -v[j];
    break;
  }
  return v;
}

Q10 qc(const IV4& v) {
  return {v[0] * v[0], v[1] * v[1], v[2] * v[2], v[3] * v[3], v[0] * v[1],
          v[0] * v[2], v[0] * v[3], v[1] * v[2], v[1] * v[3], v[2] * v[3]};
}

int64_t det4_cols(const IV4& a, const IV4& b, const IV4& c, const IV4& d) {
  const IV4* col[4] = {&a, &b, &c, &d};
  auto e = [&](int i, int j) { return (*col[j])[i]; };
  auto d3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
    return e(r0, c0) * (e(r1, c1) * e(r2, c2) - e(r1, c2) * e(r2, c1)) -
           e(r0, c1) * (e(r1, c0) * e(r2, c2) - e(r1, c2) * e(r2, c0)) +
           e(r0, c2) * (e(r1, c0) * e(r2, c1) - e(r1, c1) * e(r2, c0));
  };
  return e(0, 0) * d3(1, 2, 3, 1, 2, 3) - e(0, 1) * d3(1, 2, 3, 0, 2, 3) +
         e(0, 2) * d3(1, 2, 3, 0, 1, 3) - e(0, 3) * d3(1, 2, 3, 0, 1, 2);
}

struct IMat {
  std::array<int64_t, 16> a{};
  int64_t& at(int i, int j) { return a[4 * i + j]; }
  int64_t at(int i, int j) const { return a[4 * i + j]; }
  IV4 apply(const IV4& v) const {
    IV4 r{};
    for (int i = 0; i < 4; i++)
      for (int j = 0; j < 4; j++) r[i] += at(i, j) * v[j];
    return r;
  }
  IMat mul(const IMat& o) const {
    IMat r;
    for (int i = 0; i < 4; i++)
      for (int k = 0; k < 4; k++) {
        int64_t x = at(i, k);
        if (!x) continue;
        for (int j = 0; j < 4; j++) r.at(i, j) += x * o.at(k, j);
      }
    return r;
  }
  int64_t det() const {
    IV4 c0, c1, c2, c3;
    for (int i = 0; i < 4; i++) {
      c0[i] = at(i, 0);
      c1[i] = at(i, 1);
      c2[i] = at(i, 2);
      c3[i] = at(i, 3);
    }
    return det4_cols(c0, c1, c2, c3);
  }
  bool operator==(const IMat& o) const { return a == o.a; }
  bool operator<(const IMat& o) const { return a < o.a; }
};

IMat identity_imat() {
  IMat m;
  for (int i = 0; i < 4; i++) m.at(i, i) = 1;
  return m;
}

// Adjugate of a 4x4 int64 matrix.
IMat adj4(const IMat& m) {
  IMat r;
  for (int i = 0; i < 4; i++)
    for (int j = 0; j < 4; j++) {
      int64_t sub[3][3];
      int ri = 0;
      for (int rr = 0; rr < 4; rr++) {
        if (rr == i) continue;
        int ci = 0;
        for (int cc = 0; cc < 4; cc++) {
          if (cc == j) continue;
          sub[ri][ci] = m.at(rr, cc);
          ci++;
        }
        ri++;
      }
      int64_t d3 = sub[0][0] * (sub[1][1] * sub[2][2] - sub[1][2] * sub[2][1]) -
                   sub[0][1] * (sub[1][0] * sub[2][2] - sub[1][2] * sub[2][0]) +
                   sub[0][2] * (sub[1][0] * sub[2][1] - sub[1][1] * sub[2][0]);
      r.at(j, i) = ((i + j) % 2 == 0) ? d3 : -d3;
    }
  return r;
}

int rank_i64(std::vector<std::vector<int64_t>> m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; c++) {
    size_t piv = rows;
    for (size_t i = r; i < rows; i++)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (size_t i = r + 1; i < rows; i++) {
      if (m[i][c] == 0) continue;
      int64_t f1 = m[r][c], f2 = m[i][c];
      int64_t g = std::gcd(f1, f2);
      f1 /= g;
      f2 /= g;
      for (size_t j = c; j < cols; j++) m[i][j] = m[i][j] * f1 - m[r][j] * f2;
    }
    r++;
    rank++;
  }
  return rank;
}

int rank_of_pairs(const std::vector<IV4>& vs) {
  std::vector<std::vector<int64_t>> m;
  for (const auto& v : vs) m.push_back({v[0], v[1], v[2], v[3]});
  return rank_i64(std::move(m));
}

int rank_of_qs(const std::vector<IV4>& vs) {
  std::vector<std::vector<int64_t>> m;
  for (const auto& v : vs) {
    Q10 q = qc(v);
    m.emplace_back(q.begin(), q.end());
  }
  return rank_i64(std::move(m));
}

// ---------------------------------------------------------------------------
// Pair-set matcher: integral det-+1 maps g with g * (+-A) = (+-B).

struct PairList {
  std::vector<IV4> v;  // canonical sign

  void sort_canonical() { std::sort(v.begin(), v.end()); }
  bool operator==(const PairList& o) const { return v == o.v; }
  bool operator<(const PairList& o) const { return v < o.v; }
};

PairList transform(const IMat& g, const PairList& a) {
  PairList out;
  out.v.reserve(a.v.size());
  for (const auto& x : a.v) out.v.push_back(canon_sign(g.apply(x)));
  out.sort_canonical();
  return out;
}

// Local invariant of pair i inside set S: sorted |det| profile over 3-subsets
// of the other pairs.
std::vector<int64_t> local_fp(const std::vector<IV4>& s, size_t i) {
  std::vector<int64_t> out;
  size_t n = s.size();
  for (size_t a = 0; a < n; a++) {
    if (a == i) continue;
    for (size_t b = a + 1; b < n; b++) {
      if (b == i) continue;
      for (size_t c = b + 1; c < n; c++) {
        if (c == i) continue;
        out.push_back(std::abs(det4_cols(s[i], s[a], s[b], s[c])));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Matcher {
  const std::vector<IV4>& A;
  const std::vector<IV4>& B;
  std::set<IV4> bset;
  std::array<size_t, 4> base{};
  IMat adjA;
  int64_t detA = 0;
  std::vector<std::vector<size_t>> cand;  // per slot: candidate B indices
  std::vector<IMat> out;
  bool first_only = false;
  bool done = false;

  Matcher(const std::vector<IV4>& a, const std::vector<IV4>& b) : A(a), B(b) {
    for (const auto& x : B) bset.insert(x);
  }

  bool prepare() {
    if (A.size() != B.size()) return false;
    // Greedy independent 4-subset of A.
    std::vector<std::vector<int64_t>> acc;
    std::vector<size_t> idx;
    for (size_t i = 0; i < A.size() && idx.size() < 4; i++) {
      acc.push_back({A[i][0], A[i][1], A[i][2], A[i][3]});
      if (rank_i64(acc) == static_cast<int>(acc.size()))
        idx.push_back(i);
      else
        acc.pop_back();
    }
    if (idx.size() != 4) return false;
    for (int i = 0; i < 4; i++) base[i] = idx[i];
    IMat abase;
    for (int j = 0; j < 4; j++)
      for (int i = 0; i < 4; i++) abase.at(i, j) = A[base[j]][i];
    detA = abase.det();
    adjA = adj4(abase);
    cand.assign(4, {});
    for (int t = 0; t < 4; t++) {
      auto fa = local_fp(A, base[t]);
      for (size_t j = 0; j < B.size(); j++)
        if (local_fp(B, j) == fa) cand[t].push_back(j);
      if (cand[t].empty()) return false;
    }
    return true;
  }

  void dfs(int slot, std::array<size_t, 4>& pick, std::array<int, 4>& sgn) {
    if (done && first_only) return;
    if (slot == 4) {
      IMat bsel;
      for (int j = 0; j < 4; j++)
        for (int i = 0; i < 4; i++) bsel.at(i, j) = sgn[j] * B[pick[j]][i];
      if (bsel.det() != detA) return;  // det g must be +1
      IMat num = bsel.mul(adjA);
      IMat g;
      for (int k = 0; k < 16; k++) {
        if (num.a[k] % detA != 0) return;
        g.a[k] = num.a[k] / detA;
      }
      for (const auto& x : A)
        if (!bset.count(canon_sign(g.apply(x)))) return;
      out.push_back(g);
      if (first_only) done = true;
      return;
    }
    for (size_t j : cand[slot]) {
      bool used = false;
      for (int t = 0; t < slot; t++)
        if (pick[t] == j) used = true;
      if (used) continue;
      pick[slot] = j;
      for (int s = -1; s <= 1; s += 2) {
        sgn[slot] = s;
        dfs(slot + 1, pick, sgn);
        if (done && first_only) return;
      }
    }
  }

  std::vector<IMat> run(bool all) {
    first_only = !all;
    if (!prepare()) return {};
    std::array<size_t, 4> pick{};
    std::array<int, 4> sgn{};
    dfs(0, pick, sgn);
    return out;
  }
};

std::vector<IMat> pair_maps(const std::vector<IV4>& a, const std::vector<IV4>& b, bool all) {
  Matcher m(a, b);
  return m.run(all);
}

bool pair_equivalent(const std::vector<IV4>& a, const std::vector<IV4>& b) {
  return !pair_maps(a, b, false).empty();
}

// ---------------------------------------------------------------------------
// Perfect forms and their Voronoi cone face lattices.

std::vector<IV4> min_vector_pairs(const int64_t gram[4][4], int64_t* min_out) {
  int64_t best = INT64_MAX;
  std::vector<IV4> vecs;
  const int B = 3;
  IV4 x;
  for (x[0] = -B; x[0] <= B; x[0]++)
    for (x[1] = -B; x[1] <= B; x[1]++)
      for (x[2] = -B; x[2] <= B; x[2]++)
        for (x[3] = -B; x[3] <= B; x[3]++) {
          if (x[0] == 0 && x[1] == 0 && x[2] == 0 && x[3] == 0) continue;
          int64_t q = 0;
          for (int i = 0; i < 4; i++)
            for (int j = 0; j < 4; j++) q += gram[i][j] * x[i] * x[j];
          if (q < best) {
            best = q;
            vecs.clear();
          }
          if (q == best) vecs.push_back(x);
        }
  std::set<IV4> pairs;
  for (const auto& v : vecs) pairs.insert(canon_sign(v));
  for (const auto& v : pairs)
    for (int i = 0; i < 4; i++)
      if (std::abs(v[i]) >= B)
        throw GenerationFailed("minimal vector touches the enumeration box");
  *min_out = best;
  return std::vector<IV4>(pairs.begin(), pairs.end());
}

int64_t dot10(const Q10& a, const Q10& b) {
  int64_t s = 0;
  for (int i = 0; i < 10; i++) s += a[i] * b[i];
  return s;
}

// det of a kxk int64 matrix by fraction-free elimination (k <= 9, small entries).
int64_t det_k(std::vector<std::vector<int64_t>> m) {
  size_t n = m.size();
  int sign = 1;
  for (size_t c = 0; c + 1 < n; c++) {
    size_t piv = n;
    for (size_t i = c; i < n; i++)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      sign = -sign;
    }
    for (size_t i = c + 1; i < n; i++) {
      if (m[i][c] == 0) continue;
      for (size_t j = c + 1; j < n; j++) m[i][j] = m[i][j] * m[c][c] - m[c][j] * m[i][c];
      m[i][c] = 0;
      if (c > 0)
        for (size_t j = c + 1; j < n; j++) m[i][j] /= m[c - 1][c - 1];
    }
  }
  return sign * m[n - 1][n - 1];
}

// All faces of the cone spanned by the given rays, as ray-index masks.
// Facets are found from 9-subsets (generalized cross products); the rest by
// closing under intersection.
std::vector<uint32_t> cone_face_masks(const std::vector<Q10>& rays) {
  size_t n = rays.size();
  std::set<uint32_t> facets;
  std::vector<size_t> sub(9);
  std::vector<bool> pickmask(n, false);
  std::function<void(size_t, size_t)> rec = [&](size_t start, size_t depth) {
    if (depth == 9) {
      // lambda_j = (-1)^j det(rows without column j)
      Q10 lam{};
      bool any = false;
      for (int jout = 0; jout < 10; jout++) {
        std::vector<std::vector<int64_t>> m(9, std::vector<int64_t>(9));
        for (int i = 0; i < 9; i++) {
          int cc = 0;
          for (int j = 0; j < 10; j++) {
            if (j == jout) continue;
            m[i][cc++] = rays[sub[i]][j];
          }
        }
        int64_t d = det_k(std::move(m));
        lam[jout] = (jout % 2 == 0) ? d : -d;
        if (d != 0) any = true;
      }
      if (!any) return;  // rank-deficient subset
      int pos = 0, neg = 0;
      uint32_t zero_mask = 0;
      for (size_t r = 0; r < n; r++) {
        int64_t s = dot10(lam, rays[r]);
        if (s > 0) pos++;
        else if (s < 0) neg++;
        else zero_mask |= (1u << r);
      }
      if (pos && neg) return;  // not supporting
      if (!pos && !neg) return;
      facets.insert(zero_mask);
      return;
    }
    if (n - start < 9 - depth) return;
    for (size_t i = start; i < n; i++) {
      sub[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);

  std::set<uint32_t> faces;
  uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1);
  faces.insert(full);
  std::vector<uint32_t> queue(facets.begin(), facets.end());
  for (uint32_t f : queue) faces.insert(f);
  while (!queue.empty()) {
    uint32_t m = queue.back();
    queue.pop_back();
    for (uint32_t f : facets) {
      uint32_t x = m & f;
      if (faces.insert(x).second) queue.push_back(x);
    }
  }
  return std::vector<uint32_t>(faces.begin(), faces.end());
}

struct GenFace {
  std::vector<IV4> pairs;  // sorted canonical
  int cone_dim = 0;
};

struct GenClass {
  std::vector<IV4> std_pairs;  // in orientation order (not necessarily sorted)
  int dim = 0;                 // cell dimension in the retract
  std::string label;
};

std::vector<int64_t> face_fingerprint(const std::vector<IV4>& pairs) {
  std::vector<int64_t> fp;
  fp.push_back(static_cast<int64_t>(pairs.size()));
  std::vector<int64_t> dets;
  size_t n = pairs.size();
  for (size_t a = 0; a < n; a++)
    for (size_t b = a + 1; b < n; b++)
      for (size_t c = b + 1; c < n; c++)
        for (size_t d = c + 1; d < n; d++)
          dets.push_back(std::abs(det4_cols(pairs[a], pairs[b], pairs[c], pairs[d])));
  std::sort(dets.begin(), dets.end());
  fp.insert(fp.end(), dets.begin(), dets.end());
  return fp;
}

Mat4 to_mat4(const IMat& m) {
  Mat4 out;
  for (int k = 0; k < 16; k++) out.a[k] = m.a[k];
  return out;
}

IMat to_imat(const Mat4& m) {
  IMat out;
  for (int k = 0; k < 16; k++) out.a[k] = m.a[k].get_si();
  return out;
}

PrimVec4 to_prim(const IV4& v) {
  return PrimVec4(Vec4{Int(v[0]), Int(v[1]), Int(v[2]), Int(v[3])});
}

std::vector<IV4> from_prims(const std::vector<PrimVec4>& vs) {
  std::vector<IV4> out;
  for (const auto& v : vs)
    out.push_back(IV4{v.v[0].get_si(), v.v[1].get_si(), v.v[2].get_si(), v.v[3].get_si()});
  return out;
}

// Facet cells of the standard cell with pair set A:  all fan cells
// g * (class rep of cl) whose pair set contains A, with one witness g each.
struct FacetCell {
  std::vector<IV4> pairs;  // sorted
  IMat witness;
};

std::vector<FacetCell> facet_cells(const std::vector<IV4>& a_sorted,
                                   const std::vector<IV4>& target_rep) {
  std::map<std::vector<IV4>, IMat> cells;
  size_t n = target_rep.size();
  for (size_t drop = 0; drop < n; drop++) {
    std::vector<IV4> sub;
    for (size_t i = 0; i < n; i++)
      if (i != drop) sub.push_back(target_rep[i]);
    for (const auto& g : pair_maps(sub, a_sorted, true)) {
      std::vector<IV4> cell;
      for (const auto& v : target_rep) cell.push_back(canon_sign(g.apply(v)));
      std::sort(cell.begin(), cell.end());
      cells.emplace(std::move(cell), g);
    }
  }
  std::vector<FacetCell> out;
  for (auto& [pairs, g] : cells) out.push_back({pairs, g});
  return out;
}

bool contains_all(const std::vector<IV4>& sorted_haystack, const std::vector<IV4>& needles) {
  for (const auto& x : needles)
    if (!std::binary_search(sorted_haystack.begin(), sorted_haystack.end(), x)) return false;
  return true;
}

}  // namespace

CellDatabase generate_celldb() {
  // The two perfect quaternary forms.
  const int64_t gram_d4[4][4] = {{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};
  const int64_t gram_a4[4][4] = {{2, 1, 1, 1}, {1, 2, 1, 1}, {1, 1, 2, 1}, {1, 1, 1, 2}};

  int64_t min_d4 = 0, min_a4 = 0;
  std::vector<IV4> md4 = min_vector_pairs(gram_d4, &min_d4);
  std::vector<IV4> ma4 = min_vector_pairs(gram_a4, &min_a4);
  if (md4.size() != 12 || ma4.size() != 10)
    throw GenerationFailed("perfect form minimal vector counts are off");
  if (rank_of_qs(md4) != 10 || rank_of_qs(ma4) != 10)
    throw GenerationFailed("forms are not perfect (rank-one span deficient)");

  // Enumerate faces of both perfect cones; keep spanning faces of cone
  // dimension 4..10 (retract cells of dimension 6..0).
  std::vector<GenFace> faces;
  for (const auto* mv : {&md4, &ma4}) {
    std::vector<Q10> rays;
    for (const auto& v : *mv) rays.push_back(qc(v));
    for (uint32_t mask : cone_face_masks(rays)) {
      std::vector<IV4> pairs;
      for (size_t i = 0; i < mv->size(); i++)
        if (mask & (1u << i)) pairs.push_back((*mv)[i]);
      if (pairs.size() < 4) continue;
      if (rank_of_pairs(pairs) != 4) continue;
      int cd = rank_of_qs(pairs);
      if (cd < 4) continue;
      std::sort(pairs.begin(), pairs.end());
      faces.push_back({std::move(pairs), cd});
    }
  }

  // Classify up to SL4(Z).
  std::map<std::vector<int64_t>, std::vector<size_t>> buckets;  // fp -> class ids
  std::vector<GenClass> classes;
  for (auto& f : faces) {
    auto fp = face_fingerprint(f.pairs);
    fp.push_back(f.cone_dim);
    bool matched = false;
    for (size_t cid : buckets[fp]) {
      if (pair_equivalent(f.pairs, classes[cid].std_pairs)) {
        matched = true;
        break;
      }
    }
    if (!matched) {
      GenClass cl;
      cl.std_pairs = f.pairs;
      cl.dim = 10 - f.cone_dim;
      buckets[fp].push_back(classes.size());
      classes.push_back(std::move(cl));
    }
  }
  if (classes.size() != 18)
    throw GenerationFailed("expected 18 cell classes, found " + std::to_string(classes.size()));

  // Pin the printed standards: identity columns for the 6-cell, the three
  // quintuple matrices for the 5-cells.
  const std::vector<IV4> std6 = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  const std::vector<std::vector<IV4>> std5 = {
      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 1, 1}},
      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 1, 0}},
      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}}};

  auto class_of = [&](const std::vector<IV4>& pairs) -> int {
    for (size_t cid = 0; cid < classes.size(); cid++) {
      if (classes[cid].std_pairs.size() != pairs.size()) continue;
      if (pair_equivalent(pairs, classes[cid].std_pairs)) return static_cast<int>(cid);
    }
    return -1;
  };

  {
    int c6 = class_of(std6);
    if (c6 < 0 || classes[c6].dim != 6) throw GenerationFailed("identity 6-cell class missing");
    classes[c6].std_pairs = std6;
  }
  std::vector<int> cls5;
  for (const auto& s : std5) {
    int c = class_of(s);
    if (c < 0 || classes[c].dim != 5) throw GenerationFailed("printed 5-cell class missing");
    classes[c].std_pairs = s;
    cls5.push_back(c);
  }
  if (std::set<int>(cls5.begin(), cls5.end()).size() != 3)
    throw GenerationFailed("printed 5-cells are not pairwise inequivalent");

  IMat printed_alpha;
  {
    const int64_t pa[16] = {0, 0, 1, 0, 0, 0, 0, 1, -1, 0, 1, 0, 0, -1, 1, 0};
    for (int k = 0; k < 16; k++) printed_alpha.a[k] = pa[k];
  }
  IMat printed_alpha_inv = adj4(printed_alpha);
  if (printed_alpha.det() != 1) throw GenerationFailed("pinned alpha is not in SL4");

  // Re-choose the standards of the 4-cell classes so that each is a literal
  // facet of every 5-cell standard that touches its class; the one pair that
  // cannot be aligned this way takes the pinned alpha and fixes the 5b/4b
  // labels.
  std::vector<int> cls4;
  for (size_t cid = 0; cid < classes.size(); cid++)
    if (classes[cid].dim == 4) cls4.push_back(static_cast<int>(cid));

  std::map<int, std::map<int, std::vector<FacetCell>>> fcells;  // 5class -> 4class -> cells
  for (int c5 : cls5) {
    std::vector<IV4> a_sorted = classes[c5].std_pairs;
    std::sort(a_sorted.begin(), a_sorted.end());
    for (int c4 : cls4) {
      auto cells = facet_cells(a_sorted, classes[c4].std_pairs);
      if (!cells.empty()) fcells[c5][c4] = std::move(cells);
    }
  }

  int special5 = -1, special4 = -1;
  for (int c4 : cls4) {
    std::vector<int> rel;
    for (int c5 : cls5)
      if (fcells[c5].count(c4)) rel.push_back(c5);
    if (rel.empty()) throw GenerationFailed("4-cell class with no 5-cell contact");

    std::set<std::vector<IV4>> candidates;
    for (int c5 : rel)
      for (const auto& fc : fcells[c5][c4]) candidates.insert(fc.pairs);

    auto std5_sorted = [&](int c5) {
      std::vector<IV4> s = classes[c5].std_pairs;
      std::sort(s.begin(), s.end());
      return s;
    };

    bool chosen = false;
    for (const auto& cand : candidates) {
      bool all_id = true;
      for (int c5 : rel)
        if (!contains_all(cand, std5_sorted(c5))) all_id = false;
      if (all_id) {
        classes[c4].std_pairs = cand;
        chosen = true;
        break;
      }
    }
    if (chosen) continue;

    // Pinned-alpha fallback: std := alpha^{-1} * cell for a cell of one type,
    // identity for the others.
    for (int s5 : rel) {
      if (chosen) break;
      for (const auto& fc : fcells[s5][c4]) {
        std::vector<IV4> cand;
        for (const auto& v : fc.pairs) cand.push_back(canon_sign(printed_alpha_inv.apply(v)));
        std::sort(cand.begin(), cand.end());
        bool ok = true;
        for (int c5 : rel) {
          if (c5 == s5) continue;
          if (!contains_all(cand, std5_sorted(c5))) ok = false;
        }
        if (!ok) continue;
        if (special5 >= 0) throw GenerationFailed("two facet pairs need the pinned alpha");
        classes[c4].std_pairs = cand;
        special5 = s5;
        special4 = c4;
        chosen = true;
        break;
      }
    }
    if (!chosen) throw GenerationFailed("cannot align a 4-cell standard");
  }
  if (special5 < 0) throw GenerationFailed("no facet pair selects the pinned alpha");

  // Align 3-cell standards with the 4-cell standards where possible (best
  // effort; remaining pairs get a generic alpha).
  std::vector<int> cls3;
  for (size_t cid = 0; cid < classes.size(); cid++)
    if (classes[cid].dim == 3) cls3.push_back(static_cast<int>(cid));
  for (int c3 : cls3) {
    std::vector<int> rel;
    std::set<std::vector<IV4>> candidates;
    for (int c4 : cls4) {
      std::vector<IV4> a_sorted = classes[c4].std_pairs;
      std::sort(a_sorted.begin(), a_sorted.end());
      auto cells = facet_cells(a_sorted, classes[c3].std_pairs);
      if (!cells.empty()) {
        rel.push_back(c4);
        for (const auto& fc : cells) candidates.insert(fc.pairs);
      }
    }
    for (const auto& cand : candidates) {
      bool all_id = true;
      for (int c4 : rel) {
        std::vector<IV4> s = classes[c4].std_pairs;
        std::sort(s.begin(), s.end());
        if (!contains_all(cand, s)) all_id = false;
      }
      if (all_id) {
        classes[c3].std_pairs = cand;
        break;
      }
    }
  }

  // Labels: letters in canonical order within each dimension, except that the
  // pinned pair is forced to be 5b/4b.
  std::map<int, std::vector<int>> by_dim;
  for (size_t cid = 0; cid < classes.size(); cid++)
    by_dim[classes[cid].dim].push_back(static_cast<int>(cid));
  for (auto& [dim, ids] : by_dim) {
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      std::vector<IV4> sa = classes[a].std_pairs, sb = classes[b].std_pairs;
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      return sa < sb;
    });
    if (dim == 5 || dim == 4) {
      int special = (dim == 5) ? special5 : special4;
      std::vector<int> rest;
      for (int id : ids)
        if (id != special) rest.push_back(id);
      ids.clear();
      ids.push_back(rest[0]);
      ids.push_back(special);
      for (size_t i = 1; i < rest.size(); i++) ids.push_back(rest[i]);
    }
    char letter = 'a';
    for (int id : ids) {
      classes[id].label = std::to_string(dim) + std::string(1, letter);
      letter++;
    }
  }

  // Build CellTypes: stabilizers, characters, facet classes.
  CellDatabase db;
  std::map<int, size_t> type_index;
  std::vector<int> order;
  for (auto& [dim, ids] : by_dim)
    for (int id : ids) order.push_back(id);
  for (int id : order) {
    CellType t;
    t.type_id = classes[id].label;
    t.dim = classes[id].dim;
    for (const auto& v : classes[id].std_pairs) t.min_vectors.push_back(to_prim(v));
    std::vector<IMat> stab = pair_maps(classes[id].std_pairs, classes[id].std_pairs, true);
    std::sort(stab.begin(), stab.end());
    for (const auto& g : stab) {
      Mat4 gm = to_mat4(g);
      t.stabilizer.push_back(gm);
      t.stab_signs.push_back(static_cast<int8_t>(orientation_sign(t, gm)));
    }
    type_index[id] = db.types.size();
    db.types.push_back(std::move(t));
  }

  // Facet classes for cells of dimension 4, 5, 6.
  for (int id : order) {
    GenClass& cl = classes[id];
    if (cl.dim < 4) continue;
    CellType& t = db.types[type_index[id]];
    std::vector<IV4> a_sorted = cl.std_pairs;
    std::sort(a_sorted.begin(), a_sorted.end());

    for (int tid : order) {
      if (classes[tid].dim != cl.dim - 1) continue;
      auto cells = facet_cells(a_sorted, classes[tid].std_pairs);
      if (cells.empty()) continue;
      const CellType& tp = db.types[type_index[tid]];

      // The facet cells must form a single orbit under the left action of
      // the stabilizer of the standard cell.
      std::map<std::vector<IV4>, size_t> cell_index;
      for (size_t i = 0; i < cells.size(); i++) cell_index[cells[i].pairs] = i;
      std::vector<bool> visited(cells.size(), false);
      std::vector<size_t> stack = {0};
      visited[0] = true;
      size_t count = 1;
      while (!stack.empty()) {
        size_t cur = stack.back();
        stack.pop_back();
        for (const auto& g : t.stabilizer) {
          IMat gi = to_imat(g);
          std::vector<IV4> img;
          for (const auto& v : cells[cur].pairs) img.push_back(canon_sign(gi.apply(v)));
          std::sort(img.begin(), img.end());
          auto it = cell_index.find(img);
          if (it == cell_index.end())
            throw GenerationFailed("stabilizer does not permute facet cells");
          if (!visited[it->second]) {
            visited[it->second] = true;
            count++;
            stack.push_back(it->second);
          }
        }
      }
      if (count != cells.size())
        throw GenerationFailed("facet cells of " + t.type_id + " -> " + tp.type_id +
                               " form more than one double coset");

      // Pick alpha: identity when the standard facet cell works, the pinned
      // matrix for the special pair, otherwise the first witness.
      FacetClass fc;
      fc.target_type = tp.type_id;
      std::vector<IV4> tp_sorted = classes[tid].std_pairs;
      std::sort(tp_sorted.begin(), tp_sorted.end());
      if (contains_all(tp_sorted, a_sorted)) {
        fc.alpha = Mat4::identity();
      } else if (id == special5 && tid == special4) {
        std::vector<IV4> img;
        for (const auto& v : classes[tid].std_pairs)
          img.push_back(canon_sign(printed_alpha.apply(v)));
        std::sort(img.begin(), img.end());
        if (!cell_index.count(img))
          throw GenerationFailed("pinned alpha does not produce a facet cell");
        fc.alpha = to_mat4(printed_alpha);
      } else {
        fc.alpha = to_mat4(cells[0].witness);
      }

      Mat4 ainv = fc.alpha.inverse_unimodular();
      for (const auto& s : tp.stabilizer) {
        Mat4 conj = fc.alpha * s * ainv;
        for (const auto& g : t.stabilizer)
          if (g == conj) {
            fc.c_group.push_back(s);
            break;
          }
      }
      if (t.stab_order() % fc.c_group.size() != 0 ||
          t.stab_order() / fc.c_group.size() != cells.size())
        throw GenerationFailed("facet cell count disagrees with coset index");
      fc.rel_sign = relative_sign(t, tp, fc.alpha);
      t.facets.push_back(std::move(fc));
    }
  }

  // Boundary words for the 5-cell standards: the degree-1 chain generator
  // u_T shares its column set with the standard cell, and its boundary is
  // rewritten as a sum of plain images of the standard degree-0 generator.
  for (auto& t : db.types) {
    if (t.dim != 5) continue;
    const auto& cols = t.min_vectors;
    for (int drop = 0; drop < 5; drop++) {
      std::vector<Vec4> face;
      for (int i = 0; i < 5; i++)
        if (i != drop) face.push_back(cols[i].v);
      Mat4 m = Mat4::from_cols(face[0], face[1], face[2], face[3]);
      Int d = m.det();
      if (d == 0) continue;
      int face_sign = ((drop + 1) % 2 == 0) ? 1 : -1;  // boundary alternates from index 1
      // omega = m * P * D with sign(P) equal to the face sign and det +1.
      Mat4 omega = m;
      if (face_sign < 0) {
        // swap first two columns
        for (int r = 0; r < 4; r++) std::swap(omega.at(r, 0), omega.at(r, 1));
      }
      if (omega.det() == -1)
        for (int r = 0; r < 4; r++) omega.at(r, 0) = -omega.at(r, 0);
      if (omega.det() != 1) throw GenerationFailed("boundary word not unimodular");
      t.omega.push_back(omega);
    }
  }

  VerifyReport rep = verify_celldb(db);
  if (!rep.ok) {
    std::string msg = "generated database fails verification:";
    for (const auto& n : rep.notes) msg += " [" + n + "]";
    throw GenerationFailed(msg);
  }
  return db;
}

}  // namespace sl4
