#include "sparse.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "errors.h"

namespace sl4 {

void SparseMatrixModP::add_entry(uint32_t row, uint32_t col, uint32_t val) {
  if (row >= rows || col >= cols) throw ShapeError("SparseMatrixModP: entry out of range");
  val %= p;
  if (val == 0) return;
  r.push_back(row);
  c.push_back(col);
  v.push_back(val);
  finalized_ = false;
}

void SparseMatrixModP::finalize() {
  std::vector<size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    if (r[a] != r[b]) return r[a] < r[b];
    return c[a] < c[b];
  });
  std::vector<uint32_t> nr, nc, nv;
  nr.reserve(v.size());
  for (size_t k : idx) {
    if (!nr.empty() && nr.back() == r[k] && nc.back() == c[k]) {
      nv.back() = (nv.back() + v[k]) % p;
    } else {
      nr.push_back(r[k]);
      nc.push_back(c[k]);
      nv.push_back(v[k]);
    }
  }
  r.clear(); c.clear(); v.clear();
  for (size_t k = 0; k < nv.size(); k++) {
    if (nv[k] == 0) continue;
    r.push_back(nr[k]);
    c.push_back(nc[k]);
    v.push_back(nv[k]);
  }
  finalized_ = true;
}

std::vector<uint32_t> SparseMatrixModP::matvec(const std::vector<uint32_t>& x) const {
  if (x.size() != cols) throw ShapeError("matvec: length mismatch");
  std::vector<uint64_t> acc(rows, 0);
  // Products are < 2^62/rowlen for p < 2^31, so per-entry accumulation with a
  // final reduction is safe for the row lengths that occur here; reduce
  // defensively on overflow risk anyway.
  const uint64_t cap = UINT64_MAX - (uint64_t)(p - 1) * (p - 1);
  for (size_t k = 0; k < v.size(); k++) {
    uint64_t prod = (uint64_t)v[k] * x[c[k]];
    if (acc[r[k]] > cap) acc[r[k]] %= p;
    acc[r[k]] += prod;
  }
  std::vector<uint32_t> y(rows);
  for (uint32_t i = 0; i < rows; i++) y[i] = static_cast<uint32_t>(acc[i] % p);
  return y;
}

SparseMatrixModP SparseMatrixModP::transpose() const {
  SparseMatrixModP t;
  t.rows = cols;
  t.cols = rows;
  t.p = p;
  t.r = c;
  t.c = r;
  t.v = v;
  t.finalize();
  return t;
}

SparseMatrixModP SparseMatrixModP::stack(const SparseMatrixModP& top,
                                         const SparseMatrixModP& bottom) {
  if (top.cols != bottom.cols) throw ShapeError("stack: column count mismatch");
  if (top.p != bottom.p) throw ShapeError("stack: modulus mismatch");
  SparseMatrixModP s;
  s.rows = top.rows + bottom.rows;
  s.cols = top.cols;
  s.p = top.p;
  s.r = top.r;
  s.c = top.c;
  s.v = top.v;
  for (size_t k = 0; k < bottom.v.size(); k++) {
    s.r.push_back(bottom.r[k] + top.rows);
    s.c.push_back(bottom.c[k]);
    s.v.push_back(bottom.v[k]);
  }
  s.finalize();
  return s;
}

SparseMatrixModP SparseMatrixModP::identity(uint32_t n, uint32_t p) {
  SparseMatrixModP m;
  m.rows = m.cols = n;
  m.p = p;
  for (uint32_t i = 0; i < n; i++) m.add_entry(i, i, 1);
  m.finalize();
  return m;
}

std::vector<std::vector<uint32_t>> SparseMatrixModP::to_dense() const {
  std::vector<std::vector<uint32_t>> d(rows, std::vector<uint32_t>(cols, 0));
  for (size_t k = 0; k < v.size(); k++) d[r[k]][c[k]] = (d[r[k]][c[k]] + v[k]) % p;
  return d;
}

void SparseMatrixModP::write(std::ostream& os) const {
  os << "SPARSE " << rows << " " << cols << " " << v.size() << " " << p << "\n";
  for (size_t k = 0; k < v.size(); k++)
    os << r[k] << " " << c[k] << " " << v[k] << "\n";
}

SparseMatrixModP SparseMatrixModP::read(std::istream& is) {
  std::string tag;
  SparseMatrixModP m;
  size_t nnz = 0;
  if (!(is >> tag >> m.rows >> m.cols >> nnz >> m.p) || tag != "SPARSE")
    throw CorruptDatabase("SPARSE: bad header");
  for (size_t k = 0; k < nnz; k++) {
    uint32_t a, b, x;
    if (!(is >> a >> b >> x)) throw CorruptDatabase("SPARSE: truncated entry list");
    m.add_entry(a, b, x);
  }
  m.finalize();
  return m;
}

void SparseMatrixModP::write_file(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw ResourceError("cannot open " + path);
  write(os);
}

SparseMatrixModP SparseMatrixModP::read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw CorruptDatabase("cannot open " + path);
  return read(is);
}

SparseMatrixModP sparse_product(const SparseMatrixModP& a, const SparseMatrixModP& b) {
  if (a.cols != b.rows) throw ShapeError("sparse_product: shape mismatch");
  if (a.p != b.p) throw ShapeError("sparse_product: modulus mismatch");
  // Row-major accumulation: group b by row.
  std::vector<size_t> bstart(b.rows + 1, 0);
  for (size_t k = 0; k < b.v.size(); k++) bstart[b.r[k] + 1]++;
  for (uint32_t i = 0; i < b.rows; i++) bstart[i + 1] += bstart[i];
  // b is finalized (sorted by row), so contiguous ranges work directly.
  SparseMatrixModP out;
  out.rows = a.rows;
  out.cols = b.cols;
  out.p = a.p;
  std::vector<uint64_t> acc(b.cols, 0);
  std::vector<uint32_t> touched;
  size_t arow_begin = 0;
  while (arow_begin < a.v.size()) {
    uint32_t row = a.r[arow_begin];
    size_t arow_end = arow_begin;
    while (arow_end < a.v.size() && a.r[arow_end] == row) arow_end++;
    for (size_t k = arow_begin; k < arow_end; k++) {
      uint32_t mid = a.c[k];
      uint64_t av = a.v[k];
      for (size_t t = bstart[mid]; t < bstart[mid + 1]; t++) {
        uint32_t col = b.c[t];
        if (acc[col] == 0) touched.push_back(col);
        acc[col] = (acc[col] + av * b.v[t]) % a.p;
        if (acc[col] == 0) acc[col] = a.p;  // keep marked; normalized below
      }
    }
    for (uint32_t col : touched) {
      uint32_t val = static_cast<uint32_t>(acc[col] % a.p);
      if (val) out.add_entry(row, col, val);
      acc[col] = 0;
    }
    touched.clear();
    arow_begin = arow_end;
  }
  out.finalize();
  return out;
}

}  // namespace sl4
