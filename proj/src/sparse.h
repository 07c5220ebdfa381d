#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "arith.h"

namespace sl4 {

// Coordinate-format sparse matrix over F_p.  Entries are kept sorted by
// (row, col), duplicate-free and nonzero.
struct SparseMatrixModP {
  uint32_t rows = 0, cols = 0;
  uint32_t p = 0;
  std::vector<uint32_t> r, c, v;

  void add_entry(uint32_t row, uint32_t col, uint32_t val);  // accumulates mod p
  void finalize();  // sort, merge duplicates, drop zeros
  size_t nnz() const { return v.size(); }

  std::vector<uint32_t> matvec(const std::vector<uint32_t>& x) const;
  SparseMatrixModP transpose() const;

  // D stacked on top of E (same column count).
  static SparseMatrixModP stack(const SparseMatrixModP& top, const SparseMatrixModP& bottom);
  static SparseMatrixModP identity(uint32_t n, uint32_t p);

  std::vector<std::vector<uint32_t>> to_dense() const;

  void write(std::ostream& os) const;
  static SparseMatrixModP read(std::istream& is);
  void write_file(const std::string& path) const;
  static SparseMatrixModP read_file(const std::string& path);

 private:
  bool finalized_ = false;
  friend SparseMatrixModP sparse_product(const SparseMatrixModP&, const SparseMatrixModP&);
};

// Exact product over F_p (used by differential-composition checks).
SparseMatrixModP sparse_product(const SparseMatrixModP& a, const SparseMatrixModP& b);

}  // namespace sl4
