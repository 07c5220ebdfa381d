#pragma once

#include <memory>
#include <optional>

#include "config.h"
#include "e1complex.h"
#include "solver.h"

namespace sl4 {

// Everything computed for one level up to the harmonic kernel, cached for
// reuse by the Hecke stage.
struct LevelContext {
  RunConfig cfg;
  const CellDatabase* db = nullptr;
  LevelOrbits lo;
  BasisIndex b4, b5, b6;
  SparseMatrixModP d4, d5, stacked;
  std::optional<KernelBasis> gauss;
  std::optional<KernelBasis> lanczos;

  const KernelBasis& harmonic() const;
  PrimeField field() const { return PrimeField(cfg.modulus); }
};

// Builds orbits + differentials; solvers run per cfg.solver.
LevelContext build_level_context(const CellDatabase& db, const RunConfig& cfg,
                                 bool run_solvers = true);

// Coordinates of a degree-5 cocycle class in the harmonic basis: solves
// w = H c + d4 y; throws PipelineCorruption when w is not a cocycle class.
class ClassCoordinates {
 public:
  ClassCoordinates(const LevelContext& ctx);
  std::vector<uint32_t> coords(const std::vector<uint32_t>& w) const;

 private:
  uint32_t p_;
  uint32_t kprime_;
  uint32_t v5_;
  // augmented echelon over [H | d4-columns]
  struct Row {
    std::vector<uint32_t> vec;
    std::vector<uint32_t> book;
    uint32_t pivot;
  };
  std::vector<Row> rows_;
  std::vector<int32_t> col_pivot_;
  void insert_column(const std::vector<uint32_t>& col, uint32_t book_index, uint32_t book_len);
};

}  // namespace sl4
