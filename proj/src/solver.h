#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparse.h"

namespace sl4 {

enum class LanczosStatus { success, aborted_isotropic, inconclusive, no_kernel };

const char* to_string(LanczosStatus s);

// One run of the mod-p Lanczos iteration on E = D^tr * D (never materialized;
// two sparse products per step).  Krylov vectors go to the in-memory spool,
// overflowing to disk past the cache budget.
struct LanczosRun {
  uint64_t seed = 0;
  LanczosStatus status = LanczosStatus::inconclusive;
  uint32_t k = 0;               // dependence index, reported per run
  uint32_t krylov_dim = 0;
  std::optional<std::vector<uint32_t>> kernel_vector;
};

struct LanczosOptions {
  size_t spool_cache_bytes = 256ull << 20;
  std::string spool_dir = ".";
};

LanczosRun lanczos_kernel_vector(const SparseMatrixModP& d, uint64_t seed,
                                 const LanczosOptions& opt = {});

struct KernelBasis {
  std::vector<std::vector<uint32_t>> vectors;  // k' independent kernel vectors
  uint32_t kprime = 0;
  uint32_t k_consensus = 0;
  bool k_disagreement = false;   // some run reported a different dependence index
  bool insufficient_runs = false;
  uint32_t runs_attempted = 0;
  uint32_t runs_succeeded = 0;
};

KernelBasis kernel_basis(const SparseMatrixModP& d, uint32_t max_runs, uint64_t seed,
                         uint32_t target_surplus = 10, const LanczosOptions& opt = {});

// Dense Gaussian elimination oracle.  Throws TooLarge past the budget.
KernelBasis gauss_kernel(const SparseMatrixModP& d, uint64_t budget_cells = 300000000ull);

void write_kernel(std::ostream& os, const KernelBasis& kb, uint32_t s, uint32_t p);
KernelBasis read_kernel(std::istream& is, uint32_t& s, uint32_t& p);

// Dense mod-p helpers shared with the small-matrix eigen code.
namespace densemod {

// Forward row echelon; returns rank.  Rows normalized to pivot 1; pivot
// columns recorded in insertion order (upper triangular in that order).
struct Echelon {
  uint32_t p = 0;
  uint32_t cols = 0;
  std::vector<std::vector<uint32_t>> rows;
  std::vector<uint32_t> pivot_col;
  std::vector<int32_t> col_pivot;  // column -> pivot row index or -1

  void init(uint32_t cols_, uint32_t p_);
  // Reduces x against the current rows in place; if a new pivot appears it is
  // absorbed and true is returned.
  bool insert(std::vector<uint32_t> x);
  // Reduce a vector without inserting; returns the residual.
  std::vector<uint32_t> residual(std::vector<uint32_t> x) const;
  uint32_t rank() const { return static_cast<uint32_t>(rows.size()); }
  // Solve rows * x = -(free column f of a kernel problem); see kernel().
  std::vector<std::vector<uint32_t>> kernel() const;
};

std::vector<std::vector<uint32_t>> kernel_of_dense(
    const std::vector<std::vector<uint32_t>>& m, uint32_t p);
uint32_t rank_of_dense(const std::vector<std::vector<uint32_t>>& m, uint32_t p);

}  // namespace densemod

}  // namespace sl4
