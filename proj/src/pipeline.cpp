#include "pipeline.h"

namespace sl4 {

const KernelBasis& LevelContext::harmonic() const {
  if (cfg.solver == "lanczos") {
    if (!lanczos) throw InvariantError("LevelContext: lanczos result missing");
    return *lanczos;
  }
  if (!gauss) throw InvariantError("LevelContext: gauss result missing");
  return *gauss;
}

LevelContext build_level_context(const CellDatabase& db, const RunConfig& cfg,
                                 bool run_solvers) {
  cfg.validate();
  LevelContext ctx;
  ctx.cfg = cfg;
  ctx.db = &db;
  ctx.lo = build_level_orbits(db, cfg.level);
  ctx.b4 = build_basis_index(db, ctx.lo, 4);
  ctx.b5 = build_basis_index(db, ctx.lo, 5);
  ctx.b6 = build_basis_index(db, ctx.lo, 6);
  ctx.d4 = assemble_d1(4, db, ctx.lo, ctx.b4, ctx.b5, cfg.modulus);
  ctx.d5 = assemble_d1(5, db, ctx.lo, ctx.b5, ctx.b6, cfg.modulus);
  ctx.stacked = assemble_harmonic_stack(ctx.d5, ctx.d4);
  if (run_solvers) {
    if (cfg.solver == "gauss" || cfg.solver == "both")
      ctx.gauss = gauss_kernel(ctx.stacked, cfg.gauss_budget_cells);
    if (cfg.solver == "lanczos" || cfg.solver == "both") {
      LanczosOptions opt;
      opt.spool_dir = cfg.spool_dir;
      ctx.lanczos =
          kernel_basis(ctx.stacked, cfg.lanczos_max_runs, cfg.seed, cfg.lanczos_surplus, opt);
    }
    if (ctx.gauss && ctx.lanczos && ctx.gauss->kprime != ctx.lanczos->kprime)
      throw DataInconsistency("solver cross-validation failed: kernel dimensions disagree");
  }
  return ctx;
}

ClassCoordinates::ClassCoordinates(const LevelContext& ctx) {
  p_ = ctx.cfg.modulus;
  const KernelBasis& h = ctx.harmonic();
  kprime_ = h.kprime;
  v5_ = ctx.d4.rows;
  col_pivot_.assign(v5_, -1);
  const uint32_t book_len = kprime_ + ctx.d4.cols;
  for (uint32_t j = 0; j < kprime_; j++) insert_column(h.vectors[j], j, book_len);
  // Columns of d4 (image of the degree-4 differential).
  auto dense_cols = [&]() {
    std::vector<std::vector<uint32_t>> cols(ctx.d4.cols, std::vector<uint32_t>(v5_, 0));
    for (size_t k = 0; k < ctx.d4.v.size(); k++) cols[ctx.d4.c[k]][ctx.d4.r[k]] = ctx.d4.v[k];
    return cols;
  }();
  for (uint32_t j = 0; j < ctx.d4.cols; j++) insert_column(dense_cols[j], kprime_ + j, book_len);
}

void ClassCoordinates::insert_column(const std::vector<uint32_t>& col, uint32_t book_index,
                                     uint32_t book_len) {
  if (rows_.size() == v5_) return;  // already full rank
  PrimeField F(p_);
  Row row;
  row.vec = col;
  row.book.assign(book_len, 0);
  row.book[book_index] = 1;
  for (const Row& r : rows_) {
    uint32_t f = row.vec[r.pivot];
    if (f == 0) continue;
    uint32_t g = p_ - f;
    for (uint32_t j = 0; j < v5_; j++)
      row.vec[j] = static_cast<uint32_t>((row.vec[j] + (uint64_t)g * r.vec[j]) % p_);
    for (uint32_t j = 0; j < book_len; j++)
      row.book[j] = static_cast<uint32_t>((row.book[j] + (uint64_t)g * r.book[j]) % p_);
  }
  uint32_t lead = v5_;
  for (uint32_t j = 0; j < v5_; j++)
    if (row.vec[j]) {
      lead = j;
      break;
    }
  if (lead == v5_) return;  // dependent column
  uint32_t inv = F.inv(row.vec[lead]);
  for (uint32_t j = 0; j < v5_; j++) row.vec[j] = F.mul(row.vec[j], inv);
  for (uint32_t j = 0; j < book_len; j++) row.book[j] = F.mul(row.book[j], inv);
  row.pivot = lead;
  col_pivot_[lead] = static_cast<int32_t>(rows_.size());
  rows_.push_back(std::move(row));
}

std::vector<uint32_t> ClassCoordinates::coords(const std::vector<uint32_t>& w) const {
  if (w.size() != v5_) throw ShapeError("ClassCoordinates: vector length mismatch");
  PrimeField F(p_);
  std::vector<uint32_t> vec = w;
  std::vector<uint32_t> book(rows_.empty() ? kprime_ : rows_.front().book.size(), 0);
  for (const Row& r : rows_) {
    uint32_t f = vec[r.pivot];
    if (f == 0) continue;
    uint32_t g = p_ - f;
    for (uint32_t j = 0; j < v5_; j++)
      vec[j] = static_cast<uint32_t>((vec[j] + (uint64_t)g * r.vec[j]) % p_);
    for (size_t j = 0; j < book.size(); j++)
      book[j] = static_cast<uint32_t>((book[j] + (uint64_t)g * r.book[j]) % p_);
  }
  for (uint32_t j = 0; j < v5_; j++)
    if (vec[j]) throw PipelineCorruption("class extraction: vector is not a cocycle class");
  // w - sum f_i row_i = 0 and each row_i = [H|d4] book_i, so
  // w = [H|d4] * (sum f_i book_i) = [H|d4] * (-book).
  std::vector<uint32_t> c(kprime_);
  for (uint32_t j = 0; j < kprime_; j++) c[j] = F.neg(book[j]);
  return c;
}

}  // namespace sl4
