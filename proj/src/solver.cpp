#include "solver.h"

#include <cstdio>
#include <fstream>
#include <random>

#include "errors.h"

namespace sl4 {

const char* to_string(LanczosStatus s) {
  switch (s) {
    case LanczosStatus::success: return "success";
    case LanczosStatus::aborted_isotropic: return "aborted-isotropic";
    case LanczosStatus::inconclusive: return "inconclusive";
    case LanczosStatus::no_kernel: return "no-kernel";
  }
  return "?";
}

namespace {

uint32_t dotp(const std::vector<uint32_t>& x, const std::vector<uint32_t>& y, uint32_t p) {
  uint64_t acc = 0;
  const uint64_t cap = UINT64_MAX - (uint64_t)(p - 1) * (p - 1);
  for (size_t i = 0; i < x.size(); i++) {
    if (acc > cap) acc %= p;
    acc += (uint64_t)x[i] * y[i];
  }
  return static_cast<uint32_t>(acc % p);
}

// Krylov vector spool: RAM up to the cache budget, then a binary temp file.
class Spool {
 public:
  Spool(uint32_t veclen, const LanczosOptions& opt)
      : len_(veclen), budget_(opt.spool_cache_bytes), dir_(opt.spool_dir) {}
  ~Spool() {
    if (f_) {
      std::fclose(f_);
      std::remove(path_.c_str());
    }
  }
  void push(const std::vector<uint32_t>& q) {
    if ((ram_.size() + 1) * len_ * sizeof(uint32_t) <= budget_) {
      ram_.push_back(q);
      count_++;
      return;
    }
    if (!f_) {
      path_ = dir_ + "/lanczos_spool_" + std::to_string(reinterpret_cast<uintptr_t>(this)) +
              ".bin";
      f_ = std::fopen(path_.c_str(), "w+b");
      if (!f_) throw ResourceError("cannot open spool file " + path_);
    }
    std::fwrite(q.data(), sizeof(uint32_t), len_, f_);
    count_++;
  }
  std::vector<uint32_t> get(size_t i) {
    if (i < ram_.size()) return ram_[i];
    std::vector<uint32_t> q(len_);
    size_t off = i - ram_.size();
    std::fseek(f_, static_cast<long>(off * len_ * sizeof(uint32_t)), SEEK_SET);
    if (std::fread(q.data(), sizeof(uint32_t), len_, f_) != len_)
      throw ResourceError("spool read failed");
    return q;
  }
  size_t size() const { return count_; }

 private:
  uint32_t len_;
  size_t budget_;
  std::string dir_;
  std::vector<std::vector<uint32_t>> ram_;
  std::FILE* f_ = nullptr;
  std::string path_;
  size_t count_ = 0;
};

bool vec_is_zero(const std::vector<uint32_t>& x) {
  for (uint32_t v : x)
    if (v) return false;
  return true;
}

}  // namespace

LanczosRun lanczos_kernel_vector(const SparseMatrixModP& d, uint64_t seed,
                                 const LanczosOptions& opt) {
  PrimeField F(d.p);
  const uint32_t s = d.cols;
  LanczosRun run;
  run.seed = seed;
  SparseMatrixModP dt = d.transpose();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint32_t> dist(0, d.p - 1);
  std::vector<uint32_t> q(s);
  bool nonzero = false;
  for (uint32_t i = 0; i < s; i++) {
    q[i] = dist(rng);
    if (q[i]) nonzero = true;
  }
  if (!nonzero) q[0] = 1;

  auto apply_e = [&](const std::vector<uint32_t>& x) { return dt.matvec(d.matvec(x)); };

  Spool spool(s, opt);
  std::vector<uint32_t> alphas, betas;  // beta_i pairs q_i with q_{i-1}
  std::vector<uint32_t> q_prev;  // q_{i-1}
  std::vector<uint32_t> q_cur = q;
  uint32_t pair_cur = dotp(q_cur, q_cur, F.p);

  while (true) {
    if (vec_is_zero(q_cur)) break;  // dependence reached
    if (pair_cur == 0) {
      run.status = LanczosStatus::aborted_isotropic;
      run.krylov_dim = static_cast<uint32_t>(spool.size());
      run.k = s > run.krylov_dim ? s - run.krylov_dim : 0;
      return run;
    }
    spool.push(q_cur);
    std::vector<uint32_t> z = apply_e(q_cur);
    uint32_t alpha = F.mul(dotp(z, q_cur, F.p), F.inv(pair_cur));
    alphas.push_back(alpha);
    uint32_t beta = 0;
    if (!q_prev.empty()) beta = F.mul(pair_cur, F.inv(dotp(q_prev, q_prev, F.p)));
    betas.push_back(beta);
    // q_next = z - alpha q_cur - beta q_prev
    std::vector<uint32_t> q_next(s);
    for (uint32_t i = 0; i < s; i++) {
      uint64_t t = z[i] + (uint64_t)(F.p - alpha) * q_cur[i];
      if (!q_prev.empty()) t += (uint64_t)(F.p - beta) * q_prev[i];
      q_next[i] = static_cast<uint32_t>(t % F.p);
    }
    q_prev = std::move(q_cur);
    q_cur = std::move(q_next);
    pair_cur = dotp(q_cur, q_cur, F.p);
  }

  const uint32_t m = static_cast<uint32_t>(spool.size());
  run.krylov_dim = m;
  // Backsolve the tridiagonal system for y = sum c_i q_i in ker E:
  // row j: c_{j-1} + alpha_j c_j + beta_{j+1} c_{j+1} = 0.
  std::vector<std::vector<uint32_t>> T(m, std::vector<uint32_t>(m, 0));
  for (uint32_t j = 0; j < m; j++) {
    if (j > 0) T[j][j - 1] = 1;
    T[j][j] = alphas[j];
    if (j + 1 < m) T[j][j + 1] = betas[j + 1];
  }
  auto ker = densemod::kernel_of_dense(T, F.p);
  if (ker.empty()) {
    run.status = LanczosStatus::no_kernel;
    run.k = s - m;
    return run;
  }
  run.k = s - m + 1;
  const auto& c = ker.front();
  std::vector<uint32_t> y(s, 0);
  for (uint32_t i = 0; i < m; i++) {
    if (c[i] == 0) continue;
    std::vector<uint32_t> qi = spool.get(i);
    for (uint32_t t = 0; t < s; t++) y[t] = (uint32_t)((y[t] + (uint64_t)c[i] * qi[t]) % F.p);
  }
  if (vec_is_zero(y)) {
    run.status = LanczosStatus::inconclusive;
    return run;
  }
  if (vec_is_zero(d.matvec(y))) {
    run.status = LanczosStatus::success;
    run.kernel_vector = std::move(y);
  } else {
    // y lies in ker E but not ker D.
    run.status = LanczosStatus::inconclusive;
  }
  return run;
}

KernelBasis kernel_basis(const SparseMatrixModP& d, uint32_t max_runs, uint64_t seed,
                         uint32_t target_surplus, const LanczosOptions& opt) {
  KernelBasis kb;
  std::vector<std::vector<uint32_t>> S;
  std::optional<uint32_t> consensus;
  uint32_t no_kernel_streak = 0;
  for (uint32_t run_i = 0; run_i < max_runs; run_i++) {
    LanczosRun run = lanczos_kernel_vector(d, seed + run_i, opt);
    kb.runs_attempted++;
    if (run.status == LanczosStatus::aborted_isotropic) continue;
    if (run.status == LanczosStatus::no_kernel) {
      no_kernel_streak++;
      if (!consensus) consensus = run.k;
      if (no_kernel_streak >= 10 && S.empty()) {
        // Repeated clean terminations with no kernel component: trivial kernel.
        kb.k_consensus = 0;
        kb.kprime = 0;
        return kb;
      }
      continue;
    }
    if (run.status == LanczosStatus::inconclusive) continue;
    kb.runs_succeeded++;
    if (!consensus) {
      consensus = run.k;
    } else if (*consensus != run.k) {
      kb.k_disagreement = true;
      if (run.k > *consensus) consensus = run.k;
    }
    S.push_back(std::move(*run.kernel_vector));
    if (S.size() >= (size_t)(*consensus) + target_surplus) break;
  }
  kb.k_consensus = consensus.value_or(0);
  if (S.empty()) {
    kb.kprime = 0;
    kb.insufficient_runs = kb.runs_succeeded == 0 && kb.k_consensus > 0;
    return kb;
  }
  if (S.size() < (size_t)kb.k_consensus + target_surplus) kb.insufficient_runs = true;

  // Extract a maximal independent subset, cross-checking the cardinality from
  // several orderings of S.
  auto extract = [&](const std::vector<size_t>& order) {
    densemod::Echelon ech;
    ech.init(d.cols, d.p);
    std::vector<size_t> chosen;
    for (size_t i : order)
      if (ech.insert(S[i])) chosen.push_back(i);
    return chosen;
  };
  std::vector<size_t> base_order(S.size());
  for (size_t i = 0; i < S.size(); i++) base_order[i] = i;
  auto chosen = extract(base_order);
  std::vector<size_t> rev(base_order.rbegin(), base_order.rend());
  auto chosen_rev = extract(rev);
  std::vector<size_t> rot(base_order.begin() + base_order.size() / 2, base_order.end());
  rot.insert(rot.end(), base_order.begin(), base_order.begin() + base_order.size() / 2);
  auto chosen_rot = extract(rot);
  if (chosen.size() != chosen_rev.size() || chosen.size() != chosen_rot.size())
    throw DataInconsistency("kernel_basis: maximal independent subsets disagree in size");

  for (size_t i : chosen) {
    if (!vec_is_zero(d.matvec(S[i])))
      throw DataInconsistency("kernel_basis: vector fails D*y = 0 re-verification");
    kb.vectors.push_back(S[i]);
  }
  kb.kprime = static_cast<uint32_t>(kb.vectors.size());
  return kb;
}

KernelBasis gauss_kernel(const SparseMatrixModP& d, uint64_t budget_cells) {
  if ((uint64_t)d.rows * d.cols > budget_cells)
    throw TooLarge("gauss_kernel: matrix exceeds dense budget");
  PrimeField F(d.p);
  densemod::Echelon ech;
  ech.init(d.cols, d.p);

  // Insert rows one at a time (sparse rows expand on demand).
  size_t k = 0;
  std::vector<uint32_t> row(d.cols, 0);
  while (k < d.v.size()) {
    uint32_t ri = d.r[k];
    std::fill(row.begin(), row.end(), 0);
    while (k < d.v.size() && d.r[k] == ri) {
      row[d.c[k]] = d.v[k];
      k++;
    }
    ech.insert(row);
  }
  KernelBasis kb;
  kb.vectors = ech.kernel();
  kb.kprime = static_cast<uint32_t>(kb.vectors.size());
  kb.k_consensus = kb.kprime;
  for (const auto& y : kb.vectors)
    if (!vec_is_zero(d.matvec(y)))
      throw DataInconsistency("gauss_kernel: kernel vector fails verification");
  return kb;
}

void write_kernel(std::ostream& os, const KernelBasis& kb, uint32_t s, uint32_t p) {
  os << "KERNEL " << s << " " << kb.kprime << " " << p << "\n";
  for (const auto& v : kb.vectors) {
    for (uint32_t i = 0; i < s; i++) os << v[i] << (i + 1 < s ? " " : "");
    os << "\n";
  }
}

KernelBasis read_kernel(std::istream& is, uint32_t& s, uint32_t& p) {
  std::string tag;
  KernelBasis kb;
  if (!(is >> tag >> s >> kb.kprime >> p) || tag != "KERNEL")
    throw CorruptDatabase("KERNEL: bad header");
  kb.vectors.assign(kb.kprime, std::vector<uint32_t>(s));
  for (auto& v : kb.vectors)
    for (auto& x : v)
      if (!(is >> x)) throw CorruptDatabase("KERNEL: truncated");
  kb.k_consensus = kb.kprime;
  return kb;
}

namespace densemod {

void Echelon::init(uint32_t cols_, uint32_t p_) {
  p = p_;
  cols = cols_;
  rows.clear();
  pivot_col.clear();
  col_pivot.assign(cols, -1);
}

bool Echelon::insert(std::vector<uint32_t> x) {
  PrimeField F(p);
  // Lazy-reduction workspace: row values stay below p, so each pivot pass adds
  // less than p^2 per cell; reduce a cell only when the headroom runs out.
  const uint64_t cap = UINT64_MAX - (uint64_t)(p - 1) * (p - 1);
  std::vector<uint64_t> w(x.begin(), x.end());
  for (size_t pi = 0; pi < rows.size(); pi++) {
    uint32_t pc = pivot_col[pi];
    uint64_t f = w[pc] % p;
    if (f == 0) continue;
    uint64_t g = p - f;
    const auto& pr = rows[pi];
    for (uint32_t j = pc; j < cols; j++) {
      if (w[j] > cap) w[j] %= p;
      w[j] += g * pr[j];
    }
    w[pc] = 0;
  }
  int32_t lead = -1;
  for (uint32_t j = 0; j < cols; j++) {
    w[j] %= p;
    if (lead < 0 && w[j]) lead = static_cast<int32_t>(j);
  }
  if (lead < 0) return false;
  uint32_t inv = F.inv(static_cast<uint32_t>(w[lead]));
  std::vector<uint32_t> nr(cols, 0);
  for (uint32_t j = lead; j < cols; j++) nr[j] = F.mul(static_cast<uint32_t>(w[j]), inv);
  col_pivot[lead] = static_cast<int32_t>(rows.size());
  pivot_col.push_back(static_cast<uint32_t>(lead));
  rows.push_back(std::move(nr));
  return true;
}

std::vector<uint32_t> Echelon::residual(std::vector<uint32_t> x) const {
  const uint64_t cap = UINT64_MAX - (uint64_t)(p - 1) * (p - 1);
  std::vector<uint64_t> w(x.begin(), x.end());
  for (size_t pi = 0; pi < rows.size(); pi++) {
    uint32_t pc = pivot_col[pi];
    uint64_t f = w[pc] % p;
    if (f == 0) continue;
    uint64_t g = p - f;
    const auto& pr = rows[pi];
    for (uint32_t j = pc; j < cols; j++) {
      if (w[j] > cap) w[j] %= p;
      w[j] += g * pr[j];
    }
    w[pc] = 0;
  }
  std::vector<uint32_t> out(cols);
  for (uint32_t j = 0; j < cols; j++) out[j] = static_cast<uint32_t>(w[j] % p);
  return out;
}

std::vector<std::vector<uint32_t>> Echelon::kernel() const {
  PrimeField F(p);
  std::vector<std::vector<uint32_t>> basis;
  for (uint32_t f = 0; f < cols; f++) {
    if (col_pivot[f] >= 0) continue;
    std::vector<uint32_t> x(cols, 0);
    x[f] = 1;
    // Pivot rows form an upper-triangular system in insertion order; solve in
    // reverse.
    for (size_t pi = rows.size(); pi-- > 0;) {
      const auto& pr = rows[pi];
      uint32_t pc = pivot_col[pi];
      uint64_t acc = 0;
      const uint64_t cap = UINT64_MAX - (uint64_t)(p - 1) * (p - 1);
      for (uint32_t j = pc + 1; j < cols; j++) {
        if (pr[j] == 0 || x[j] == 0) continue;
        if (acc > cap) acc %= p;
        acc += (uint64_t)pr[j] * x[j];
      }
      x[pc] = F.neg(static_cast<uint32_t>(acc % p));
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<std::vector<uint32_t>> kernel_of_dense(
    const std::vector<std::vector<uint32_t>>& m, uint32_t p) {
  Echelon ech;
  uint32_t cols = m.empty() ? 0 : static_cast<uint32_t>(m[0].size());
  ech.init(cols, p);
  for (const auto& row : m) ech.insert(row);
  return ech.kernel();
}

uint32_t rank_of_dense(const std::vector<std::vector<uint32_t>>& m, uint32_t p) {
  Echelon ech;
  uint32_t cols = m.empty() ? 0 : static_cast<uint32_t>(m[0].size());
  ech.init(cols, p);
  for (const auto& row : m) ech.insert(row);
  return ech.rank();
}

}  // namespace densemod

}  // namespace sl4
