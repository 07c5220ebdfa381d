#pragma once

#include <cstdint>
#include <string>

namespace sl4 {

struct RunConfig {
  int64_t level = 11;
  uint32_t modulus = 31991;
  std::string solver = "gauss";  // gauss | lanczos | both
  uint64_t seed = 1;
  int threads = 1;
  uint64_t reduction_budget = 400000;  // subdivision moves per operator application
  uint32_t lanczos_max_runs = 80;
  uint32_t lanczos_surplus = 10;
  uint64_t gauss_budget_cells = 400000000ull;
  std::string celldb_path = "out/celldb.txt";
  std::string spool_dir = "out";
  std::string output_dir = "out";

  std::string canonical_string() const;
  void load_file(const std::string& path);  // key = value lines
  void validate() const;
};

}  // namespace sl4
