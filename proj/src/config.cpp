#include "config.h"

#include <fstream>
#include <sstream>

#include "arith.h"

namespace sl4 {

std::string RunConfig::canonical_string() const {
  std::ostringstream os;
  os << "level=" << level << ";p=" << modulus << ";solver=" << solver << ";seed=" << seed
     << ";threads=" << threads << ";reduction_budget=" << reduction_budget
     << ";lanczos_max_runs=" << lanczos_max_runs << ";lanczos_surplus=" << lanczos_surplus
     << ";gauss_budget=" << gauss_budget_cells;
  return os.str();
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ResourceError("config: cannot open " + path);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "level") level = std::stoll(val);
    else if (key == "modulus") modulus = static_cast<uint32_t>(std::stoul(val));
    else if (key == "solver") solver = val;
    else if (key == "seed") seed = std::stoull(val);
    else if (key == "threads") threads = std::stoi(val);
    else if (key == "reduction_budget") reduction_budget = std::stoull(val);
    else if (key == "lanczos_max_runs") lanczos_max_runs = static_cast<uint32_t>(std::stoul(val));
    else if (key == "lanczos_surplus") lanczos_surplus = static_cast<uint32_t>(std::stoul(val));
    else if (key == "gauss_budget") gauss_budget_cells = std::stoull(val);
    else if (key == "celldb_path") celldb_path = val;
    else if (key == "spool_dir") spool_dir = val;
    else if (key == "output_dir") output_dir = val;
    else throw InvariantError("config: unknown key " + key);
  }
}

void RunConfig::validate() const {
  if (level <= 1) throw InvalidLevel("config: level must exceed 1");
  if (!is_prime_u32(modulus)) throw InvariantError("config: modulus must be prime");
  if (solver != "gauss" && solver != "lanczos" && solver != "both")
    throw InvariantError("config: solver must be gauss, lanczos or both");
  // The field must not kill the torsion averaging (stabilizer orders all
  // divide the order of the largest cell stabilizer).
  for (uint32_t q : {2u, 3u, 5u}) {
    if (modulus == q)
      throw InvariantError("config: modulus divides small stabilizer orders");
  }
}

}  // namespace sl4
