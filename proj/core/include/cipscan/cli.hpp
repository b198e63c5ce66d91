#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cipscan::cli {

struct RunConfig {
  std::vector<std::string> roots;
  std::string constraints_path;
  std::string links_path;
  int depth = 3;
  int cap = 25;
  std::uint64_t sample_seed = 0;
  std::string format = "json";  // json | csv | table
  std::string system;
  std::string out_path;
  std::vector<std::string> patterns;
  std::string by = "pattern";  // report axis: pattern | constraint-type
  std::string seed_site;       // slice seed, file:line
  std::string config_path;
};

// Exit codes: 0 success, 1 usage error, 2 fatal input error, 3 analysis
// completed with parse failures.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cipscan::cli
