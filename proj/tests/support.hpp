#ifndef FISTAB_TESTS_SUPPORT_HPP
#define FISTAB_TESTS_SUPPORT_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "fistab/fistab.hpp"

namespace fistab::testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const JobConfig& fixtures() {
  static const JobConfig cfg = parse_config(read_file(std::string(FISTAB_CONFIG_DIR) + "/fixtures.conf"));
  return cfg;
}

inline Workspace& workspace() {
  static Workspace ws(fixtures());
  return ws;
}

inline std::shared_ptr<const FISet> subsets(int r) {
  return std::make_shared<const FISet>(FISetSpec{{{r, PermutationGroup::symmetric(r), "s"}}, {}});
}

}  // namespace fistab::testing

#endif  // FISTAB_TESTS_SUPPORT_HPP
