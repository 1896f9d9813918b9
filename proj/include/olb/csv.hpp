#pragma once

#include "olb/core.hpp"

#include <fstream>
#include <string>
#include <vector>

namespace olb {

// shortest representation that round-trips a double exactly
std::string fmt_real(Real v);
std::string fmt_int(long long v);

// CSV with '#' comment lines up front carrying the resolved configuration;
// no timestamps or machine identifiers, so identical runs produce identical
// bytes.
struct Csv {
  std::ofstream out;

  explicit Csv(const std::string& path);
  void comment(const std::string& line);
  void row(const std::vector<std::string>& cells);
  void close();
};

} // namespace olb
