#include "olb/csv.hpp"

#include <cstdio>

namespace olb {

std::string fmt_real(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_int(long long v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld", v);
  return buf;
}

Csv::Csv(const std::string& path) : out(path) {
  if (!out) throw Error("cannot write " + path);
}

void Csv::comment(const std::string& line) { out << "# " << line << "\n"; }

void Csv::row(const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ",";
    out << cells[i];
  }
  out << "\n";
}

void Csv::close() {
  out.flush();
  if (!out) throw Error("csv write failed");
  out.close();
}

} // namespace olb
