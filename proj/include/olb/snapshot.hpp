#pragma once

#include "olb/model.hpp"

#include <string>
#include <vector>

namespace olb {

// Binary field container, little-endian throughout:
//
//   bytes  0..7   magic "OLBXFLD1"
//   u32            d
//   u32            N
//   f64            L
//   u32            field count
//   per field:
//     u32          name length, then that many bytes of name
//     u32          rank (0 scalar, 1 vector, 2 sym, 3 tensor)
//     u32          component count (must match rank and d)
//     per component: N^d complex coefficients as (re, im) f64 pairs in
//                    flat row-major mode order, axis 0 slowest
//
// Readers throw ParseError carrying the byte offset of the defect.
struct NamedField {
  std::string name;
  SpectralField f;
};

void write_snapshot(const std::string& path, const Grid& g,
                    const std::vector<NamedField>& fields);
std::vector<NamedField> read_snapshot(const std::string& path, Grid* g_out = nullptr);

// state containers hold exactly the fields "a", "u", "tau"
void write_state_snapshot(const std::string& path, const State& s);
State read_state_snapshot(const std::string& path);

} // namespace olb
