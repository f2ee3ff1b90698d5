#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "fgiqa/texture.hpp"

namespace fgiqa::cli {

// One record per filter, scale-major:
//   "LGBK" | u32 width | u32 height | u16 scale (1-based) | u16 orientation (1-based)
//   followed by width*height f64 gains, row-major. All fields little-endian.
struct FilterRecord {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint16_t scale = 0;
  std::uint16_t orientation = 0;
  std::vector<double> gains;
};

void write_filter_dump(std::ostream& out, const LogGaborBank& bank);
std::vector<FilterRecord> read_filter_dump(std::istream& in);

}  // namespace fgiqa::cli
