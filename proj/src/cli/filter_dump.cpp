#include "fgiqa/cli/filter_dump.hpp"

#include <array>
#include <bit>
#include <cstring>

#include "fgiqa/errors.hpp"

namespace fgiqa::cli {
namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw InvalidInput("truncated filter dump");
  }
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
  return value;
}

}  // namespace

void write_filter_dump(std::ostream& out, const LogGaborBank& bank) {
  for (std::size_t s = 0; s < kScales; ++s) {
    for (std::size_t o = 0; o < kOrientations; ++o) {
      out.write("LGBK", 4);
      put_le(out, static_cast<std::uint32_t>(bank.width()));
      put_le(out, static_cast<std::uint32_t>(bank.height()));
      put_le(out, static_cast<std::uint16_t>(s + 1));
      put_le(out, static_cast<std::uint16_t>(o + 1));
      for (double g : bank.gain(s, o).values()) put_le(out, std::bit_cast<std::uint64_t>(g));
    }
  }
}

std::vector<FilterRecord> read_filter_dump(std::istream& in) {
  std::vector<FilterRecord> out;
  char magic[4];
  while (in.read(magic, 4)) {
    if (std::memcmp(magic, "LGBK", 4) != 0) throw InvalidInput("bad filter dump magic");
    FilterRecord r;
    r.width = get_le<std::uint32_t>(in);
    r.height = get_le<std::uint32_t>(in);
    r.scale = get_le<std::uint16_t>(in);
    r.orientation = get_le<std::uint16_t>(in);
    r.gains.resize(static_cast<std::size_t>(r.width) * r.height);
    for (double& g : r.gains) g = std::bit_cast<double>(get_le<std::uint64_t>(in));
    out.push_back(std::move(r));
  }
  if (in.gcount() != 0) throw InvalidInput("truncated filter dump header");
  return out;
}

}  // namespace fgiqa::cli
