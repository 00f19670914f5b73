#include "ns2d/field_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>

namespace ns2d {

namespace {

template <class T>
std::array<char, 8> to_le(T value) {
  static_assert(sizeof(T) == 8);
  auto bits = std::bit_cast<std::uint64_t>(value);
  std::array<char, 8> out{};
  for (int i = 0; i < 8; ++i) out[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  return out;
}

template <class T>
T from_le(const char* bytes) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i])) << (8 * i);
  return std::bit_cast<T>(bits);
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

void write_binary(const std::filesystem::path& path, const RealField& w) {
  auto out = open_out(path, std::ios::binary);
  const auto header_n = to_le(static_cast<std::int64_t>(w.grid().n()));
  const auto header_l = to_le(w.grid().half_width());
  out.write(header_n.data(), 8);
  out.write(header_l.data(), 8);
  std::vector<char> buffer(w.values().size() * 8);
  for (std::size_t i = 0; i < w.values().size(); ++i) {
    const auto b = to_le(w.values()[i]);
    std::memcpy(buffer.data() + 8 * i, b.data(), 8);
  }
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

RealField read_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::array<char, 16> header{};
  if (!in.read(header.data(), 16)) throw IoError("truncated header in " + path.string());
  const auto n = from_le<std::int64_t>(header.data());
  const auto half_width = from_le<double>(header.data() + 8);
  if (n < 8 || n > (1 << 15) || n % 2 != 0 || !std::isfinite(half_width) || half_width <= 0.0) {
    throw IoError("malformed header in " + path.string());
  }
  const Grid grid(static_cast<int>(n), half_width);
  std::vector<char> buffer(grid.size() * 8);
  if (!in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()))) {
    throw IoError("truncated data in " + path.string());
  }
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = from_le<double>(buffer.data() + 8 * i);
  return RealField(grid, std::move(values));
}

void write_csv(const std::filesystem::path& path, const RealField& w) {
  auto out = open_out(path, std::ios::out);
  out << "xi1,xi2,value\n" << std::setprecision(17);
  const Grid& g = w.grid();
  for (int i1 = 0; i1 < g.n(); ++i1) {
    for (int i2 = 0; i2 < g.n(); ++i2) out << g.coord(i1) << ',' << g.coord(i2) << ',' << w(i1, i2) << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

void write_csv(const std::filesystem::path& path, const VectorField& v) {
  auto out = open_out(path, std::ios::out);
  out << "xi1,xi2,v1,v2\n" << std::setprecision(17);
  const Grid& g = v.grid();
  for (int i1 = 0; i1 < g.n(); ++i1) {
    for (int i2 = 0; i2 < g.n(); ++i2) {
      out << g.coord(i1) << ',' << g.coord(i2) << ',' << v.v1(i1, i2) << ',' << v.v2(i1, i2) << '\n';
    }
  }
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace ns2d
