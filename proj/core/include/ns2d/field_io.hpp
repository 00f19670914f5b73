/// @file field_io.hpp
/// @brief Binary and CSV serialisation of fields.
///
/// Binary layout: int64 n, float64 half width, then n*n float64 values in
/// row-major order, all little-endian.
#pragma once

#include <filesystem>

#include "ns2d/field.hpp"

namespace ns2d {

/// Raised on unreadable, truncated or malformed files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_binary(const std::filesystem::path& path, const RealField& w);
RealField read_binary(const std::filesystem::path& path);

/// Columns xi1, xi2, value.
void write_csv(const std::filesystem::path& path, const RealField& w);
/// Columns xi1, xi2, v1, v2.
void write_csv(const std::filesystem::path& path, const VectorField& v);

}  // namespace ns2d
