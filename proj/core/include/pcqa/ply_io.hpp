// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCQA_PLY_IO_HPP
#define PCQA_PLY_IO_HPP

#include "pcqa/error.hpp"
#include "pcqa/point_cloud.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace pcqa {

enum class PlyFormat { Ascii, BinaryLittleEndian };

/// Parse failure with the position it was detected at. `line` is 1-based and
/// meaningful for the header and ASCII bodies; `byte_offset` counts from the
/// start of the stream.
class PlyError : public Error {
 public:
  PlyError(const std::string& message, std::uint64_t byte_offset, std::uint64_t line);

  std::uint64_t byte_offset() const noexcept { return byte_offset_; }
  std::uint64_t line() const noexcept { return line_; }
  /// The message without the "PLY:" prefix and location suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::uint64_t byte_offset_;
  std::uint64_t line_;
};

/// Reads the vertex element of a PLY stream (ascii 1.0 or
/// binary_little_endian 1.0). x, y, z are required; nx, ny, nz become
/// normals (renormalized to unit length) when all three are present. Other
/// vertex properties and other elements are skipped. Property types accepted:
/// float/float32, double/float64, uchar/uint8, int/int32. List properties
/// are only tolerated on non-vertex elements. bit_depth is left unset.
PointCloud read_ply(std::istream& in);
PointCloud read_ply(const std::filesystem::path& path);

/// Writes x, y, z as double (and nx, ny, nz when normals are present).
/// ASCII output uses the shortest representation that round-trips exactly.
void write_ply(std::ostream& out, const PointCloud& cloud, PlyFormat format = PlyFormat::BinaryLittleEndian);
void write_ply(const std::filesystem::path& path, const PointCloud& cloud, PlyFormat format = PlyFormat::BinaryLittleEndian);

}  // namespace pcqa

#endif  // PCQA_PLY_IO_HPP
