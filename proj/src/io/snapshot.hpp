#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spectral/field.hpp"

namespace vvv::io {

/// Binary field file, little-endian throughout:
///   "VVVF" | version u32 | n u32 | field_count u8 | alpha f64 | nu f64 | t f64
///   | order u8 | cutoff u32 | retained u32 | tags u8[field_count]
///   | field_count * retained * (re f64, im f64)
/// Each field is one scalar component in the grid's retained-mode order.
inline constexpr std::uint32_t kSnapshotVersion = 1;

enum class FieldTag : std::uint8_t { u1 = 0, u2 = 1, u3 = 2, w1 = 3, w2 = 4, w3 = 5 };
const char* to_string(FieldTag t);

/// 0: lexicographic over (k1, k2, k3), each in 0..c, -c..-1.
inline constexpr std::uint8_t kOrderLexicographicWrap = 0;

struct SnapshotHeader {
  std::uint32_t version = kSnapshotVersion;
  std::uint32_t n = 0;
  double alpha = 0.0;
  double nu = 0.0;
  double t = 0.0;
  std::uint8_t order = kOrderLexicographicWrap;
  std::uint32_t cutoff = 0;
  std::uint32_t retained = 0;
  std::vector<FieldTag> tags;
};

struct Snapshot {
  double alpha = 0.0;
  double nu = 0.0;
  double t = 0.0;
  spectral::VectorField u;
  /// Absent for NSE states.
  std::optional<spectral::VectorField> w;
};

void write_snapshot(const Snapshot& s, const std::filesystem::path& path);

/// Header only; validates magic, version and descriptor consistency.
SnapshotHeader read_snapshot_header(const std::filesystem::path& path);

/// Full read. With `grid` set, a different n raises GridMismatchError;
/// otherwise a grid is built from the header. Throws FormatError on bad
/// magic, version or truncated payload, IoError when unreadable.
Snapshot read_snapshot(const std::filesystem::path& path, spectral::GridPtr grid = nullptr);

/// Readable multi-line description of a header.
std::string describe(const SnapshotHeader& h);

}  // namespace vvv::io
