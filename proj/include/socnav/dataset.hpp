#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "socnav/digest.hpp"
#include "socnav/episode.hpp"

namespace socnav {

// OSGD layout, little-endian:
//   0  magic "OSGD"          4 bytes
//   4  version               u32
//   8  grid_rows             u32
//  12  grid_cols             u32
//  16  sample_count          u64
//  24  config_digest         32 bytes (SHA-256 of the canonical config text)
//  56  payload: sample_count grids, row-major, one byte per cell in {0, 1}
inline constexpr std::array<char, 4> kGridDatasetMagic{'O', 'S', 'G', 'D'};
inline constexpr std::uint32_t kGridDatasetVersion = 1;
inline constexpr std::size_t kGridDatasetHeaderSize = 56;

struct GridDatasetHeader {
  std::uint32_t version = kGridDatasetVersion;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::uint64_t sample_count = 0;
  Sha256 config_digest{};

  std::size_t grid_bytes() const { return static_cast<std::size_t>(rows) * cols; }
  std::array<std::uint8_t, kGridDatasetHeaderSize> encode() const;
  /// Throws DatasetError on bad magic or unknown version.
  static GridDatasetHeader decode(std::span<const std::uint8_t, kGridDatasetHeaderSize> bytes);
  bool operator==(const GridDatasetHeader&) const = default;
};

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Sha256 config_digest(const ScenarioConfig& config);

/// Writes `n_samples` LEOG grids gathered by random-policy episodes
/// (auto-resetting) to `sink`, header first. The grid after every reset and
/// every step is one sample. Deterministic in (config, seed).
///
/// Throws DatasetError if the LEOG modality is disabled, n_samples is 0, or
/// the sink fails; in the last case the message reports how many samples
/// made it out, and the sink holds a partial file.
std::uint64_t collect(const ScenarioConfig& config, std::uint64_t n_samples, std::uint64_t seed,
                      std::ostream& sink);

/// Streaming reader holding at most one grid in memory.
class GridDatasetReader {
 public:
  /// Reads and validates the header. When the stream is seekable the payload
  /// length is checked up front.
  explicit GridDatasetReader(std::istream& source);

  const GridDatasetHeader& header() const { return header_; }
  std::uint64_t remaining() const { return header_.sample_count - consumed_; }

  /// Fills `grid` with the next sample; returns false once all samples were
  /// read. Throws DatasetError("truncated dataset") on a short payload,
  /// without yielding the partial grid.
  bool next(std::vector<std::uint8_t>& grid);

 private:
  std::istream& source_;
  GridDatasetHeader header_;
  std::uint64_t consumed_ = 0;
};

}  // namespace socnav
