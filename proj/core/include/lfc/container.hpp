#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lfc/picture.hpp"
#include "lfc/reference_graph.hpp"
#include "lfc/scan_plan.hpp"

namespace lfc {

inline constexpr std::array<std::uint8_t, 4> kContainerMagic = {'L', 'F', 'L', 'F'};
inline constexpr std::uint16_t kContainerVersion = 1;

/// Location of one substream inside the container. Offsets count from the
/// first byte of the container.
struct Substream {
  std::uint32_t offset = 0;
  std::uint32_t length = 0;
  std::uint16_t views = 0;
  std::uint32_t crc32 = 0;
  bool operator==(const Substream&) const = default;
};

/// Fixed-size little-endian `.lflf` header; see docs/container.md.
struct ContainerHeader {
  std::uint16_t version = kContainerVersion;
  std::uint16_t rows = 0;
  std::uint16_t cols = 0;
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  std::uint8_t bit_depth = 8;
  ChromaFormat chroma = ChromaFormat::k444;
  ScanKind scan = ScanKind::Proposed;
  RefKind refs = RefKind::Proposed;
  std::uint8_t max_refs = kDefaultMaxRefs;
  std::uint8_t base_qp = 32;
  std::int8_t central_qp_offset = -4;
  ColorSpace color = ColorSpace::YCbCr;
  Substream central;
  std::array<Substream, 4> quadrants;

  bool operator==(const ContainerHeader&) const = default;
};
inline constexpr std::size_t kContainerHeaderSize = 22 + 5 * 14;

std::vector<std::uint8_t> write_container_header(const ContainerHeader& header);

/// Parses and range-checks the header (not the substream CRCs). Short input or
/// a bad magic raises CorruptStream, an unknown version VersionMismatch.
ContainerHeader read_container_header(std::span<const std::uint8_t> bytes);

/// Header + central substream + four quadrant substreams; fills offsets,
/// lengths and CRCs of `header`.
std::vector<std::uint8_t> assemble_container(ContainerHeader header, std::span<const std::uint8_t> central,
                                             const std::array<std::vector<std::uint8_t>, 4>& quadrants);

/// Bytes of a substream after checking bounds and CRC (CorruptStream).
std::span<const std::uint8_t> substream_bytes(std::span<const std::uint8_t> container, const Substream& s);

std::uint32_t crc32(std::span<const std::uint8_t> bytes);

}  // namespace lfc
