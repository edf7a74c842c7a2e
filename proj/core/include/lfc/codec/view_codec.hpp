#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lfc/codec/coding_unit.hpp"
#include "lfc/depth_predictor.hpp"
#include "lfc/picture.hpp"

namespace lfc {

inline constexpr int kMaxQp = 51;
inline constexpr int kMaxRefsPerView = 7;
inline constexpr int kDefaultSearchRange = 8;

struct ViewFormat {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  ChromaFormat chroma = ChromaFormat::k444;

  static ViewFormat of(const Picture& pic) { return {pic.width, pic.height, pic.bit_depth, pic.chroma}; }
  bool operator==(const ViewFormat&) const = default;
};

struct RdoConfig {
  int qp = 32;
  double lambda = 0.0;
  int search_range = kDefaultSearchRange;

  static RdoConfig for_qp(int qp, int search_range = kDefaultSearchRange);
};

/// Segment layout: coding_index u16, qp u8, payload length u32 (little
/// endian), then the range-coded payload including its terminator.
struct SegmentHeader {
  std::uint16_t coding_index = 0;
  std::uint8_t qp = 0;
  std::uint32_t payload_size = 0;
};
inline constexpr std::size_t kSegmentHeaderSize = 7;

SegmentHeader parse_segment_header(std::span<const std::uint8_t> segment);

struct EncodeStats {
  std::uint64_t nodes = 0;           // quadtree nodes visited
  std::uint64_t rd_evaluations = 0;  // full RD checks of a CU candidate
  std::uint64_t cus = 0;
};

struct EncodedView {
  std::vector<std::uint8_t> segment;
  Picture recon;
  DepthMap depth;
  std::vector<CodingUnit> cus;  // coding order
  EncodeStats stats;
};

/// Encodes one view against up to kMaxRefsPerView reconstructed references
/// (intra only when refs is empty). With a depth prediction the CU search is
/// restricted as described by allowed_modes(); the bitstream syntax is the same.
EncodedView encode_view(const Picture& view, std::span<const Picture* const> refs, const RdoConfig& config,
                        const DepthPrediction* prediction = nullptr, int coding_index = 0);

struct DecodedView {
  SegmentHeader header;
  Picture recon;
  DepthMap depth;
};

/// Throws CorruptStream on malformed data and RefMismatch when the number of
/// references differs from what the segment was coded with.
DecodedView decode_view(std::span<const std::uint8_t> segment, const ViewFormat& format,
                        std::span<const Picture* const> refs);

}  // namespace lfc
