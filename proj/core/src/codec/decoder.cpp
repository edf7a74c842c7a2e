#include <string>

#include "lfc/codec/range_coder.hpp"
#include "lfc/codec/view_codec.hpp"
#include "lfc/error.hpp"
#include "reconstruct.hpp"
#include "syntax.hpp"

namespace lfc {

SegmentHeader parse_segment_header(std::span<const std::uint8_t> segment) {
  check(segment.size() >= kSegmentHeaderSize, ErrorCode::CorruptStream, "segment shorter than its header");
  SegmentHeader h;
  h.coding_index = static_cast<std::uint16_t>(segment[0] | (segment[1] << 8));
  h.qp = segment[2];
  for (int i = 0; i < 4; ++i) h.payload_size |= static_cast<std::uint32_t>(segment[3 + i]) << (8 * i);
  check(h.qp <= kMaxQp, ErrorCode::CorruptStream, "qp out of range");
  check(segment.size() - kSegmentHeaderSize == h.payload_size, ErrorCode::CorruptStream,
        "segment length does not match its header");
  return h;
}

namespace {

class ViewDecoder {
public:
  ViewDecoder(const SegmentHeader& header, std::span<const std::uint8_t> payload, const ViewFormat& fmt,
              std::span<const Picture* const> refs)
      : header_(header),
        dec_(payload),
        fmt_(fmt),
        padded_w_(detail::align8(fmt.width)),
        padded_h_(detail::align8(fmt.height)),
        recon_(padded_w_, padded_h_, fmt.bit_depth, fmt.chroma, ColorSpace::YCbCr),
        refs_(refs),
        depth_(fmt.width, fmt.height) {}

  DecodedView run() {
    const auto num_refs = static_cast<std::size_t>(dec_.decode_bypass_bits(3));
    if (num_refs != refs_.size()) {
      fail(ErrorCode::RefMismatch, "segment coded with " + std::to_string(num_refs) + " references, got " +
                                       std::to_string(refs_.size()));
    }
    for (int cy = 0; cy < padded_h_; cy += kCtuSize) {
      for (int cx = 0; cx < padded_w_; cx += kCtuSize) parse_node(cx, cy, 0);
    }
    return {header_, crop_picture(recon_, fmt_.width, fmt_.height), std::move(depth_)};
  }

private:
  void parse_node(int x, int y, int depth) {
    const int size = cu_size(depth);
    const int half = size / 2;
    const bool inside = x + size <= padded_w_ && y + size <= padded_h_;
    bool split = !inside;
    if (inside && depth < kMaxDepth) split = detail::read_split(dec_, ctx_, depth);
    if (split) {
      for (int i = 0; i < 4; ++i) {
        const int xx = x + (i & 1) * half, yy = y + (i >> 1) * half;
        if (xx < padded_w_ && yy < padded_h_) parse_node(xx, yy, depth + 1);
      }
      return;
    }

    detail::CuPayload p;
    p.cu.x = x;
    p.cu.y = y;
    p.cu.depth = depth;
    for (int comp = 0; comp < 3; ++comp) {
      const detail::BlockGeom g = detail::component_block(p.cu, comp, fmt_.chroma);
      p.tu_w[static_cast<std::size_t>(comp)] = g.w;
      p.tu_h[static_cast<std::size_t>(comp)] = g.h;
    }
    detail::read_cu(dec_, ctx_, p, !refs_.empty(), static_cast<int>(refs_.size()));
    std::vector<std::int32_t> pred;
    for (int comp = 0; comp < 3; ++comp) {
      const auto k = static_cast<std::size_t>(comp);
      detail::predict_component(p.cu, comp, recon_, refs_, pred);
      detail::reconstruct_block(recon_.planes[k], detail::component_block(p.cu, comp, fmt_.chroma), pred,
                                p.levels[k], p.cbf[k], header_.qp, recon_.max_value());
    }
    depth_.record(p.cu);
  }

  SegmentHeader header_;
  RangeDecoder dec_;
  ViewFormat fmt_;
  int padded_w_;
  int padded_h_;
  Picture recon_;
  std::span<const Picture* const> refs_;
  DepthMap depth_;
  detail::ContextSet ctx_;
};

}  // namespace

DecodedView decode_view(std::span<const std::uint8_t> segment, const ViewFormat& format,
                        std::span<const Picture* const> refs) {
  check(format.width > 0 && format.height > 0, ErrorCode::InvalidConfig, "empty view format");
  check(format.bit_depth == 8 || format.bit_depth == 10, ErrorCode::UnsupportedBitDepth, "bit depth must be 8 or 10");
  const SegmentHeader header = parse_segment_header(segment);
  for (const Picture* ref : refs) {
    check(ref != nullptr && ViewFormat::of(*ref) == format, ErrorCode::DimensionMismatch,
          "reference format differs from the view");
  }
  ViewDecoder dec(header, segment.subspan(kSegmentHeaderSize), format, refs);
  return dec.run();
}

}  // namespace lfc
