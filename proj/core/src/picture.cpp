#include "lfc/picture.hpp"

#include <algorithm>
#include <string>

#include "lfc/error.hpp"

namespace lfc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingView: return "MissingView";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnsupportedBitDepth: return "UnsupportedBitDepth";
    case ErrorCode::InvalidSelection: return "InvalidSelection";
    case ErrorCode::TargetTooSmall: return "TargetTooSmall";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::CorruptStream: return "CorruptStream";
    case ErrorCode::RefMismatch: return "RefMismatch";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::NoOverlap: return "NoOverlap";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

std::string_view to_string(ChromaFormat fmt) noexcept {
  switch (fmt) {
    case ChromaFormat::k444: return "444";
    case ChromaFormat::k422: return "422";
    case ChromaFormat::k420: return "420";
  }
  return "?";
}

ChromaFormat parse_chroma_format(std::string_view text) {
  if (text == "444") return ChromaFormat::k444;
  if (text == "422") return ChromaFormat::k422;
  if (text == "420") return ChromaFormat::k420;
  fail(ErrorCode::InvalidConfig, "unknown chroma format '" + std::string(text) + "'");
}

Picture::Picture(int w, int h, int depth, ChromaFormat fmt, ColorSpace space)
    : width(w), height(h), bit_depth(depth), chroma(fmt), color(space) {
  const std::uint16_t mid = static_cast<std::uint16_t>(1 << (depth - 1));
  planes[0] = Plane(w, h, space == ColorSpace::YCbCr ? mid : 0);
  const int cw = chroma_width(w, fmt);
  const int ch = chroma_height(h, fmt);
  planes[1] = Plane(cw, ch, mid);
  planes[2] = Plane(cw, ch, mid);
}

namespace {

Plane pad_plane(const Plane& src, int w, int h) {
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out.at(x, y) = src.clamped(x, y);
    }
  }
  return out;
}

Plane crop_plane(const Plane& src, int w, int h) {
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    std::copy_n(src.row(y).begin(), w, out.row(y).begin());
  }
  return out;
}

}  // namespace

Picture pad_picture(const Picture& pic, int width, int height) {
  Picture out = pic;
  out.width = width;
  out.height = height;
  out.planes[0] = pad_plane(pic.planes[0], width, height);
  for (int c = 1; c < 3; ++c) {
    out.planes[c] = pad_plane(pic.planes[c], chroma_width(width, pic.chroma),
                              chroma_height(height, pic.chroma));
  }
  return out;
}

Picture crop_picture(const Picture& pic, int width, int height) {
  Picture out = pic;
  out.width = width;
  out.height = height;
  out.planes[0] = crop_plane(pic.planes[0], width, height);
  for (int c = 1; c < 3; ++c) {
    out.planes[c] = crop_plane(pic.planes[c], chroma_width(width, pic.chroma),
                               chroma_height(height, pic.chroma));
  }
  return out;
}

}  // namespace lfc
