#include "lfc/view_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lfc/error.hpp"

namespace lfc {

ViewGrid::ViewGrid(int rows, int cols, std::vector<Picture> views)
    : rows_(rows), cols_(cols), views_(std::move(views)) {
  check(rows > 0 && cols > 0, ErrorCode::InvalidGrid, "grid needs at least one view");
  check(views_.size() == static_cast<std::size_t>(rows) * cols, ErrorCode::MissingView,
        "expected " + std::to_string(rows * cols) + " views, got " + std::to_string(views_.size()));
  const Picture& first = views_.front();
  check(first.bit_depth == 8 || first.bit_depth == 10, ErrorCode::UnsupportedBitDepth,
        "bit depth " + std::to_string(first.bit_depth));
  for (const Picture& v : views_) {
    check(v.width == first.width && v.height == first.height && v.bit_depth == first.bit_depth &&
              v.chroma == first.chroma && v.color == first.color,
          ErrorCode::DimensionMismatch, "views differ in size or format");
    check(v.planes[0].width == v.width && v.planes[0].height == v.height, ErrorCode::DimensionMismatch,
          "luma plane size");
    for (int c = 1; c < 3; ++c) {
      check(v.planes[c].width == chroma_width(v.width, v.chroma) &&
                v.planes[c].height == chroma_height(v.height, v.chroma),
            ErrorCode::DimensionMismatch, "chroma plane size inconsistent with chroma format");
    }
  }
}

ViewGrid select(const ViewGrid& grid, const GridSelection& sel) {
  check(sel.rows > 0 && sel.cols > 0 && sel.row_offset >= 0 && sel.col_offset >= 0 &&
            sel.row_offset + sel.rows <= grid.rows() && sel.col_offset + sel.cols <= grid.cols(),
        ErrorCode::InvalidSelection, "selection does not fit inside the grid");
  std::vector<Picture> views;
  views.reserve(static_cast<std::size_t>(sel.rows) * sel.cols);
  for (int r = 0; r < sel.rows; ++r) {
    for (int c = 0; c < sel.cols; ++c) {
      views.push_back(grid.at(sel.row_offset + r, sel.col_offset + c));
    }
  }
  return ViewGrid(sel.rows, sel.cols, std::move(views));
}

ViewGrid select_center(const ViewGrid& grid, int rows, int cols) {
  check(rows > 0 && cols > 0 && rows <= grid.rows() && cols <= grid.cols(), ErrorCode::InvalidSelection,
        "selection larger than grid");
  check((grid.rows() - rows) % 2 == 0 && (grid.cols() - cols) % 2 == 0, ErrorCode::InvalidSelection,
        "selection parity differs from grid parity");
  return select(grid, {(grid.rows() - rows) / 2, (grid.cols() - cols) / 2, rows, cols});
}

Picture convert_rgb_to_ycbcr(const Picture& rgb) {
  check(rgb.color == ColorSpace::RGB && rgb.chroma == ChromaFormat::k444, ErrorCode::InvalidConfig,
        "input must be RGB 4:4:4");
  check(rgb.bit_depth == 8 || rgb.bit_depth == 10, ErrorCode::UnsupportedBitDepth,
        "bit depth " + std::to_string(rgb.bit_depth));
  constexpr double kr = 0.2126;
  constexpr double kb = 0.0722;
  constexpr double kg = 1.0 - kr - kb;
  const double scale = static_cast<double>(1 << (rgb.bit_depth - 8));
  const double max = rgb.max_value();
  const double y_lo = 16 * scale, y_hi = 235 * scale;
  const double c_lo = 16 * scale, c_hi = 240 * scale;

  Picture out(rgb.width, rgb.height, rgb.bit_depth, ChromaFormat::k444, ColorSpace::YCbCr);
  for (std::size_t i = 0; i < rgb.planes[0].samples.size(); ++i) {
    const double r = rgb.planes[0].samples[i] / max;
    const double g = rgb.planes[1].samples[i] / max;
    const double b = rgb.planes[2].samples[i] / max;
    const double luma = kr * r + kg * g + kb * b;
    const double y = 16 * scale + 219 * scale * luma;
    const double cb = 128 * scale + 224 * scale * (b - luma) / (2 * (1 - kb));
    const double cr = 128 * scale + 224 * scale * (r - luma) / (2 * (1 - kr));
    out.planes[0].samples[i] = static_cast<std::uint16_t>(std::clamp(std::round(y), y_lo, y_hi));
    out.planes[1].samples[i] = static_cast<std::uint16_t>(std::clamp(std::round(cb), c_lo, c_hi));
    out.planes[2].samples[i] = static_cast<std::uint16_t>(std::clamp(std::round(cr), c_lo, c_hi));
  }
  return out;
}

ViewGrid convert_rgb_to_ycbcr(const ViewGrid& grid) {
  std::vector<Picture> views;
  views.reserve(grid.size());
  for (const Picture& v : grid.views()) {
    views.push_back(convert_rgb_to_ycbcr(v));
  }
  return ViewGrid(grid.rows(), grid.cols(), std::move(views));
}

ViewGrid pad_views(const ViewGrid& grid, int target_width, int target_height) {
  check(target_width >= grid.width() && target_height >= grid.height(), ErrorCode::TargetTooSmall,
        "pad target " + std::to_string(target_width) + "x" + std::to_string(target_height) +
            " smaller than " + std::to_string(grid.width()) + "x" + std::to_string(grid.height()));
  std::vector<Picture> views;
  views.reserve(grid.size());
  for (const Picture& v : grid.views()) {
    views.push_back(pad_picture(v, target_width, target_height));
  }
  return ViewGrid(grid.rows(), grid.cols(), std::move(views));
}

namespace {

Plane halve_width(const Plane& src) {
  Plane out((src.width + 1) / 2, src.height);
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      const int a = src.at(2 * x, y);
      const int b = src.clamped(2 * x + 1, y);
      out.at(x, y) = static_cast<std::uint16_t>((a + b + 1) >> 1);
    }
  }
  return out;
}

Plane halve_height(const Plane& src) {
  Plane out(src.width, (src.height + 1) / 2);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < src.width; ++x) {
      const int a = src.at(x, 2 * y);
      const int b = src.clamped(x, 2 * y + 1);
      out.at(x, y) = static_cast<std::uint16_t>((a + b + 1) >> 1);
    }
  }
  return out;
}

}  // namespace

Picture subsample_chroma(const Picture& pic, ChromaFormat format) {
  check(pic.chroma == ChromaFormat::k444, ErrorCode::InvalidConfig, "chroma subsampling expects 4:4:4 input");
  if (format == ChromaFormat::k444) {
    return pic;
  }
  Picture out = pic;
  out.chroma = format;
  for (int c = 1; c < 3; ++c) {
    Plane p = halve_width(pic.planes[c]);
    if (format == ChromaFormat::k420) {
      p = halve_height(p);
    }
    out.planes[c] = std::move(p);
  }
  return out;
}

ViewGrid subsample_chroma(const ViewGrid& grid, ChromaFormat format) {
  std::vector<Picture> views;
  views.reserve(grid.size());
  for (const Picture& v : grid.views()) {
    views.push_back(subsample_chroma(v, format));
  }
  return ViewGrid(grid.rows(), grid.cols(), std::move(views));
}

}  // namespace lfc
