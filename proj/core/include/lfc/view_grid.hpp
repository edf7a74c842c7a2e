#pragma once

#include <filesystem>
#include <vector>

#include "lfc/picture.hpp"

namespace lfc {

/// Grid position of a view: (row, col) = (u, v) of the two-plane ray
/// parameterisation; pixel coordinates inside a view are (r, s).
struct GridPos {
  int row = 0;
  int col = 0;
  bool operator==(const GridPos&) const = default;
};

/// A light field as a rows x cols grid of equally sized views, row-major.
class ViewGrid {
public:
  ViewGrid() = default;
  ViewGrid(int rows, int cols, std::vector<Picture> views);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int width() const { return views_.empty() ? 0 : views_.front().width; }
  int height() const { return views_.empty() ? 0 : views_.front().height; }
  int bit_depth() const { return views_.empty() ? 0 : views_.front().bit_depth; }
  ChromaFormat chroma() const { return views_.empty() ? ChromaFormat::k444 : views_.front().chroma; }
  ColorSpace color() const { return views_.empty() ? ColorSpace::YCbCr : views_.front().color; }
  std::size_t size() const { return views_.size(); }

  const Picture& at(int row, int col) const { return views_[index(row, col)]; }
  const Picture& at(GridPos p) const { return at(p.row, p.col); }
  const std::vector<Picture>& views() const { return views_; }

  GridPos center() const { return {(rows_ - 1) / 2, (cols_ - 1) / 2}; }

  bool operator==(const ViewGrid&) const = default;

private:
  std::size_t index(int row, int col) const { return static_cast<std::size_t>(row) * cols_ + col; }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Picture> views_;
};

struct GridSelection {
  int row_offset = 0;
  int col_offset = 0;
  int rows = 0;
  int cols = 0;
};

/// Sub-grid extraction; the selection must fit inside the grid.
ViewGrid select(const ViewGrid& grid, const GridSelection& sel);

/// Centered rows x cols sub-grid. Throws InvalidSelection when larger than the
/// grid or when the parity differs (centering would be inexact).
ViewGrid select_center(const ViewGrid& grid, int rows, int cols);

/// BT.709 RGB -> limited-range YCbCr 4:4:4, round half away from zero.
ViewGrid convert_rgb_to_ycbcr(const ViewGrid& grid);
Picture convert_rgb_to_ycbcr(const Picture& rgb);

/// Right/bottom edge-replication padding of every view.
ViewGrid pad_views(const ViewGrid& grid, int target_width, int target_height);

/// 4:4:4 -> 4:2:2 (2-tap horizontal mean) or 4:2:0 (plus 2-tap vertical mean).
ViewGrid subsample_chroma(const ViewGrid& grid, ChromaFormat format);
Picture subsample_chroma(const Picture& pic, ChromaFormat format);

/// Manifest: one `row col filename` line per view (0-indexed, row-major).
/// `#` lines are comments; `# yuv width=W height=H bitdepth=B chroma=F` declares
/// the geometry of raw planar .yuv views. PPM (P6, maxval 255/1023/65535) views
/// load as RGB.
ViewGrid load_grid(const std::filesystem::path& manifest_path);

/// Writes views plus a manifest; RGB grids as PPM, YCbCr grids as planar .yuv.
void store_grid(const ViewGrid& grid, const std::filesystem::path& directory,
                const std::filesystem::path& manifest_name = "manifest.txt");

Picture read_ppm(const std::filesystem::path& path);
void write_ppm(const Picture& pic, const std::filesystem::path& path);

/// Raw planar YUV, little-endian 16-bit samples when bit_depth > 8.
Picture read_yuv(const std::filesystem::path& path, int width, int height, int bit_depth,
                 ChromaFormat chroma);
void write_yuv(const Picture& pic, const std::filesystem::path& path);

}  // namespace lfc
