#include "lfc/depth_predictor.hpp"

#include <algorithm>

#include "lfc/error.hpp"

namespace lfc {

CtuDepthPrediction predict(std::span<const DepthMap* const> colocated, int ctu_x, int ctu_y, int picture_width,
                           int picture_height) {
  CtuDepthPrediction out;
  const int x0 = ctu_x * kCtuSize;
  const int y0 = ctu_y * kCtuSize;
  const bool boundary = x0 + kCtuSize > picture_width || y0 + kCtuSize > picture_height;
  if (colocated.empty() || boundary) {
    return out;
  }
  for (int cy = 0; cy < kCellsPerCtu; ++cy) {
    for (int cx = 0; cx < kCellsPerCtu; ++cx) {
      int lo = 4;
      int hi = 0;
      for (const DepthMap* map : colocated) {
        const int d = map->adjusted(ctu_x * kCellsPerCtu + cx, ctu_y * kCellsPerCtu + cy);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
      out.cells[static_cast<std::size_t>(cy) * kCellsPerCtu + cx] = {std::min(lo, kMaxDepth), std::min(hi, kMaxDepth)};
    }
  }
  return out;
}

DepthPrediction::DepthPrediction(std::span<const DepthMap* const> colocated, int picture_width, int picture_height)
    : ctus_w_((picture_width + kCtuSize - 1) / kCtuSize), ctus_h_((picture_height + kCtuSize - 1) / kCtuSize) {
  for (const DepthMap* map : colocated) {
    check(map != nullptr && map->cells_wide() * kMinCuSize >= picture_width &&
              map->cells_high() * kMinCuSize >= picture_height,
          ErrorCode::DimensionMismatch, "co-located depth map does not cover the picture");
  }
  ctus_.reserve(static_cast<std::size_t>(ctus_w_) * ctus_h_);
  for (int ty = 0; ty < ctus_h_; ++ty) {
    for (int tx = 0; tx < ctus_w_; ++tx) {
      ctus_.push_back(predict(colocated, tx, ty, picture_width, picture_height));
    }
  }
}

DepthRange DepthPrediction::range_for(int ctu_x, int ctu_y, int x, int y, int size) const {
  if (ctus_.empty()) {
    return kFullDepthRange;
  }
  const CtuDepthPrediction& ctu_pred = ctu(ctu_x, ctu_y);
  DepthRange r{kMaxDepth, 0};
  const int n = size / kMinCuSize;
  for (int cy = y / kMinCuSize; cy < y / kMinCuSize + n; ++cy) {
    for (int cx = x / kMinCuSize; cx < x / kMinCuSize + n; ++cx) {
      const DepthRange& c = ctu_pred.cell(cx, cy);
      r.min = std::min(r.min, c.min);
      r.max = std::max(r.max, c.max);
    }
  }
  return r;
}

PuModeSet allowed_modes(const DepthRange& range, int depth) {
  if (depth > range.max) return {};
  if (depth < range.min) return PuModeSet::only(PuMode::Part2Nx2N);
  return PuModeSet::all();
}

std::array<double, kNumPuModes> pu_histogram(std::span<const DepthMap> maps) {
  std::array<std::uint64_t, kNumPuModes> counts{};
  for (const DepthMap& m : maps) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += m.pu_counts()[i];
  }
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  std::array<double, kNumPuModes> out{};
  if (total == 0) return out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return out;
}

}  // namespace lfc
