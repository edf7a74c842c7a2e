#pragma once

#include <array>
#include <span>
#include <vector>

#include "lfc/codec/coding_unit.hpp"

namespace lfc {

/// Depth search interval for one 8x8 cell.
struct DepthRange {
  int min = 0;
  int max = kMaxDepth;
  bool operator==(const DepthRange&) const = default;
};

inline constexpr DepthRange kFullDepthRange{0, kMaxDepth};

/// d for 2Nx2N, d + 1 for every other partition mode.
constexpr int adjusted_depth(int depth, PuMode mode) {
  return mode == PuMode::Part2Nx2N ? depth : depth + 1;
}
inline int adjusted_depth(const CodingUnit& cu) { return adjusted_depth(cu.depth, cu.pu_mode); }

/// Small set of PU modes.
class PuModeSet {
public:
  constexpr PuModeSet() = default;
  static constexpr PuModeSet all() { return PuModeSet(0xFF); }
  static constexpr PuModeSet only(PuMode m) { return PuModeSet(static_cast<std::uint8_t>(1u << static_cast<int>(m))); }

  constexpr bool contains(PuMode m) const { return (bits_ >> static_cast<int>(m)) & 1u; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool operator==(const PuModeSet&) const = default;

private:
  explicit constexpr PuModeSet(std::uint8_t bits) : bits_(bits) {}
  std::uint8_t bits_ = 0;
};

/// Per-CTU prediction: one range per 8x8 cell, row-major.
struct CtuDepthPrediction {
  std::array<DepthRange, kCellsPerCtu * kCellsPerCtu> cells;
  /// Below depth_min only 2Nx2N is searched (never switched off).
  static constexpr bool restrict_pu_below_min = true;

  CtuDepthPrediction() { cells.fill(kFullDepthRange); }
  const DepthRange& cell(int cx, int cy) const { return cells[static_cast<std::size_t>(cy) * kCellsPerCtu + cx]; }
};

/// Per-cell ranges: depth_min / depth_max are the min / max adjusted depth of
/// the co-located cells, clamped to [0, 3]. Without co-located maps, or for a
/// CTU that is cut by the picture border, every cell gets [0, 3].
CtuDepthPrediction predict(std::span<const DepthMap* const> colocated, int ctu_x, int ctu_y, int picture_width,
                           int picture_height);

/// Picture-wide prediction assembled CTU by CTU.
class DepthPrediction {
public:
  DepthPrediction() = default;
  DepthPrediction(std::span<const DepthMap* const> colocated, int picture_width, int picture_height);

  int ctus_wide() const { return ctus_w_; }
  int ctus_high() const { return ctus_h_; }
  const CtuDepthPrediction& ctu(int ctu_x, int ctu_y) const {
    return ctus_[static_cast<std::size_t>(ctu_y) * ctus_w_ + ctu_x];
  }

  /// Union (min of mins, max of maxes) of the cells covered by a CU given in
  /// CTU-relative luma coordinates.
  DepthRange range_for(int ctu_x, int ctu_y, int x, int y, int size) const;

private:
  int ctus_w_ = 0;
  int ctus_h_ = 0;
  std::vector<CtuDepthPrediction> ctus_;
};

/// Depth inside [min, max]: every mode; below min: 2Nx2N only; above max: none.
PuModeSet allowed_modes(const DepthRange& range, int depth);

/// Normalized per-mode frequency of finalized CUs across depth maps.
std::array<double, kNumPuModes> pu_histogram(std::span<const DepthMap> maps);

}  // namespace lfc
