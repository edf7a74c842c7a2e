#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace lfc {

inline constexpr int kCtuSize = 64;
inline constexpr int kMinCuSize = 8;
inline constexpr int kMaxDepth = 3;
inline constexpr int kCellsPerCtu = kCtuSize / kMinCuSize;  // 8x8 cells per CTU side

constexpr int cu_size(int depth) { return kCtuSize >> depth; }

enum class PredKind : std::uint8_t { Intra = 0, Inter = 1 };
enum class IntraMode : std::uint8_t { DC = 0, Planar = 1, Horizontal = 2, Vertical = 3 };

/// HEVC partition modes. 2NxnU/2NxnD split horizontally at 1/4 and 3/4,
/// nLx2N/nRx2N vertically.
enum class PuMode : std::uint8_t {
  Part2Nx2N = 0,
  Part2NxN = 1,
  PartNx2N = 2,
  PartNxN = 3,
  Part2NxnU = 4,
  Part2NxnD = 5,
  PartnLx2N = 6,
  PartnRx2N = 7,
};
inline constexpr int kNumPuModes = 8;
inline constexpr std::array<PuMode, kNumPuModes> kAllPuModes = {
    PuMode::Part2Nx2N, PuMode::Part2NxN,  PuMode::PartNx2N,  PuMode::PartNxN,
    PuMode::Part2NxnU, PuMode::Part2NxnD, PuMode::PartnLx2N, PuMode::PartnRx2N};

std::string_view to_string(PuMode mode) noexcept;
std::string_view to_string(IntraMode mode) noexcept;

constexpr bool is_asymmetric(PuMode m) { return static_cast<int>(m) >= static_cast<int>(PuMode::Part2NxnU); }

/// Whether a PU mode is legal for a CU of the given depth and prediction kind.
constexpr bool pu_mode_allowed(PuMode m, int depth, PredKind kind) {
  if (m == PuMode::PartNxN) return depth == kMaxDepth;
  if (kind == PredKind::Intra) return m == PuMode::Part2Nx2N;
  if (is_asymmetric(m)) return depth < kMaxDepth;
  return true;
}

struct PuRect {
  int x, y, w, h;  // relative to the CU origin
};

int num_pus(PuMode m);
/// Geometry of partition `idx` for a CU of side `size`.
PuRect pu_rect(PuMode m, int size, int idx);

struct MotionVector {
  int dx = 0;
  int dy = 0;
  bool operator==(const MotionVector&) const = default;
};

struct PuMotion {
  int ref_slot = 0;
  MotionVector mv;
  bool operator==(const PuMotion&) const = default;
};

/// A finalized leaf of the CTU quadtree.
struct CodingUnit {
  int x = 0;  // luma position in the picture
  int y = 0;
  int depth = 0;
  PredKind pred = PredKind::Intra;
  PuMode pu_mode = PuMode::Part2Nx2N;
  std::array<IntraMode, 4> intra_modes{};  // [0] for 2Nx2N, one per PU for NxN
  std::array<PuMotion, 4> motion{};

  int size() const { return cu_size(depth); }
};

/// Chosen CU depths at 8x8 granularity for a whole picture.
class DepthMap {
public:
  struct Cell {
    std::uint8_t depth = 0;
    PuMode pu_mode = PuMode::Part2Nx2N;
    bool operator==(const Cell&) const = default;
  };

  DepthMap() = default;
  /// Covers a luma picture; dimensions are rounded up to whole cells.
  DepthMap(int luma_width, int luma_height);

  int cells_wide() const { return cells_w_; }
  int cells_high() const { return cells_h_; }
  const Cell& cell(int cx, int cy) const { return cells_[static_cast<std::size_t>(cy) * cells_w_ + cx]; }

  /// Depth d for 2Nx2N CUs, d + 1 otherwise (range 0..4).
  int adjusted(int cx, int cy) const;

  void record(const CodingUnit& cu);

  /// One count per finalized CU.
  const std::array<std::uint64_t, kNumPuModes>& pu_counts() const { return pu_counts_; }

  bool operator==(const DepthMap&) const = default;

private:
  int cells_w_ = 0;
  int cells_h_ = 0;
  std::vector<Cell> cells_;
  std::array<std::uint64_t, kNumPuModes> pu_counts_{};
};

}  // namespace lfc
