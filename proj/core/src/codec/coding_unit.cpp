#include "lfc/codec/coding_unit.hpp"

#include <algorithm>

#include "lfc/depth_predictor.hpp"

namespace lfc {

std::string_view to_string(PuMode mode) noexcept {
  switch (mode) {
    case PuMode::Part2Nx2N: return "2Nx2N";
    case PuMode::Part2NxN: return "2NxN";
    case PuMode::PartNx2N: return "Nx2N";
    case PuMode::PartNxN: return "NxN";
    case PuMode::Part2NxnU: return "2NxnU";
    case PuMode::Part2NxnD: return "2NxnD";
    case PuMode::PartnLx2N: return "nLx2N";
    case PuMode::PartnRx2N: return "nRx2N";
  }
  return "?";
}

std::string_view to_string(IntraMode mode) noexcept {
  switch (mode) {
    case IntraMode::DC: return "DC";
    case IntraMode::Planar: return "Planar";
    case IntraMode::Horizontal: return "Horizontal";
    case IntraMode::Vertical: return "Vertical";
  }
  return "?";
}

int num_pus(PuMode m) {
  switch (m) {
    case PuMode::Part2Nx2N: return 1;
    case PuMode::PartNxN: return 4;
    default: return 2;
  }
}

PuRect pu_rect(PuMode m, int s, int idx) {
  const int h = s / 2;
  const int q = s / 4;
  switch (m) {
    case PuMode::Part2Nx2N: return {0, 0, s, s};
    case PuMode::Part2NxN: return idx == 0 ? PuRect{0, 0, s, h} : PuRect{0, h, s, h};
    case PuMode::PartNx2N: return idx == 0 ? PuRect{0, 0, h, s} : PuRect{h, 0, h, s};
    case PuMode::PartNxN: return {(idx & 1) * h, (idx >> 1) * h, h, h};
    case PuMode::Part2NxnU: return idx == 0 ? PuRect{0, 0, s, q} : PuRect{0, q, s, s - q};
    case PuMode::Part2NxnD: return idx == 0 ? PuRect{0, 0, s, s - q} : PuRect{0, s - q, s, q};
    case PuMode::PartnLx2N: return idx == 0 ? PuRect{0, 0, q, s} : PuRect{q, 0, s - q, s};
    case PuMode::PartnRx2N: return idx == 0 ? PuRect{0, 0, s - q, s} : PuRect{s - q, 0, q, s};
  }
  return {0, 0, s, s};
}

DepthMap::DepthMap(int luma_width, int luma_height)
    : cells_w_((luma_width + kMinCuSize - 1) / kMinCuSize),
      cells_h_((luma_height + kMinCuSize - 1) / kMinCuSize),
      cells_(static_cast<std::size_t>(cells_w_) * cells_h_) {}

int DepthMap::adjusted(int cx, int cy) const {
  const Cell& c = cell(cx, cy);
  return adjusted_depth(c.depth, c.pu_mode);
}

void DepthMap::record(const CodingUnit& cu) {
  const int n = cu.size() / kMinCuSize;
  const int cx0 = cu.x / kMinCuSize;
  const int cy0 = cu.y / kMinCuSize;
  for (int cy = cy0; cy < std::min(cy0 + n, cells_h_); ++cy) {
    for (int cx = cx0; cx < std::min(cx0 + n, cells_w_); ++cx) {
      cells_[static_cast<std::size_t>(cy) * cells_w_ + cx] = {static_cast<std::uint8_t>(cu.depth), cu.pu_mode};
    }
  }
  ++pu_counts_[static_cast<std::size_t>(cu.pu_mode)];
}

}  // namespace lfc
