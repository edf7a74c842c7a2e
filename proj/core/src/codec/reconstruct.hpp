#pragma once

// Prediction and reconstruction shared by encoder and decoder.

#include <cstdint>
#include <span>
#include <vector>

#include "lfc/codec/coding_unit.hpp"
#include "lfc/picture.hpp"

namespace lfc::detail {

inline int align8(int v) { return (v + kMinCuSize - 1) / kMinCuSize * kMinCuSize; }

struct BlockGeom {
  int x, y, w, h;
};

/// Transform block of component `comp` for a CU (TU == CU).
BlockGeom component_block(const CodingUnit& cu, int comp, ChromaFormat fmt);

/// Prediction of one component; `recon` holds already reconstructed samples
/// of the current picture (intra), `refs` the reference pictures (inter).
void predict_component(const CodingUnit& cu, int comp, const Picture& recon, std::span<const Picture* const> refs,
                       std::vector<std::int32_t>& out);

/// Picks the 4x4 sub-PU modes of an intra NxN CU by luma SAD against `source`.
void choose_nxn_modes(CodingUnit& cu, const Picture& recon, const Plane& source);

/// recon = clip(pred + inverse(dequantize(levels))), written into `dst`.
void reconstruct_block(Plane& dst, const BlockGeom& g, std::span<const std::int32_t> pred,
                       std::span<const std::int32_t> levels, bool cbf, int qp, int max_value);

}  // namespace lfc::detail
