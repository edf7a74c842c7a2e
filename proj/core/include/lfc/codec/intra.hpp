#pragma once

#include <cstdint>
#include <span>

#include "lfc/codec/coding_unit.hpp"
#include "lfc/picture.hpp"

namespace lfc {

/// Predicts the w x h block at (x, y) from the reconstructed row above and
/// column to the left inside `recon`. Missing neighbours are substituted from
/// the available side, or mid-grey when neither exists.
void predict_intra(const Plane& recon, int x, int y, int w, int h, IntraMode mode, int bit_depth,
                   std::span<std::int32_t> out);

}  // namespace lfc
