#pragma once

#include <algorithm>
#include <cstdint>
#include <random>

#include "lfc/codec/view_codec.hpp"
#include "lfc/depth_predictor.hpp"
#include "lfc/picture.hpp"

namespace lfc::test {

/// Uniform random samples in [lo, hi] on every plane.
inline Picture random_picture(int w, int h, ChromaFormat fmt, std::uint64_t seed, int lo = 0, int hi = 255,
                              int bit_depth = 8) {
  Picture p(w, h, bit_depth, fmt, ColorSpace::YCbCr);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(lo, hi);
  for (auto& plane : p.planes) {
    for (auto& s : plane.samples) s = static_cast<std::uint16_t>(d(rng));
  }
  return p;
}

/// Smooth gradient-plus-texture picture; compresses like natural content.
inline Picture textured_picture(int w, int h, ChromaFormat fmt, std::uint64_t seed, int shift_x = 0, int shift_y = 0) {
  Picture p(w, h, 8, fmt, ColorSpace::YCbCr);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> noise(-3, 3);
  for (std::size_t c = 0; c < 3; ++c) {
    Plane& pl = p.planes[c];
    for (int y = 0; y < pl.height; ++y) {
      for (int x = 0; x < pl.width; ++x) {
        const int u = x + shift_x, v = y + shift_y;
        const int base = c == 0 ? 60 + (u * 3 + v * 2) % 120 + ((u / 8 + v / 8) % 2) * 30 : 110 + (u + v) % 40;
        pl.at(x, y) = static_cast<std::uint16_t>(std::clamp(base + noise(rng), 0, 255));
      }
    }
  }
  return p;
}

/// Co-located map recording every chosen CU of an encode as 2Nx2N at its
/// depth, so each cell predicts exactly the depth that was chosen there.
inline DepthMap chosen_depths(const EncodedView& ev, int width, int height) {
  DepthMap m(width, height);
  for (CodingUnit cu : ev.cus) {
    cu.pu_mode = PuMode::Part2Nx2N;
    m.record(cu);
  }
  return m;
}

}  // namespace lfc::test
