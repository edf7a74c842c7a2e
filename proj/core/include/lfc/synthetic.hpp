#pragma once

#include <cstdint>
#include <vector>

#include "lfc/view_grid.hpp"

namespace lfc {

/// Parameters of the synthetic light-field generator. Every view samples a
/// textured background and a textured foreground disc, each shifted with the
/// view's offset from the grid center times its disparity. Vignetting and
/// noise grow with the distance from the center, so central views resemble
/// their neighbours most.
struct SyntheticConfig {
  int rows = 13;
  int cols = 13;
  int width = 64;
  int height = 64;
  int bit_depth = 8;
  ChromaFormat chroma = ChromaFormat::k420;
  std::uint64_t seed = 1;
  double background_disparity = 0.25;  // pixels per grid step
  double foreground_disparity = 0.8;
  double vignetting = 0.1;  // relative darkening at the farthest view
  double noise = 3.0;        // noise sigma (8-bit units) at the farthest view
  double detail = 1.0;       // texture amplitude scale
};

ViewGrid generate_synthetic(const SyntheticConfig& config);

}  // namespace lfc

namespace lfc {

/// Three distinct scenes (small / medium / large parallax) sharing one grid
/// geometry; the benchmark suite used by the experiment harness.
std::vector<SyntheticConfig> synthetic_suite(int rows, int cols, int width, int height);

}  // namespace lfc
