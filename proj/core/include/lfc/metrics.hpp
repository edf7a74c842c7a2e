#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lfc/picture.hpp"
#include "lfc/view_grid.hpp"

namespace lfc {

/// Returned for identical planes instead of infinity.
inline constexpr double kPsnrCap = 100.0;

/// 10 log10(MAX^2 / MSE), MAX = 2^bit_depth - 1.
double psnr(const Plane& a, const Plane& b, int bit_depth);

/// Mean SSIM over all 11x11 Gaussian windows (sigma 1.5) lying inside the
/// plane; K1 = 0.01, K2 = 0.03, L = 2^bit_depth - 1.
double ssim(const Plane& a, const Plane& b, int bit_depth);

struct RdPoint {
  double bpp = 0.0;
  double psnr_y = 0.0;
  double ssim_y = 0.0;
};
using RdCurve = std::vector<RdPoint>;

struct BdResult {
  double bd_rate_pct = 0.0;
  double bd_psnr_db = 0.0;
};

/// Bjontegaard deltas of `test` against `anchor`: cubic least-squares fits in
/// (log10 rate, PSNR) integrated over the overlapping interval. Needs at least
/// four points with distinct rates (and PSNRs) per curve.
BdResult bd_metrics(const RdCurve& test, const RdCurve& anchor);
double bd_rate(const RdCurve& test, const RdCurve& anchor);
double bd_psnr(const RdCurve& test, const RdCurve& anchor);

/// Mean luma PSNR / SSIM over all views of two same-shaped grids.
struct GridQuality {
  double psnr_y = 0.0;
  double ssim_y = 0.0;
};
GridQuality grid_quality(const ViewGrid& reference, const ViewGrid& test);

/// Per position, the mean luma PSNR against every other view.
struct SimilarityMap {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  // row-major, dB

  double at(int row, int col) const { return values[static_cast<std::size_t>(row) * cols + col]; }
  GridPos argmax() const;
};
SimilarityMap similarity_map(const ViewGrid& grid);

void write_rd_csv(std::ostream& os, const RdCurve& curve);
RdCurve read_rd_csv(std::istream& is);
void write_similarity_csv(std::ostream& os, const SimilarityMap& map);

}  // namespace lfc
