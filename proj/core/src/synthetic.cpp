#include "lfc/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lfc/error.hpp"

namespace lfc {
namespace {

/// Smooth random field: a sum of random sinusoids plus bilinearly
/// interpolated lattice noise, defined on the whole plane.
class Texture {
public:
  Texture(std::mt19937_64& rng, double amplitude, double cell) : amplitude_(amplitude), cell_(cell) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& w : waves_) {
      const double angle = 2.0 * std::numbers::pi * u(rng);
      const double freq = 0.02 + 0.12 * u(rng);
      w = {freq * std::cos(angle), freq * std::sin(angle), 2.0 * std::numbers::pi * u(rng), 0.3 + 0.7 * u(rng)};
    }
    lattice_.resize(kLattice * kLattice);
    for (auto& v : lattice_) v = 2.0 * u(rng) - 1.0;
  }

  double operator()(double x, double y) const {
    double s = 0.0;
    for (const auto& w : waves_) s += w[3] * std::sin(w[0] * x + w[1] * y + w[2]);
    s /= static_cast<double>(waves_.size());
    const double gx = x / cell_, gy = y / cell_;
    const double fx = std::floor(gx), fy = std::floor(gy);
    const double tx = gx - fx, ty = gy - fy;
    const auto at = [&](double ix, double iy) {
      const auto i = static_cast<std::size_t>(((static_cast<long long>(ix) % kLattice) + kLattice) % kLattice);
      const auto j = static_cast<std::size_t>(((static_cast<long long>(iy) % kLattice) + kLattice) % kLattice);
      return lattice_[j * kLattice + i];
    };
    const double n = (1 - ty) * ((1 - tx) * at(fx, fy) + tx * at(fx + 1, fy)) +
                     ty * ((1 - tx) * at(fx, fy + 1) + tx * at(fx + 1, fy + 1));
    return amplitude_ * (0.6 * s + 0.4 * n);
  }

private:
  static constexpr long long kLattice = 64;
  double amplitude_;
  double cell_;
  std::array<std::array<double, 4>, 6> waves_{};
  std::vector<double> lattice_;
};

}  // namespace

ViewGrid generate_synthetic(const SyntheticConfig& c) {
  check(c.rows >= 1 && c.cols >= 1 && c.width >= 8 && c.height >= 8, ErrorCode::InvalidConfig,
        "synthetic grid too small");
  check(c.bit_depth == 8 || c.bit_depth == 10, ErrorCode::UnsupportedBitDepth, "bit depth must be 8 or 10");

  std::mt19937_64 rng(c.seed);
  const Texture bg_luma(rng, 60.0 * c.detail, 12.0);
  const Texture bg_cb(rng, 20.0, 24.0);
  const Texture bg_cr(rng, 20.0, 24.0);
  const Texture fg_luma(rng, 50.0 * c.detail, 8.0);
  const Texture fg_cb(rng, 25.0, 12.0);
  const Texture fg_cr(rng, 25.0, 12.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double disc_x = c.width * (0.35 + 0.3 * u(rng));
  const double disc_y = c.height * (0.35 + 0.3 * u(rng));
  const double disc_r = std::min(c.width, c.height) * (0.18 + 0.12 * u(rng));
  const double bg_level = 100.0 + 40.0 * u(rng);
  const double fg_level = 140.0 + 40.0 * u(rng);

  const double cr = (c.rows - 1) / 2.0, cc = (c.cols - 1) / 2.0;
  const double max_dist = std::max(1.0, std::hypot(cr, cc));
  const double scale = c.bit_depth == 10 ? 4.0 : 1.0;
  const int max_value = (1 << c.bit_depth) - 1;
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<Picture> views;
  views.reserve(static_cast<std::size_t>(c.rows) * c.cols);
  for (int r = 0; r < c.rows; ++r) {
    for (int col = 0; col < c.cols; ++col) {
      const double du = col - cc, dv = r - cr;
      const double dist = std::hypot(du, dv) / max_dist;
      const double gain = 1.0 - c.vignetting * dist * dist;
      const double sigma = c.noise * dist;
      Picture pic(c.width, c.height, c.bit_depth, ChromaFormat::k444, ColorSpace::YCbCr);
      for (int y = 0; y < c.height; ++y) {
        for (int x = 0; x < c.width; ++x) {
          // Foreground point visible at (x, y) in this view.
          const double fx = x - du * c.foreground_disparity, fy = y - dv * c.foreground_disparity;
          const bool in_fg = std::hypot(fx - disc_x, fy - disc_y) < disc_r;
          double yv, cb, crv;
          if (in_fg) {
            yv = fg_level + fg_luma(fx, fy);
            cb = 128.0 + fg_cb(fx, fy);
            crv = 128.0 + fg_cr(fx, fy);
          } else {
            const double bx = x - du * c.background_disparity, by = y - dv * c.background_disparity;
            yv = bg_level + bg_luma(bx, by);
            cb = 128.0 + bg_cb(bx, by);
            crv = 128.0 + bg_cr(bx, by);
          }
          yv = yv * gain + sigma * gauss(rng);
          const std::array<double, 3> v = {yv, cb, crv};
          for (std::size_t p = 0; p < 3; ++p) {
            pic.planes[p].at(x, y) =
                static_cast<std::uint16_t>(std::clamp(static_cast<int>(std::lround(v[p] * scale)), 0, max_value));
          }
        }
      }
      views.push_back(c.chroma == ChromaFormat::k444 ? std::move(pic) : subsample_chroma(pic, c.chroma));
    }
  }
  return ViewGrid(c.rows, c.cols, std::move(views));
}

}  // namespace lfc

namespace lfc {

std::vector<SyntheticConfig> synthetic_suite(int rows, int cols, int width, int height) {
  std::vector<SyntheticConfig> suite(3);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    SyntheticConfig& c = suite[i];
    c.rows = rows;
    c.cols = cols;
    c.width = width;
    c.height = height;
    c.seed = 11 + 7 * i;
  }
  suite[0].background_disparity = 0.1;
  suite[0].foreground_disparity = 0.5;
  suite[1].background_disparity = 0.25;
  suite[1].foreground_disparity = 0.8;
  suite[2].background_disparity = 0.4;
  suite[2].foreground_disparity = 1.25;
  suite[2].detail = 1.3;
  return suite;
}

}  // namespace lfc
