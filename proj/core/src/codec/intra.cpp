#include "lfc/codec/intra.hpp"

#include <algorithm>
#include <vector>

namespace lfc {

void predict_intra(const Plane& recon, int x, int y, int w, int h, IntraMode mode, int bit_depth,
                   std::span<std::int32_t> out) {
  const bool has_top = y > 0;
  const bool has_left = x > 0;
  std::vector<std::int32_t> top(static_cast<std::size_t>(w));
  std::vector<std::int32_t> left(static_cast<std::size_t>(h));
  if (has_top) {
    for (int i = 0; i < w; ++i) top[i] = recon.at(x + i, y - 1);
  }
  if (has_left) {
    for (int j = 0; j < h; ++j) left[j] = recon.at(x - 1, y + j);
  }
  if (!has_top && !has_left) {
    const std::int32_t mid = 1 << (bit_depth - 1);
    std::fill(top.begin(), top.end(), mid);
    std::fill(left.begin(), left.end(), mid);
  } else if (!has_top) {
    std::fill(top.begin(), top.end(), left[0]);
  } else if (!has_left) {
    std::fill(left.begin(), left.end(), top[0]);
  }

  switch (mode) {
    case IntraMode::DC: {
      std::int64_t sum = 0;
      for (auto v : top) sum += v;
      for (auto v : left) sum += v;
      const auto dc = static_cast<std::int32_t>((sum + (w + h) / 2) / (w + h));
      std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(w) * h, dc);
      break;
    }
    case IntraMode::Planar: {
      const std::int64_t top_right = top[w - 1];
      const std::int64_t bottom_left = left[h - 1];
      const std::int64_t denom = 2LL * w * h;
      for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
          const std::int64_t horz = ((w - 1 - i) * static_cast<std::int64_t>(left[j]) + (i + 1) * top_right) * h;
          const std::int64_t vert = ((h - 1 - j) * static_cast<std::int64_t>(top[i]) + (j + 1) * bottom_left) * w;
          out[static_cast<std::size_t>(j) * w + i] = static_cast<std::int32_t>((horz + vert + w * h) / denom);
        }
      }
      break;
    }
    case IntraMode::Horizontal:
      for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i) out[static_cast<std::size_t>(j) * w + i] = left[j];
      break;
    case IntraMode::Vertical:
      for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i) out[static_cast<std::size_t>(j) * w + i] = top[i];
      break;
  }
}

}  // namespace lfc
