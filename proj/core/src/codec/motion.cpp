#include "lfc/codec/motion.hpp"

#include <bit>
#include <cstdlib>
#include <limits>

namespace lfc {
namespace {

int component_bits(int v) {
  if (v == 0) return 1;
  const auto n = static_cast<unsigned>(std::abs(v) - 1);
  const int k = std::bit_width(n + 1) - 1;  // floor(log2(n + 1))
  return 2 + 2 * k + 1;
}

}  // namespace

int mv_bits(MotionVector mv) { return component_bits(mv.dx) + component_bits(mv.dy); }

int ref_slot_bits(int slot, int num_refs) {
  if (num_refs <= 1) return 0;
  return slot < num_refs - 1 ? slot + 1 : slot;
}

bool motion_candidate_before(double cost_a, MotionVector a, double cost_b, MotionVector b) {
  if (cost_a != cost_b) return cost_a < cost_b;
  const int la = std::abs(a.dx) + std::abs(a.dy);
  const int lb = std::abs(b.dx) + std::abs(b.dy);
  if (la != lb) return la < lb;
  if (a.dy != b.dy) return a.dy < b.dy;
  return a.dx < b.dx;
}

MotionSearchResult motion_search(const Plane& cur, int x, int y, int w, int h, const Plane& ref, int range,
                                 double lambda_motion) {
  MotionSearchResult best;
  best.cost = std::numeric_limits<double>::infinity();
  for (int dy = -range; dy <= range; ++dy) {
    for (int dx = -range; dx <= range; ++dx) {
      std::uint64_t sad = 0;
      for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
          sad += static_cast<std::uint64_t>(std::abs(cur.at(x + i, y + j) - ref.clamped(x + i + dx, y + j + dy)));
        }
      }
      const MotionVector mv{dx, dy};
      const double cost = static_cast<double>(sad) + lambda_motion * mv_bits(mv);
      if (motion_candidate_before(cost, mv, best.cost, best.mv)) {
        best = {mv, sad, cost};
      }
    }
  }
  return best;
}

CtuSadTable::CtuSadTable(const Plane& cur, int ctu_x, int ctu_y, int ctu_w, int ctu_h,
                         std::span<const Picture* const> refs, int range)
    : range_(range),
      num_refs_(static_cast<int>(refs.size())),
      blocks_w_(ctu_w / 4),
      blocks_h_(ctu_h / 4),
      side_(2 * range + 1) {
  const std::size_t stride = static_cast<std::size_t>(blocks_w_ + 1) * (blocks_h_ + 1);
  prefix_.assign(static_cast<std::size_t>(num_refs_) * side_ * side_ * stride, 0);
  std::vector<std::uint32_t> block_sad(static_cast<std::size_t>(blocks_w_) * blocks_h_);

  // Edge-replicated copy of the reachable reference area, so the inner
  // loops never clamp.
  const int win_w = ctu_w + 2 * range, win_h = ctu_h + 2 * range;
  std::vector<std::uint16_t> window(static_cast<std::size_t>(win_w) * win_h);
  for (int r = 0; r < num_refs_; ++r) {
    const Plane& ref = refs[static_cast<std::size_t>(r)]->luma();
    for (int j = 0; j < win_h; ++j) {
      for (int i = 0; i < win_w; ++i) {
        window[static_cast<std::size_t>(j) * win_w + i] = ref.clamped(ctu_x - range + i, ctu_y - range + j);
      }
    }
    for (int dy = -range; dy <= range; ++dy) {
      for (int dx = -range; dx <= range; ++dx) {
        std::fill(block_sad.begin(), block_sad.end(), 0u);
        for (int j = 0; j < ctu_h; ++j) {
          const std::uint16_t* c = cur.row(ctu_y + j).data() + ctu_x;
          const std::uint16_t* p = window.data() + static_cast<std::size_t>(j + dy + range) * win_w + (dx + range);
          std::uint32_t* bs = block_sad.data() + static_cast<std::size_t>(j / 4) * blocks_w_;
          for (int b = 0; b < blocks_w_; ++b) {
            const int i = 4 * b;
            bs[b] += static_cast<std::uint32_t>(std::abs(c[i] - p[i]) + std::abs(c[i + 1] - p[i + 1]) +
                                                std::abs(c[i + 2] - p[i + 2]) + std::abs(c[i + 3] - p[i + 3]));
          }
        }
        const int mv_index = (dy + range) * side_ + (dx + range);
        std::uint32_t* pre = prefix_.data() + (static_cast<std::size_t>(r) * side_ * side_ + mv_index) * stride;
        for (int by = 0; by < blocks_h_; ++by) {
          for (int bx = 0; bx < blocks_w_; ++bx) {
            pre[static_cast<std::size_t>(by + 1) * (blocks_w_ + 1) + bx + 1] =
                block_sad[static_cast<std::size_t>(by) * blocks_w_ + bx] +
                pre[static_cast<std::size_t>(by) * (blocks_w_ + 1) + bx + 1] +
                pre[static_cast<std::size_t>(by + 1) * (blocks_w_ + 1) + bx] -
                pre[static_cast<std::size_t>(by) * (blocks_w_ + 1) + bx];
          }
        }
      }
    }
  }
}

std::uint32_t CtuSadTable::sad(int ref, MotionVector mv, int x, int y, int w, int h) const {
  const std::size_t stride = static_cast<std::size_t>(blocks_w_ + 1) * (blocks_h_ + 1);
  const int mv_index = (mv.dy + range_) * side_ + (mv.dx + range_);
  const std::uint32_t* pre = prefix_.data() + (static_cast<std::size_t>(ref) * side_ * side_ + mv_index) * stride;
  const int x0 = x / 4, y0 = y / 4, x1 = (x + w) / 4, y1 = (y + h) / 4;
  const auto at = [&](int bx, int by) { return pre[static_cast<std::size_t>(by) * (blocks_w_ + 1) + bx]; };
  return at(x1, y1) - at(x0, y1) - at(x1, y0) + at(x0, y0);
}

CtuSadTable::Best CtuSadTable::search(int x, int y, int w, int h, double lambda_motion) const {
  Best best;
  best.cost = std::numeric_limits<double>::infinity();
  for (int r = 0; r < num_refs_; ++r) {
    const double ref_cost = lambda_motion * ref_slot_bits(r, num_refs_);
    for (int dy = -range_; dy <= range_; ++dy) {
      for (int dx = -range_; dx <= range_; ++dx) {
        const MotionVector mv{dx, dy};
        const double cost = sad(r, mv, x, y, w, h) + lambda_motion * mv_bits(mv) + ref_cost;
        // Earlier slots win exact ties because they are visited first.
        if (motion_candidate_before(cost, mv, best.cost, best.mv)) {
          best = {r, mv, cost};
        }
      }
    }
  }
  return best;
}

}  // namespace lfc
