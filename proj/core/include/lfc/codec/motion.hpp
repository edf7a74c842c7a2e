#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lfc/codec/coding_unit.hpp"
#include "lfc/picture.hpp"

namespace lfc {

/// Side-information estimate for one vector: per component 1 bit when zero,
/// otherwise zero flag + sign + Exp-Golomb(|v| - 1).
int mv_bits(MotionVector mv);

/// Truncated-unary length of a reference slot among `num_refs` references.
int ref_slot_bits(int slot, int num_refs);

struct MotionSearchResult {
  MotionVector mv;
  std::uint64_t sad = 0;
  double cost = 0.0;
};

/// Deterministic candidate order: lower cost, then smaller |dx| + |dy|, then
/// smaller dy, then smaller dx.
bool motion_candidate_before(double cost_a, MotionVector a, double cost_b, MotionVector b);

/// Full integer-pel search over [-range, range]^2 of the w x h block at (x, y)
/// of `cur` in `ref` (edge-replicated outside). cost = SAD + lambda_motion * mv_bits.
MotionSearchResult motion_search(const Plane& cur, int x, int y, int w, int h, const Plane& ref, int range,
                                 double lambda_motion);

/// SADs of every 4x4 luma block of one CTU for every (reference, vector)
/// pair, kept as 2-D prefix sums so any 4-aligned rectangle costs O(1).
class CtuSadTable {
public:
  CtuSadTable(const Plane& cur, int ctu_x, int ctu_y, int ctu_w, int ctu_h, std::span<const Picture* const> refs,
              int range);

  int range() const { return range_; }
  int num_refs() const { return num_refs_; }

  /// SAD of the rectangle (x, y, w, h), CTU-relative and 4-aligned.
  std::uint32_t sad(int ref, MotionVector mv, int x, int y, int w, int h) const;

  struct Best {
    int ref_slot = 0;
    MotionVector mv;
    double cost = 0.0;
  };
  /// Best (reference, vector) for a rectangle; cost adds lambda_motion times
  /// mv and reference-slot bits. Ties resolved as motion_candidate_before,
  /// then lower slot.
  Best search(int x, int y, int w, int h, double lambda_motion) const;

private:
  int range_;
  int num_refs_;
  int blocks_w_;
  int blocks_h_;
  int side_;  // 2 * range + 1
  std::vector<std::uint32_t> prefix_;  // [ref][mv][(blocks_h+1) * (blocks_w+1)]
};

}  // namespace lfc
