#pragma once

// CU-level binarization shared by the encoder (real coding and RD bit
// estimation) and the decoder.

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "lfc/codec/coding_unit.hpp"
#include "lfc/codec/range_coder.hpp"

namespace lfc::detail {

inline constexpr int kMaxMvMagnitude = 1 << 12;
inline constexpr int kMaxLevel = 1 << 20;
inline constexpr int kMaxExpGolombPrefix = 24;

struct ContextSet {
  std::array<BinContext, kMaxDepth> split;
  std::array<BinContext, kMaxDepth + 1> pred_kind;
  BinContext intra_nxn;
  std::array<BinContext, 3> intra_mode;
  std::array<BinContext, kMaxDepth + 1> pu_is_2nx2n;
  BinContext pu_nxn;
  BinContext pu_vertical;
  BinContext pu_asymmetric;
  std::array<BinContext, 3> ref_slot;
  std::array<BinContext, 2> mv_nonzero;
  std::array<std::array<BinContext, 2>, 3> cbf;          // [component][pred kind]
  std::array<std::array<BinContext, 12>, 2> last_prefix;  // [luma/chroma][bin]
  std::array<std::array<std::array<BinContext, 2>, 5>, 2> sig;  // [luma/chroma][bucket][prev sig]
  std::array<std::array<BinContext, 4>, 2> gt1;
  std::array<BinContext, 2> gt2;
};

/// Up-right diagonal scan of a w x h block as raster indices.
const std::vector<std::uint16_t>& diagonal_scan(int width, int height);

inline int scan_bucket(int pos) {
  if (pos == 0) return 0;
  if (pos < 3) return 1;
  if (pos < 10) return 2;
  if (pos < 36) return 3;
  return 4;
}

/// Everything coded for one CU after the split flags.
struct CuPayload {
  CodingUnit cu;
  std::array<bool, 3> cbf{};
  std::array<int, 3> tu_w{};
  std::array<int, 3> tu_h{};
  std::array<std::vector<std::int32_t>, 3> levels;  // raster, tu_w * tu_h
};

/// Sink that sums estimated bits against frozen contexts.
class BitCounter {
public:
  void encode(BinContext& ctx, int bit) { bits_ += bin_cost(ctx, bit); }
  void encode_bypass(int) { bits_ += 1.0; }
  void encode_bypass_bits(std::uint32_t, int nbits) { bits_ += nbits; }
  double bits() const { return bits_; }

private:
  double bits_ = 0.0;
};

template <class Sink>
void write_exp_golomb(Sink& sink, std::uint32_t n) {
  const int k = std::bit_width(n + 1) - 1;
  for (int i = 0; i < k; ++i) sink.encode_bypass(1);
  sink.encode_bypass(0);
  if (k > 0) sink.encode_bypass_bits(n + 1 - (1u << k), k);
}

template <class Sink>
void write_split(Sink& sink, ContextSet& ctx, int depth, bool split) {
  sink.encode(ctx.split[static_cast<std::size_t>(depth)], split ? 1 : 0);
}

template <class Sink>
void write_coefficients(Sink& sink, ContextSet& ctx, std::span<const std::int32_t> levels, int width, int height,
                        int component) {
  const int cls = component == 0 ? 0 : 1;
  const auto& scan = diagonal_scan(width, height);
  int last = 0;
  for (int i = static_cast<int>(scan.size()) - 1; i >= 0; --i) {
    if (levels[scan[static_cast<std::size_t>(i)]] != 0) {
      last = i;
      break;
    }
  }
  const auto v = static_cast<std::uint32_t>(last) + 1;
  const int prefix = std::bit_width(v) - 1;
  const int max_prefix = std::bit_width(static_cast<unsigned>(width * height)) - 1;
  auto& lp = ctx.last_prefix[static_cast<std::size_t>(cls)];
  for (int i = 0; i < prefix; ++i) sink.encode(lp[static_cast<std::size_t>(std::min(i, 11))], 1);
  if (prefix < max_prefix) sink.encode(lp[static_cast<std::size_t>(std::min(prefix, 11))], 0);
  if (prefix > 0) sink.encode_bypass_bits(v - (1u << prefix), prefix);

  int gt1_seen = 0;
  bool prev_sig = true;
  for (int i = last; i >= 0; --i) {
    const std::int32_t level = levels[scan[static_cast<std::size_t>(i)]];
    const bool sig = level != 0;
    if (i != last) {
      sink.encode(ctx.sig[static_cast<std::size_t>(cls)][static_cast<std::size_t>(scan_bucket(i))][prev_sig ? 1 : 0],
                  sig ? 1 : 0);
    }
    prev_sig = sig;
    if (!sig) continue;
    const std::uint32_t mag = static_cast<std::uint32_t>(level < 0 ? -level : level);
    sink.encode(ctx.gt1[static_cast<std::size_t>(cls)][static_cast<std::size_t>(std::min(gt1_seen, 3))],
                mag > 1 ? 1 : 0);
    if (mag > 1) {
      ++gt1_seen;
      sink.encode(ctx.gt2[static_cast<std::size_t>(cls)], mag > 2 ? 1 : 0);
      if (mag > 2) write_exp_golomb(sink, mag - 3);
    }
    sink.encode_bypass(level < 0 ? 1 : 0);
  }
}

template <class Sink>
void write_cu(Sink& sink, ContextSet& ctx, const CuPayload& p, bool inter_picture, int num_refs) {
  const CodingUnit& cu = p.cu;
  const auto d = static_cast<std::size_t>(cu.depth);
  if (inter_picture) sink.encode(ctx.pred_kind[d], cu.pred == PredKind::Inter ? 1 : 0);

  if (cu.pred == PredKind::Intra) {
    if (cu.depth == kMaxDepth) sink.encode(ctx.intra_nxn, cu.pu_mode == PuMode::PartNxN ? 1 : 0);
    for (int i = 0; i < num_pus(cu.pu_mode); ++i) {
      const int m = static_cast<int>(cu.intra_modes[static_cast<std::size_t>(i)]);
      sink.encode(ctx.intra_mode[0], m >> 1);
      sink.encode(ctx.intra_mode[1 + static_cast<std::size_t>(m >> 1)], m & 1);
    }
  } else {
    const PuMode m = cu.pu_mode;
    sink.encode(ctx.pu_is_2nx2n[d], m == PuMode::Part2Nx2N ? 1 : 0);
    if (m != PuMode::Part2Nx2N) {
      const bool vertical = m == PuMode::PartNx2N || m == PuMode::PartnLx2N || m == PuMode::PartnRx2N;
      if (cu.depth == kMaxDepth) {
        sink.encode(ctx.pu_nxn, m == PuMode::PartNxN ? 1 : 0);
        if (m != PuMode::PartNxN) sink.encode(ctx.pu_vertical, vertical ? 1 : 0);
      } else {
        sink.encode(ctx.pu_vertical, vertical ? 1 : 0);
        sink.encode(ctx.pu_asymmetric, is_asymmetric(m) ? 1 : 0);
        if (is_asymmetric(m)) sink.encode_bypass(m == PuMode::Part2NxnD || m == PuMode::PartnRx2N ? 1 : 0);
      }
    }
    for (int i = 0; i < num_pus(m); ++i) {
      const PuMotion& mo = cu.motion[static_cast<std::size_t>(i)];
      for (int b = 0; b < num_refs - 1; ++b) {
        const int bit = mo.ref_slot > b ? 1 : 0;
        sink.encode(ctx.ref_slot[static_cast<std::size_t>(std::min(b, 2))], bit);
        if (!bit) break;
      }
      const std::array<int, 2> comps = {mo.mv.dx, mo.mv.dy};
      for (std::size_t c = 0; c < 2; ++c) {
        const int v = comps[c];
        sink.encode(ctx.mv_nonzero[c], v != 0 ? 1 : 0);
        if (v != 0) {
          sink.encode_bypass(v < 0 ? 1 : 0);
          write_exp_golomb(sink, static_cast<std::uint32_t>((v < 0 ? -v : v) - 1));
        }
      }
    }
  }

  const auto pk = static_cast<std::size_t>(cu.pred);
  for (std::size_t c = 0; c < 3; ++c) sink.encode(ctx.cbf[c][pk], p.cbf[c] ? 1 : 0);
  for (std::size_t c = 0; c < 3; ++c) {
    if (p.cbf[c]) write_coefficients(sink, ctx, p.levels[c], p.tu_w[c], p.tu_h[c], static_cast<int>(c));
  }
}

// Decoder side; malformed syntax raises CorruptStream.
std::uint32_t read_exp_golomb(RangeDecoder& dec);
bool read_split(RangeDecoder& dec, ContextSet& ctx, int depth);
/// Fills everything but cu.x / cu.y / cu.depth and tu sizes, which the caller sets first.
void read_cu(RangeDecoder& dec, ContextSet& ctx, CuPayload& p, bool inter_picture, int num_refs);

}  // namespace lfc::detail
