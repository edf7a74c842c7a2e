#include "syntax.hpp"

#include <algorithm>

#include "lfc/error.hpp"

namespace lfc::detail {
namespace {

int log2_index(int n) { return std::bit_width(static_cast<unsigned>(n)) - 1; }

struct ScanTables {
  // Indexed by log2(width) and log2(height), sides 1..64.
  std::array<std::array<std::vector<std::uint16_t>, 7>, 7> tables;

  ScanTables() {
    for (int lw = 0; lw < 7; ++lw) {
      for (int lh = 0; lh < 7; ++lh) {
        const int w = 1 << lw, h = 1 << lh;
        auto& t = tables[static_cast<std::size_t>(lw)][static_cast<std::size_t>(lh)];
        t.reserve(static_cast<std::size_t>(w) * h);
        for (int s = 0; s <= w + h - 2; ++s) {
          for (int y = std::min(s, h - 1); y >= std::max(0, s - (w - 1)); --y) {
            t.push_back(static_cast<std::uint16_t>(y * w + (s - y)));
          }
        }
      }
    }
  }
};

int read_sign(RangeDecoder& dec) { return dec.decode_bypass() ? -1 : 1; }

}  // namespace

const std::vector<std::uint16_t>& diagonal_scan(int width, int height) {
  static const ScanTables tables;
  return tables.tables[static_cast<std::size_t>(log2_index(width))][static_cast<std::size_t>(log2_index(height))];
}

std::uint32_t read_exp_golomb(RangeDecoder& dec) {
  int k = 0;
  while (dec.decode_bypass()) {
    if (++k > kMaxExpGolombPrefix) fail(ErrorCode::CorruptStream, "exp-golomb prefix too long");
  }
  if (k == 0) return 0;
  return (1u << k) - 1 + dec.decode_bypass_bits(k);
}

bool read_split(RangeDecoder& dec, ContextSet& ctx, int depth) {
  return dec.decode(ctx.split[static_cast<std::size_t>(depth)]) != 0;
}

namespace {

void read_coefficients(RangeDecoder& dec, ContextSet& ctx, std::vector<std::int32_t>& levels, int width, int height,
                       int component) {
  const int cls = component == 0 ? 0 : 1;
  const auto& scan = diagonal_scan(width, height);
  const int max_prefix = std::bit_width(static_cast<unsigned>(width * height)) - 1;
  auto& lp = ctx.last_prefix[static_cast<std::size_t>(cls)];
  int prefix = 0;
  while (prefix < max_prefix && dec.decode(lp[static_cast<std::size_t>(std::min(prefix, 11))])) ++prefix;
  std::uint32_t v = 1u << prefix;
  if (prefix > 0) v += dec.decode_bypass_bits(prefix);
  const int last = static_cast<int>(v) - 1;
  if (last >= width * height) fail(ErrorCode::CorruptStream, "last coefficient position out of range");

  levels.assign(static_cast<std::size_t>(width) * height, 0);
  int gt1_seen = 0;
  bool prev_sig = true;
  for (int i = last; i >= 0; --i) {
    bool sig = true;
    if (i != last) {
      sig = dec.decode(ctx.sig[static_cast<std::size_t>(cls)][static_cast<std::size_t>(scan_bucket(i))]
                              [prev_sig ? 1 : 0]) != 0;
    }
    prev_sig = sig;
    if (!sig) continue;
    std::uint32_t mag = 1;
    if (dec.decode(ctx.gt1[static_cast<std::size_t>(cls)][static_cast<std::size_t>(std::min(gt1_seen, 3))])) {
      ++gt1_seen;
      mag = 2;
      if (dec.decode(ctx.gt2[static_cast<std::size_t>(cls)])) {
        const std::uint32_t rem = read_exp_golomb(dec);
        if (rem > static_cast<std::uint32_t>(kMaxLevel)) fail(ErrorCode::CorruptStream, "coefficient level too large");
        mag = 3 + rem;
      }
    }
    levels[scan[static_cast<std::size_t>(i)]] = read_sign(dec) * static_cast<std::int32_t>(mag);
  }
}

}  // namespace

void read_cu(RangeDecoder& dec, ContextSet& ctx, CuPayload& p, bool inter_picture, int num_refs) {
  CodingUnit& cu = p.cu;
  const auto d = static_cast<std::size_t>(cu.depth);
  cu.pred = PredKind::Intra;
  if (inter_picture && dec.decode(ctx.pred_kind[d])) cu.pred = PredKind::Inter;

  if (cu.pred == PredKind::Intra) {
    cu.pu_mode = PuMode::Part2Nx2N;
    if (cu.depth == kMaxDepth && dec.decode(ctx.intra_nxn)) cu.pu_mode = PuMode::PartNxN;
    for (int i = 0; i < num_pus(cu.pu_mode); ++i) {
      const int hi = dec.decode(ctx.intra_mode[0]);
      const int lo = dec.decode(ctx.intra_mode[1 + static_cast<std::size_t>(hi)]);
      cu.intra_modes[static_cast<std::size_t>(i)] = static_cast<IntraMode>(hi * 2 + lo);
    }
  } else {
    PuMode m = PuMode::Part2Nx2N;
    if (!dec.decode(ctx.pu_is_2nx2n[d])) {
      if (cu.depth == kMaxDepth) {
        if (dec.decode(ctx.pu_nxn)) {
          m = PuMode::PartNxN;
        } else {
          m = dec.decode(ctx.pu_vertical) ? PuMode::PartNx2N : PuMode::Part2NxN;
        }
      } else {
        const bool vertical = dec.decode(ctx.pu_vertical) != 0;
        if (dec.decode(ctx.pu_asymmetric)) {
          const bool second = dec.decode_bypass() != 0;
          if (vertical) {
            m = second ? PuMode::PartnRx2N : PuMode::PartnLx2N;
          } else {
            m = second ? PuMode::Part2NxnD : PuMode::Part2NxnU;
          }
        } else {
          m = vertical ? PuMode::PartNx2N : PuMode::Part2NxN;
        }
      }
    }
    cu.pu_mode = m;
    for (int i = 0; i < num_pus(m); ++i) {
      PuMotion& mo = cu.motion[static_cast<std::size_t>(i)];
      mo.ref_slot = 0;
      while (mo.ref_slot < num_refs - 1 &&
             dec.decode(ctx.ref_slot[static_cast<std::size_t>(std::min(mo.ref_slot, 2))])) {
        ++mo.ref_slot;
      }
      std::array<int, 2> comps{};
      for (std::size_t c = 0; c < 2; ++c) {
        if (dec.decode(ctx.mv_nonzero[c])) {
          const int sign = read_sign(dec);
          const std::uint32_t mag = read_exp_golomb(dec) + 1;
          if (mag > static_cast<std::uint32_t>(kMaxMvMagnitude)) fail(ErrorCode::CorruptStream, "motion vector too large");
          comps[c] = sign * static_cast<int>(mag);
        }
      }
      mo.mv = {comps[0], comps[1]};
    }
  }

  const auto pk = static_cast<std::size_t>(cu.pred);
  for (std::size_t c = 0; c < 3; ++c) p.cbf[c] = dec.decode(ctx.cbf[c][pk]) != 0;
  for (std::size_t c = 0; c < 3; ++c) {
    if (p.cbf[c]) {
      read_coefficients(dec, ctx, p.levels[c], p.tu_w[c], p.tu_h[c], static_cast<int>(c));
    } else {
      p.levels[c].assign(static_cast<std::size_t>(p.tu_w[c]) * p.tu_h[c], 0);
    }
  }
}

}  // namespace lfc::detail
