#include "reconstruct.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <limits>

#include "lfc/codec/intra.hpp"
#include "lfc/codec/transform.hpp"

namespace lfc::detail {

BlockGeom component_block(const CodingUnit& cu, int comp, ChromaFormat fmt) {
  const int s = cu.size();
  if (comp == 0) return {cu.x, cu.y, s, s};
  const int sx = chroma_shift_x(fmt), sy = chroma_shift_y(fmt);
  return {cu.x >> sx, cu.y >> sy, s >> sx, s >> sy};
}

void predict_component(const CodingUnit& cu, int comp, const Picture& recon, std::span<const Picture* const> refs,
                       std::vector<std::int32_t>& out) {
  const BlockGeom g = component_block(cu, comp, recon.chroma);
  const Plane& plane = recon.planes[static_cast<std::size_t>(comp)];
  out.resize(static_cast<std::size_t>(g.w) * g.h);

  if (cu.pred == PredKind::Intra) {
    if (comp != 0 || cu.pu_mode != PuMode::PartNxN) {
      predict_intra(plane, g.x, g.y, g.w, g.h, cu.intra_modes[0], recon.bit_depth, out);
      return;
    }
    std::vector<std::int32_t> full(out.size());
    for (int i = 0; i < 4; ++i) {
      predict_intra(plane, g.x, g.y, g.w, g.h, cu.intra_modes[static_cast<std::size_t>(i)], recon.bit_depth, full);
      const PuRect r = pu_rect(PuMode::PartNxN, g.w, i);
      for (int y = r.y; y < r.y + r.h; ++y) {
        for (int x = r.x; x < r.x + r.w; ++x) {
          out[static_cast<std::size_t>(y) * g.w + x] = full[static_cast<std::size_t>(y) * g.w + x];
        }
      }
    }
    return;
  }

  const int sx = comp == 0 ? 0 : chroma_shift_x(recon.chroma);
  const int sy = comp == 0 ? 0 : chroma_shift_y(recon.chroma);
  for (int i = 0; i < num_pus(cu.pu_mode); ++i) {
    const PuRect r = pu_rect(cu.pu_mode, cu.size(), i);
    const PuMotion& mo = cu.motion[static_cast<std::size_t>(i)];
    const Plane& ref = refs[static_cast<std::size_t>(mo.ref_slot)]->planes[static_cast<std::size_t>(comp)];
    const int mvx = mo.mv.dx >> sx, mvy = mo.mv.dy >> sy;
    const int x0 = r.x >> sx, y0 = r.y >> sy, w = r.w >> sx, h = r.h >> sy;
    for (int y = y0; y < y0 + h; ++y) {
      for (int x = x0; x < x0 + w; ++x) {
        out[static_cast<std::size_t>(y) * g.w + x] = ref.clamped(g.x + x + mvx, g.y + y + mvy);
      }
    }
  }
}

void choose_nxn_modes(CodingUnit& cu, const Picture& recon, const Plane& source) {
  const int s = cu.size();
  std::array<std::vector<std::int32_t>, 4> preds;
  for (int m = 0; m < 4; ++m) {
    preds[static_cast<std::size_t>(m)].resize(static_cast<std::size_t>(s) * s);
    predict_intra(recon.luma(), cu.x, cu.y, s, s, static_cast<IntraMode>(m), recon.bit_depth,
                  preds[static_cast<std::size_t>(m)]);
  }
  for (int i = 0; i < 4; ++i) {
    const PuRect r = pu_rect(PuMode::PartNxN, s, i);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (int m = 0; m < 4; ++m) {
      std::int64_t sad = 0;
      for (int y = r.y; y < r.y + r.h; ++y) {
        for (int x = r.x; x < r.x + r.w; ++x) {
          sad += std::abs(source.at(cu.x + x, cu.y + y) -
                          preds[static_cast<std::size_t>(m)][static_cast<std::size_t>(y) * s + x]);
        }
      }
      if (sad < best) {
        best = sad;
        cu.intra_modes[static_cast<std::size_t>(i)] = static_cast<IntraMode>(m);
      }
    }
  }
}

void reconstruct_block(Plane& dst, const BlockGeom& g, std::span<const std::int32_t> pred,
                       std::span<const std::int32_t> levels, bool cbf, int qp, int max_value) {
  std::vector<std::int32_t> residual;
  if (cbf) residual = inverse_transform(dequantize(levels, qp), g.w, g.h);
  for (int y = 0; y < g.h; ++y) {
    std::uint16_t* row = dst.row(g.y + y).data() + g.x;
    for (int x = 0; x < g.w; ++x) {
      const std::size_t k = static_cast<std::size_t>(y) * g.w + x;
      const std::int32_t v = pred[k] + (cbf ? residual[k] : 0);
      row[x] = static_cast<std::uint16_t>(std::clamp(v, 0, max_value));
    }
  }
}

}  // namespace lfc::detail
