#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <optional>

#include "lfc/codec/motion.hpp"
#include "lfc/codec/range_coder.hpp"
#include "lfc/codec/transform.hpp"
#include "lfc/codec/view_codec.hpp"
#include "lfc/error.hpp"
#include "reconstruct.hpp"
#include "syntax.hpp"

namespace lfc {

RdoConfig RdoConfig::for_qp(int qp, int search_range) {
  check(qp >= 0 && qp <= kMaxQp, ErrorCode::InvalidConfig, "qp out of range");
  check(search_range >= 0 && search_range <= 64, ErrorCode::InvalidConfig, "search range out of range");
  return {qp, lambda_for_qp(qp), search_range};
}

namespace {

using detail::CuPayload;

struct Candidate {
  CuPayload payload;
  std::array<std::vector<std::int32_t>, 3> pred;
  double cost = std::numeric_limits<double>::infinity();
};

struct Token {
  bool is_cu = false;
  int depth = 0;
  bool split = false;
  CuPayload cu;
};

struct NodeResult {
  double cost = 0.0;
  std::vector<Token> tokens;
};

class ViewEncoder {
public:
  ViewEncoder(const Picture& view, std::span<const Picture* const> refs, const RdoConfig& cfg,
              const DepthPrediction* prediction)
      : width_(view.width),
        height_(view.height),
        padded_w_(detail::align8(view.width)),
        padded_h_(detail::align8(view.height)),
        src_(pad_picture(view, padded_w_, padded_h_)),
        recon_(padded_w_, padded_h_, view.bit_depth, view.chroma, view.color),
        refs_(refs.begin(), refs.end()),
        cfg_(cfg),
        lambda_motion_(std::sqrt(cfg.lambda)),
        prediction_(prediction),
        depth_(view.width, view.height) {}

  EncodedView run(int coding_index) {
    EncodedView out;
    RangeEncoder enc;
    enc.encode_bypass_bits(static_cast<std::uint32_t>(refs_.size()), 3);
    for (int cy = 0; cy < padded_h_; cy += kCtuSize) {
      for (int cx = 0; cx < padded_w_; cx += kCtuSize) {
        ctu_x0_ = cx;
        ctu_y0_ = cy;
        if (!refs_.empty()) {
          sad_.emplace(src_.luma(), cx, cy, std::min(kCtuSize, padded_w_ - cx), std::min(kCtuSize, padded_h_ - cy),
                       refs_, cfg_.search_range);
        }
        est_ = live_;
        NodeResult r = search(cx, cy, 0);
        for (Token& t : r.tokens) {
          if (!t.is_cu) {
            detail::write_split(enc, live_, t.depth, t.split);
            continue;
          }
          detail::write_cu(enc, live_, t.cu, !refs_.empty(), static_cast<int>(refs_.size()));
          depth_.record(t.cu.cu);
          out.cus.push_back(t.cu.cu);
          ++stats_.cus;
        }
      }
    }
    const std::vector<std::uint8_t> payload = enc.finish();
    out.segment.reserve(kSegmentHeaderSize + payload.size());
    const auto ci = static_cast<std::uint16_t>(coding_index);
    const auto len = static_cast<std::uint32_t>(payload.size());
    out.segment.push_back(static_cast<std::uint8_t>(ci & 0xFF));
    out.segment.push_back(static_cast<std::uint8_t>(ci >> 8));
    out.segment.push_back(static_cast<std::uint8_t>(cfg_.qp));
    for (int i = 0; i < 4; ++i) out.segment.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
    out.segment.insert(out.segment.end(), payload.begin(), payload.end());
    out.recon = crop_picture(recon_, width_, height_);
    out.depth = std::move(depth_);
    out.stats = stats_;
    return out;
  }

private:
  bool inside(int x, int y, int size) const { return x + size <= padded_w_ && y + size <= padded_h_; }

  NodeResult search(int x, int y, int depth) {
    ++stats_.nodes;
    const int size = cu_size(depth);
    const int half = size / 2;
    if (!inside(x, y, size)) {
      NodeResult r;
      for (int i = 0; i < 4; ++i) {
        const int xx = x + (i & 1) * half, yy = y + (i >> 1) * half;
        if (xx >= padded_w_ || yy >= padded_h_) continue;
        NodeResult child = search(xx, yy, depth + 1);
        r.cost += child.cost;
        std::move(child.tokens.begin(), child.tokens.end(), std::back_inserter(r.tokens));
      }
      return r;
    }

    const DepthRange range = prediction_ != nullptr
                                 ? prediction_->range_for(ctu_x0_ / kCtuSize, ctu_y0_ / kCtuSize, x - ctu_x0_,
                                                          y - ctu_y0_, size)
                                 : kFullDepthRange;
    PuModeSet allowed = allowed_modes(range, depth);
    const bool can_split = depth < kMaxDepth && depth < range.max;
    if (allowed.empty() && !can_split) allowed = PuModeSet::only(PuMode::Part2Nx2N);

    Candidate leaf;
    if (!allowed.empty()) {
      evaluate_leaf(x, y, depth, allowed, leaf);
      store(leaf);
    }
    if (can_split) {
      NodeResult split;
      split.cost = cfg_.lambda * detail_split_bits(depth, true);
      split.tokens.push_back({false, depth, true, {}});
      for (int i = 0; i < 4; ++i) {
        NodeResult child = search(x + (i & 1) * half, y + (i >> 1) * half, depth + 1);
        split.cost += child.cost;
        std::move(child.tokens.begin(), child.tokens.end(), std::back_inserter(split.tokens));
      }
      if (split.cost < leaf.cost) return split;
      store(leaf);
    }
    NodeResult r;
    r.cost = leaf.cost;
    if (depth < kMaxDepth) r.tokens.push_back({false, depth, false, {}});
    r.tokens.push_back({true, depth, false, std::move(leaf.payload)});
    return r;
  }

  double detail_split_bits(int depth, bool split) {
    detail::BitCounter bc;
    detail::write_split(bc, est_, depth, split);
    return bc.bits();
  }

  void evaluate_leaf(int x, int y, int depth, PuModeSet allowed, Candidate& best) {
    const double flag_bits = depth < kMaxDepth ? detail_split_bits(depth, false) : 0.0;
    CodingUnit cu;
    cu.x = x;
    cu.y = y;
    cu.depth = depth;

    if (allowed.contains(PuMode::Part2Nx2N)) {
      cu.pred = PredKind::Intra;
      cu.pu_mode = PuMode::Part2Nx2N;
      for (int m = 0; m < 4; ++m) {
        cu.intra_modes = {};
        cu.intra_modes[0] = static_cast<IntraMode>(m);
        try_candidate(cu, flag_bits, best);
      }
    }
    if (depth == kMaxDepth && allowed.contains(PuMode::PartNxN)) {
      cu.pred = PredKind::Intra;
      cu.pu_mode = PuMode::PartNxN;
      detail::choose_nxn_modes(cu, recon_, src_.luma());
      try_candidate(cu, flag_bits, best);
    }
    if (!sad_) return;
    cu.intra_modes = {};
    cu.pred = PredKind::Inter;
    for (PuMode m : kAllPuModes) {
      if (!pu_mode_allowed(m, depth, PredKind::Inter) || !allowed.contains(m)) continue;
      cu.pu_mode = m;
      cu.motion = {};
      for (int i = 0; i < num_pus(m); ++i) {
        const PuRect r = pu_rect(m, cu.size(), i);
        const auto b = sad_->search(x - ctu_x0_ + r.x, y - ctu_y0_ + r.y, r.w, r.h, lambda_motion_);
        cu.motion[static_cast<std::size_t>(i)] = {b.ref_slot, b.mv};
      }
      try_candidate(cu, flag_bits, best);
    }
  }

  void try_candidate(const CodingUnit& cu, double flag_bits, Candidate& best) {
    ++stats_.rd_evaluations;
    Candidate c;
    c.payload.cu = cu;
    double distortion = 0.0;
    for (int comp = 0; comp < 3; ++comp) {
      const auto k = static_cast<std::size_t>(comp);
      const detail::BlockGeom g = detail::component_block(cu, comp, src_.chroma);
      detail::predict_component(cu, comp, recon_, refs_, c.pred[k]);
      std::vector<std::int32_t> residual(c.pred[k].size());
      const Plane& src = src_.planes[k];
      for (int yy = 0; yy < g.h; ++yy) {
        for (int xx = 0; xx < g.w; ++xx) {
          const std::size_t i = static_cast<std::size_t>(yy) * g.w + xx;
          residual[i] = src.at(g.x + xx, g.y + yy) - c.pred[k][i];
        }
      }
      c.payload.tu_w[k] = g.w;
      c.payload.tu_h[k] = g.h;
      c.payload.levels[k] = quantize(forward_transform(residual, g.w, g.h), cfg_.qp);
      const auto& lv = c.payload.levels[k];
      c.payload.cbf[k] = std::any_of(lv.begin(), lv.end(), [](std::int32_t v) { return v != 0; });

      std::vector<std::int32_t> recon_residual;
      if (c.payload.cbf[k]) recon_residual = inverse_transform(dequantize(lv, cfg_.qp), g.w, g.h);
      const int max_value = src_.max_value();
      double sse = 0.0;
      for (std::size_t i = 0; i < residual.size(); ++i) {
        const std::int32_t pred = c.pred[k][i];
        const std::int32_t rec = std::clamp(pred + (c.payload.cbf[k] ? recon_residual[i] : 0), 0, max_value);
        const double e = static_cast<double>(residual[i] + pred - rec);
        sse += e * e;
      }
      distortion += comp == 0 ? sse : 0.25 * sse;
    }
    detail::BitCounter bc;
    detail::write_cu(bc, est_, c.payload, !refs_.empty(), static_cast<int>(refs_.size()));
    c.cost = distortion + cfg_.lambda * (bc.bits() + flag_bits);
    if (c.cost < best.cost) best = std::move(c);
  }

  void store(const Candidate& c) {
    for (int comp = 0; comp < 3; ++comp) {
      const auto k = static_cast<std::size_t>(comp);
      const detail::BlockGeom g = detail::component_block(c.payload.cu, comp, recon_.chroma);
      detail::reconstruct_block(recon_.planes[k], g, c.pred[k], c.payload.levels[k], c.payload.cbf[k], cfg_.qp,
                                recon_.max_value());
    }
  }

  int width_;
  int height_;
  int padded_w_;
  int padded_h_;
  Picture src_;
  Picture recon_;
  std::vector<const Picture*> refs_;
  RdoConfig cfg_;
  double lambda_motion_;
  const DepthPrediction* prediction_;
  DepthMap depth_;
  detail::ContextSet live_;
  detail::ContextSet est_;
  std::optional<CtuSadTable> sad_;
  int ctu_x0_ = 0;
  int ctu_y0_ = 0;
  EncodeStats stats_;
};

}  // namespace

EncodedView encode_view(const Picture& view, std::span<const Picture* const> refs, const RdoConfig& config,
                        const DepthPrediction* prediction, int coding_index) {
  check(view.bit_depth == 8 || view.bit_depth == 10, ErrorCode::UnsupportedBitDepth, "bit depth must be 8 or 10");
  check(config.qp >= 0 && config.qp <= kMaxQp, ErrorCode::InvalidConfig, "qp out of range");
  check(static_cast<int>(refs.size()) <= kMaxRefsPerView, ErrorCode::InvalidConfig, "too many references");
  check(coding_index >= 0 && coding_index <= 0xFFFF, ErrorCode::InvalidConfig, "coding index out of range");
  for (const Picture* ref : refs) {
    check(ref != nullptr && ViewFormat::of(*ref) == ViewFormat::of(view), ErrorCode::DimensionMismatch,
          "reference format differs from the view");
  }
  if (prediction != nullptr) {
    check(prediction->ctus_wide() == (view.width + kCtuSize - 1) / kCtuSize &&
              prediction->ctus_high() == (view.height + kCtuSize - 1) / kCtuSize,
          ErrorCode::DimensionMismatch, "depth prediction does not match the view size");
  }
  ViewEncoder enc(view, refs, config, prediction);
  return enc.run(coding_index);
}

}  // namespace lfc
