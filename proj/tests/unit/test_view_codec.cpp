#include <catch_amalgamated.hpp>

#include <random>

#include "lfc/codec/transform.hpp"
#include "lfc/codec/view_codec.hpp"
#include "lfc/error.hpp"
#include "lfc/metrics.hpp"
#include "lfc/synthetic.hpp"
#include "unit/test_support.hpp"

using namespace lfc;

namespace {

using Refs = std::vector<const Picture*>;

DecodedView decode(const EncodedView& ev, const Picture& like, const Refs& refs) {
  return decode_view(ev.segment, ViewFormat::of(like), refs);
}

double rd_cost(const Picture& orig, const EncodedView& ev, int qp) {
  double sse = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    double s = 0.0;
    for (std::size_t i = 0; i < orig.planes[c].samples.size(); ++i) {
      const double d = static_cast<double>(orig.planes[c].samples[i]) - ev.recon.planes[c].samples[i];
      s += d * d;
    }
    sse += c == 0 ? s : 0.25 * s;
  }
  return sse + lambda_for_qp(qp) * 8.0 * static_cast<double>(ev.segment.size());
}

Picture checkerboard(int w, int h) {
  Picture p(w, h, 8, ChromaFormat::k444, ColorSpace::YCbCr);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) p.luma().at(x, y) = ((x / 8 + y / 8) % 2) ? 200 : 40;
  for (int c = 1; c < 3; ++c) std::fill(p.planes[c].samples.begin(), p.planes[c].samples.end(), std::uint16_t{128});
  return p;
}

}  // namespace

TEST_CASE("intra and inter round trips across formats") {
  std::mt19937 rng(11);
  const std::array<std::pair<int, int>, 6> sizes = {{{64, 64}, {72, 40}, {8, 8}, {130, 66}, {17, 9}, {96, 24}}};
  int i = 0;
  for (const auto fmt : {ChromaFormat::k444, ChromaFormat::k422, ChromaFormat::k420}) {
    for (const int bd : {8, 10}) {
      const auto [w, h] = sizes[static_cast<std::size_t>(i++ % sizes.size())];
      const int hi = (1 << bd) - 1;
      const Picture ref0 = test::random_picture(w, h, fmt, rng(), 0, hi, bd);
      Picture ref1 = test::textured_picture(w, h, fmt, rng());
      ref1.bit_depth = bd;
      Picture view = ref0;
      for (auto& pl : view.planes)
        for (auto& s : pl.samples) s = static_cast<std::uint16_t>(std::min(hi, s + 3));
      for (const int qp : {0, 22, 37, 51}) {
        const auto intra = encode_view(view, {}, RdoConfig::for_qp(qp));
        const auto di = decode(intra, view, {});
        CHECK(di.recon == intra.recon);
        CHECK(di.depth == intra.depth);
        CHECK(di.header.qp == qp);
        const Refs refs = {&ref1, &ref0};
        const auto inter = encode_view(view, refs, RdoConfig::for_qp(qp, 4), nullptr, 9);
        const auto dp = decode(inter, view, refs);
        CHECK(dp.recon == inter.recon);
        CHECK(dp.header.coding_index == 9);
        CHECK(inter.recon.width == w);
        CHECK(inter.recon.planes[1].width == chroma_width(w, fmt));
      }
    }
  }
}

TEST_CASE("lossless-ish at QP 0 and coarse at QP 51") {
  const Picture v = test::textured_picture(64, 64, ChromaFormat::k420, 21);
  const auto fine = encode_view(v, {}, RdoConfig::for_qp(0));
  const auto coarse = encode_view(v, {}, RdoConfig::for_qp(51));
  CHECK(psnr(v.luma(), fine.recon.luma(), 8) > 45.0);
  CHECK(coarse.segment.size() < fine.segment.size());
}

TEST_CASE("flat picture") {
  Picture flat(80, 48, 8, ChromaFormat::k420, ColorSpace::YCbCr);
  for (auto& pl : flat.planes) std::fill(pl.samples.begin(), pl.samples.end(), std::uint16_t{128});
  const auto ev = encode_view(flat, {}, RdoConfig::for_qp(32));
  CHECK(ev.recon == flat);
  CHECK(ev.segment.size() < 40);
}

TEST_CASE("identical reference collapses to skip-like CUs") {
  const Picture v = test::textured_picture(128, 64, ChromaFormat::k420, 31);
  const auto intra = encode_view(v, {}, RdoConfig::for_qp(27));
  const Refs refs = {&intra.recon};
  const auto inter = encode_view(intra.recon, refs, RdoConfig::for_qp(27));
  for (const auto& cu : inter.cus) {
    CHECK(cu.pred == PredKind::Inter);
    CHECK(cu.pu_mode == PuMode::Part2Nx2N);
    CHECK(cu.motion[0].mv == MotionVector{0, 0});
    CHECK(cu.depth == 0);
  }
  CHECK(inter.recon == intra.recon);
  CHECK(inter.segment.size() <= intra.segment.size() * 2 / 100);
}

TEST_CASE("checkerboard splits to the finest depth") {
  const Picture cb = checkerboard(64, 64);
  const int qp = 32;
  const auto free = encode_view(cb, {}, RdoConfig::for_qp(qp));
  for (int cy = 0; cy < free.depth.cells_high(); ++cy)
    for (int cx = 0; cx < free.depth.cells_wide(); ++cx) CHECK(free.depth.cell(cx, cy).depth == 3);
  // Exhaustive oracle over depth-restricted searches of the same CTU.
  double best_forced = 1e300;
  for (int d = 0; d <= kMaxDepth; ++d) {
    DepthMap m(64, 64);
    for (int y = 0; y < 64; y += cu_size(d))
      for (int x = 0; x < 64; x += cu_size(d)) m.record(CodingUnit{x, y, d});
    const DepthMap* maps[] = {&m};
    const DepthPrediction pred(maps, 64, 64);
    const auto forced = encode_view(cb, {}, RdoConfig::for_qp(qp), &pred);
    CHECK(decode(forced, cb, {}).recon == forced.recon);
    best_forced = std::min(best_forced, rd_cost(cb, forced, qp));
    if (d == kMaxDepth) CHECK(forced.segment == free.segment);
  }
  CHECK(rd_cost(cb, free, qp) <= best_forced * 1.001);
}

TEST_CASE("rate falls and distortion rises with QP") {
  const Picture v = test::textured_picture(96, 64, ChromaFormat::k420, 41);
  std::size_t prev_bytes = SIZE_MAX;
  double prev_psnr = 1e9;
  for (int qp = 12; qp <= 37; qp += 5) {
    const auto ev = encode_view(v, {}, RdoConfig::for_qp(qp));
    const double p = psnr(v.luma(), ev.recon.luma(), 8);
    CHECK(ev.segment.size() < prev_bytes);
    CHECK(p < prev_psnr);
    prev_bytes = ev.segment.size();
    prev_psnr = p;
  }
}

TEST_CASE("restricted search equals full search when chosen depths are predicted") {
  SyntheticConfig cfg;
  cfg.rows = 3;
  cfg.cols = 3;
  cfg.width = 128;
  cfg.height = 64;
  const ViewGrid g = generate_synthetic(cfg);
  for (int i = 1; i < 9; ++i) {
    const Picture& view = g.views()[static_cast<std::size_t>(i)];
    const Refs refs = {&g.views()[static_cast<std::size_t>(i - 1)]};
    const auto full = encode_view(view, refs, RdoConfig::for_qp(32));
    const DepthMap m = test::chosen_depths(full, view.width, view.height);
    const DepthMap* maps[] = {&m};
    const DepthPrediction pred(maps, view.width, view.height);
    const auto restricted = encode_view(view, refs, RdoConfig::for_qp(32), &pred);
    CHECK(restricted.segment == full.segment);
    CHECK(restricted.stats.rd_evaluations < full.stats.rd_evaluations);
  }
}

TEST_CASE("decoder error handling") {
  const Picture v = test::textured_picture(64, 32, ChromaFormat::k420, 51);
  const Picture r = test::textured_picture(64, 32, ChromaFormat::k420, 52);
  const Refs refs = {&r};
  const auto ev = encode_view(v, refs, RdoConfig::for_qp(30), nullptr, 3);
  const ViewFormat fmt = ViewFormat::of(v);

  auto code_of = [&](std::vector<std::uint8_t> seg, const Refs& rr) -> std::optional<ErrorCode> {
    try {
      decode_view(seg, fmt, rr);
    } catch (const Error& e) {
      return e.code();
    }
    return std::nullopt;
  };
  CHECK(code_of(ev.segment, {}) == ErrorCode::RefMismatch);
  CHECK(code_of(ev.segment, {&r, &r}) == ErrorCode::RefMismatch);
  CHECK(code_of({ev.segment.begin(), ev.segment.begin() + 5}, refs) == ErrorCode::CorruptStream);
  CHECK(code_of({ev.segment.begin(), ev.segment.end() - 1}, refs) == ErrorCode::CorruptStream);
  auto longer = ev.segment;
  longer.push_back(0);
  CHECK(code_of(longer, refs) == ErrorCode::CorruptStream);
  auto no_term = ev.segment;
  no_term.back() ^= 0xFF;
  CHECK(code_of(no_term, refs) == ErrorCode::CorruptStream);

  const auto hdr = parse_segment_header(ev.segment);
  CHECK(hdr.coding_index == 3);
  CHECK(hdr.qp == 30);
  CHECK(hdr.payload_size + kSegmentHeaderSize == ev.segment.size());

  // Flipped payload bytes either fail cleanly or decode to a picture of the right shape.
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto bad = ev.segment;
    const std::size_t at = kSegmentHeaderSize + rng() % (bad.size() - kSegmentHeaderSize - 2);
    bad[at] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    try {
      const auto d = decode_view(bad, fmt, refs);
      CHECK(d.recon.width == 64);
    } catch (const Error& e) {
      // the reference count sits at the start of the payload
      CHECK((e.code() == ErrorCode::CorruptStream || e.code() == ErrorCode::RefMismatch));
    }
  }
}

TEST_CASE("encoder rejects bad configurations") {
  const Picture v = test::textured_picture(16, 16, ChromaFormat::k420, 61);
  CHECK_THROWS_AS(encode_view(v, {}, RdoConfig::for_qp(52)), Error);
  std::vector<const Picture*> many(kMaxRefsPerView + 1, &v);
  CHECK_THROWS_AS(encode_view(v, many, RdoConfig::for_qp(30)), Error);
  const Picture other = test::textured_picture(32, 16, ChromaFormat::k420, 62);
  const Refs mismatched = {&other};
  CHECK_THROWS_AS(encode_view(v, mismatched, RdoConfig::for_qp(30)), Error);
}
