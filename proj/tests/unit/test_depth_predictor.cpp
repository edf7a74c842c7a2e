#include <catch_amalgamated.hpp>

#include <algorithm>

#include "lfc/depth_predictor.hpp"
#include "lfc/error.hpp"

using namespace lfc;

namespace {

DepthMap uniform_map(int w, int h, int depth, PuMode mode = PuMode::Part2Nx2N) {
  DepthMap m(w, h);
  for (int y = 0; y < h; y += cu_size(depth))
    for (int x = 0; x < w; x += cu_size(depth)) {
      CodingUnit cu{x, y, depth};
      cu.pu_mode = mode;
      m.record(cu);
    }
  return m;
}

bool same_set(PuModeSet s, std::initializer_list<PuMode> modes) {
  for (PuMode m : kAllPuModes) {
    const bool want = std::find(modes.begin(), modes.end(), m) != modes.end();
    if (s.contains(m) != want) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("adjusted depth") {
  CHECK(adjusted_depth(2, PuMode::Part2Nx2N) == 2);
  CHECK(adjusted_depth(2, PuMode::PartNx2N) == 3);
  CHECK(adjusted_depth(0, PuMode::Part2NxnU) == 1);
  CHECK(adjusted_depth(3, PuMode::PartNxN) == 4);
  const DepthMap m = uniform_map(64, 64, 3, PuMode::PartNxN);
  CHECK(m.adjusted(0, 0) == 4);
}

TEST_CASE("worked example: co-located depths 1, 2, 3, 3") {
  const DepthMap a = uniform_map(64, 64, 1), b = uniform_map(64, 64, 2), c = uniform_map(64, 64, 3),
                 d = uniform_map(64, 64, 3);
  const DepthMap* maps[] = {&a, &b, &c, &d};
  const auto p = predict(maps, 0, 0, 64, 64);
  for (const auto& r : p.cells) CHECK(r == DepthRange{1, 3});
  const DepthRange r = p.cell(3, 3);
  CHECK(same_set(allowed_modes(r, 0), {PuMode::Part2Nx2N}));
  CHECK(allowed_modes(r, 1) == PuModeSet::all());
  CHECK(allowed_modes(r, 3) == PuModeSet::all());

  // The same four depths as the four 32x32 cells of one co-located CTU.
  DepthMap one(64, 64);
  one.record(CodingUnit{0, 0, 1});
  for (int y = 0; y < 32; y += 16)
    for (int x = 32; x < 64; x += 16) one.record(CodingUnit{x, y, 2});
  for (int y = 32; y < 64; y += 8)
    for (int x = 0; x < 64; x += 8) one.record(CodingUnit{x, y, 3});
  const DepthMap* single[] = {&one};
  const DepthPrediction pred(single, 64, 64);
  CHECK(pred.range_for(0, 0, 0, 0, 64) == DepthRange{1, 3});
  CHECK(pred.range_for(0, 0, 0, 0, 32) == DepthRange{1, 1});
  CHECK(pred.range_for(0, 0, 0, 32, 32) == DepthRange{3, 3});
}

TEST_CASE("worked example: all co-located cells at depth 1") {
  const DepthMap a = uniform_map(64, 64, 1);
  const DepthMap* maps[] = {&a, &a, &a, &a};
  const auto p = predict(maps, 0, 0, 64, 64);
  const DepthRange r = p.cell(0, 0);
  CHECK(r == DepthRange{1, 1});
  CHECK(same_set(allowed_modes(r, 0), {PuMode::Part2Nx2N}));
  CHECK(allowed_modes(r, 1) == PuModeSet::all());
  CHECK(allowed_modes(r, 2).empty());
  CHECK(allowed_modes(r, 3).empty());
}

TEST_CASE("non-2Nx2N modes raise the range and clamp at 3") {
  const DepthMap a = uniform_map(64, 64, 1, PuMode::Part2NxN);
  const DepthMap b = uniform_map(64, 64, 3, PuMode::PartNxN);
  const DepthMap* maps[] = {&a, &b};
  CHECK(predict(maps, 0, 0, 64, 64).cell(0, 0) == DepthRange{2, 3});
}

TEST_CASE("no co-located maps or border CTUs give the full range") {
  const auto none = predict({}, 0, 0, 64, 64);
  for (const auto& r : none.cells) CHECK(r == kFullDepthRange);
  const DepthMap a = uniform_map(100, 64, 1);
  const DepthMap* maps[] = {&a};
  const DepthPrediction pred(maps, 100, 64);
  CHECK(pred.ctus_wide() == 2);
  CHECK(pred.ctu(0, 0).cell(0, 0) == DepthRange{1, 1});
  CHECK(pred.ctu(1, 0).cell(0, 0) == kFullDepthRange);
  const DepthMap small(32, 32);
  const DepthMap* bad[] = {&small};
  CHECK_THROWS_AS(DepthPrediction(bad, 64, 64), Error);
}

TEST_CASE("range invariant and mode histogram") {
  DepthMap m(64, 64);
  m.record(CodingUnit{0, 0, 0});
  CodingUnit cu{0, 0, 1};
  cu.pu_mode = PuMode::PartNx2N;
  m.record(cu);
  const DepthMap* maps[] = {&m};
  for (const auto& r : predict(maps, 0, 0, 64, 64).cells) CHECK(r.min <= r.max);
  const std::vector<DepthMap> all = {m};
  const auto h = pu_histogram(all);
  CHECK(h[0] == Catch::Approx(0.5));
  CHECK(h[static_cast<int>(PuMode::PartNx2N)] == Catch::Approx(0.5));
}
