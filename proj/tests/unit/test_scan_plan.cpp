#include <catch_amalgamated.hpp>

#include <set>

#include "lfc/error.hpp"
#include "lfc/reference_graph.hpp"
#include "lfc/scan_plan.hpp"

using namespace lfc;

namespace {

std::vector<GridPos> positions(const ScanPlan& plan, Quadrant q) {
  std::vector<GridPos> out;
  for (int i : plan.quadrant_members(q)) out.push_back(plan[static_cast<std::size_t>(i)].pos);
  return out;
}

bool visits_each_once(const ScanPlan& plan) {
  std::set<std::pair<int, int>> seen;
  for (const auto& e : plan) seen.insert({e.pos.row, e.pos.col});
  return seen.size() == plan.size() && plan.size() == static_cast<std::size_t>(plan.rows()) * plan.cols();
}

bool adjacent(GridPos a, GridPos b) { return std::abs(a.row - b.row) + std::abs(a.col - b.col) == 1; }

}  // namespace

TEST_CASE("proposed plan on 13x13") {
  const ScanPlan plan = plan_proposed(13, 13);
  REQUIRE(plan.size() == 169);
  CHECK(plan[0].quadrant == Quadrant::Center);
  CHECK(plan[0].pos == GridPos{6, 6});
  CHECK(visits_each_once(plan));
  const std::array<GridPos, 4> corners = {{{0, 0}, {0, 12}, {12, 12}, {12, 0}}};
  for (int q = 0; q < 4; ++q) {
    const auto members = plan.quadrant_members(quadrant_from_index(q));
    REQUIRE(members.size() == 42);
    const auto pos = positions(plan, quadrant_from_index(q));
    CHECK(pos.back() == corners[static_cast<std::size_t>(q)]);
    CHECK(adjacent(pos.front(), plan[0].pos));
    for (std::size_t i = 1; i < pos.size(); ++i) CHECK(adjacent(pos[i - 1], pos[i]));
  }
}

TEST_CASE("proposed plan on 5x5 matches hand-enumerated serpentines") {
  const ScanPlan plan = plan_proposed(5, 5);
  using P = std::vector<GridPos>;
  CHECK(positions(plan, Quadrant::Q0) == P{{1, 2}, {0, 2}, {0, 1}, {1, 1}, {1, 0}, {0, 0}});
  CHECK(positions(plan, Quadrant::Q1) == P{{2, 3}, {2, 4}, {1, 4}, {1, 3}, {0, 3}, {0, 4}});
  CHECK(positions(plan, Quadrant::Q2) == P{{3, 2}, {4, 2}, {4, 3}, {3, 3}, {3, 4}, {4, 4}});
  CHECK(positions(plan, Quadrant::Q3) == P{{2, 1}, {2, 0}, {3, 0}, {3, 1}, {4, 1}, {4, 0}});
}

TEST_CASE("proposed plan on odd grids is a pinwheel of serpentines") {
  for (int rows = 3; rows <= 15; rows += 2)
    for (int cols = 3; cols <= 15; cols += 2) {
      const ScanPlan plan = plan_proposed(rows, cols);
      CHECK(visits_each_once(plan));
      for (int q = 0; q < 4; ++q) {
        const auto pos = positions(plan, quadrant_from_index(q));
        REQUIRE(!pos.empty());
        CHECK(adjacent(pos.front(), plan[0].pos));
        for (std::size_t i = 1; i < pos.size(); ++i) CHECK(adjacent(pos[i - 1], pos[i]));
      }
      if (rows == cols) {
        CHECK(plan.quadrant_members(Quadrant::Q0).size() == plan.quadrant_members(Quadrant::Q3).size());
      }
    }
  CHECK_THROWS_AS(plan_proposed(4, 5), Error);
}

TEST_CASE("conventional scans") {
  const ScanPlan raster = plan_conventional(3, 4, ScanKind::Raster);
  CHECK(raster[5].pos == GridPos{1, 1});
  const ScanPlan serp = plan_conventional(3, 4, ScanKind::Serpentine);
  CHECK(serp[4].pos == GridPos{1, 3});
  CHECK(serp[7].pos == GridPos{1, 0});
  const ScanPlan zz = plan_conventional(4, 4, ScanKind::Zigzag);
  using P = std::vector<GridPos>;
  P first;
  for (int i = 0; i < 10; ++i) first.push_back(zz[static_cast<std::size_t>(i)].pos);
  CHECK(first == P{{0, 0}, {0, 1}, {1, 0}, {2, 0}, {1, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 1}, {3, 0}});
  const ScanPlan sp = plan_conventional(3, 3, ScanKind::Spiral);
  CHECK(sp[0].pos == GridPos{1, 1});
  for (const auto kind : {ScanKind::Raster, ScanKind::Serpentine, ScanKind::Zigzag, ScanKind::Spiral}) {
    for (int n : {1, 3, 5, 13}) {
      const ScanPlan p = plan_conventional(n, n, kind);
      CHECK(visits_each_once(p));
      for (const auto& e : p) CHECK(e.quadrant == Quadrant::Q0);
    }
  }
  const ScanPlan sp13 = plan_conventional(13, 13, ScanKind::Spiral);
  for (std::size_t i = 1; i < sp13.size(); ++i) CHECK(adjacent(sp13[i - 1].pos, sp13[i].pos));
  CHECK_THROWS_AS(plan_conventional(4, 4, ScanKind::Spiral), Error);
  CHECK(visits_each_once(plan_conventional(5, 9, ScanKind::Zigzag)));
}

TEST_CASE("coding_index_of inverts the plan") {
  const ScanPlan plan = plan_proposed(7, 9);
  for (const auto& e : plan) CHECK(plan.coding_index_of(e.pos) == e.coding_index);
}

TEST_CASE("reference distance: proposed beats serpentine low-delay") {
  const ScanPlan prop = plan_proposed(13, 13);
  const ScanPlan serp = plan_conventional(13, 13, ScanKind::Serpentine);
  const double a = mean_reference_distance(prop, build_proposed(prop));
  const double b = mean_reference_distance(serp, build_low_delay(serp));
  CHECK(a < b);
  CHECK(a > 0.0);
}

TEST_CASE("mean_reference_distance oracle") {
  // Raster 1x4 with low-delay refs: view i references {i-1, i-3, ...} clamped.
  const ScanPlan plan = plan_conventional(1, 4, ScanKind::Raster);
  const ReferenceGraph g = build_low_delay(plan);
  // view1: {0} -> 1; view2: {1,0} -> 1.5; view3: {2,0} -> 2
  CHECK(mean_reference_distance(plan, g) == Catch::Approx((1.0 + 1.5 + 2.0) / 3.0));
  const ScanPlan single = make_plan(ScanKind::Proposed, 1, 1);
  CHECK(mean_reference_distance(single, build_proposed(single)) == 0.0);
}
