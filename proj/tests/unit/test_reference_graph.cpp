#include <catch_amalgamated.hpp>

#include <algorithm>

#include "lfc/error.hpp"
#include "lfc/reference_graph.hpp"

using namespace lfc;

TEST_CASE("low-delay worked examples") {
  const ScanPlan plan = plan_conventional(5, 5, ScanKind::Raster);
  const ReferenceGraph g = build_low_delay(plan);
  CHECK(g.refs(0).empty());
  CHECK(g.refs(1) == std::vector<int>{0});
  CHECK(g.refs(5) == std::vector<int>{4, 2, 0});
  CHECK(g.refs(15) == std::vector<int>{14, 12, 8, 4});
  CHECK(g.refs(24) == std::vector<int>{23, 21, 17, 13});
  const ReferenceGraph g2 = build_low_delay(plan, 2);
  CHECK(g2.refs(15) == std::vector<int>{14, 12});
}

TEST_CASE("low-delay on a quadrant plan stays inside quadrants") {
  const ScanPlan plan = plan_proposed(13, 13);
  const ReferenceGraph g = build_low_delay(plan);
  CHECK(respects_quadrants(plan, g));
  for (int q = 0; q < 4; ++q) {
    const auto m = plan.quadrant_members(quadrant_from_index(q));
    CHECK(g.refs(m[0]) == std::vector<int>{0});
    // local index 15 inside the quadrant
    CHECK(g.refs(m[15]) == std::vector<int>{m[14], m[12], m[8], m[4]});
  }
}

TEST_CASE("proposed references") {
  const ScanPlan plan = plan_proposed(13, 13);
  const ReferenceGraph g = build_proposed(plan);
  CHECK(respects_quadrants(plan, g));
  CHECK(g.refs(0).empty());
  for (int q = 0; q < 4; ++q) {
    const auto m = plan.quadrant_members(quadrant_from_index(q));
    CHECK(g.refs(m[0]) == std::vector<int>{0});
  }
  for (std::size_t i = 1; i < plan.size(); ++i) {
    const auto& r = g.refs(static_cast<int>(i));
    CHECK(!r.empty());
    CHECK(r.size() <= 4);
    // nearest first
    for (std::size_t k = 1; k < r.size(); ++k)
      CHECK(grid_distance(plan[i].pos, plan[static_cast<std::size_t>(r[k - 1])].pos) <=
            grid_distance(plan[i].pos, plan[static_cast<std::size_t>(r[k])].pos));
    // the first reference is a 4-neighbour: serpentines always have one coded
    CHECK(grid_distance(plan[i].pos, plan[static_cast<std::size_t>(r[0])].pos) == 1.0);
  }
}

TEST_CASE("proposed references on 3x3") {
  const ScanPlan plan = plan_proposed(3, 3);
  const ReferenceGraph g = build_proposed(plan);
  const auto m = plan.quadrant_members(Quadrant::Q0);
  REQUIRE(m.size() == 2);
  CHECK(plan[static_cast<std::size_t>(m[1])].pos == GridPos{0, 0});
  CHECK(g.refs(m[1]) == std::vector<int>{m[0], 0});
}

TEST_CASE("proposed references against a brute-force oracle") {
  const ScanPlan plan = plan_proposed(7, 7);
  const ReferenceGraph g = build_proposed(plan, 3);
  for (std::size_t i = 1; i < plan.size(); ++i) {
    std::vector<std::pair<double, int>> cand;  // (distance, -index): recent first on ties
    for (std::size_t j = 0; j < i; ++j) {
      if (j == 0 || plan[j].quadrant == plan[i].quadrant)
        cand.push_back({grid_distance(plan[i].pos, plan[j].pos), -static_cast<int>(j)});
    }
    std::sort(cand.begin(), cand.end());
    std::vector<int> expect;
    for (std::size_t k = 0; k < cand.size() && k < 3; ++k) expect.push_back(-cand[k].second);
    CHECK(g.refs(static_cast<int>(i)) == expect);
  }
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(ReferenceGraph({{}, {1}}, 4), Error);
  CHECK_THROWS_AS(ReferenceGraph({{}}, 8), Error);
  CHECK(build_proposed(plan_proposed(13, 13), 7).refs(168).size() == 7);
  CHECK(build_low_delay(plan_conventional(5, 5, ScanKind::Raster), 7).refs(20).size() == 4);
  CHECK(parse_ref_kind("lowdelay") == RefKind::LowDelay);
  CHECK_THROWS_AS(parse_ref_kind("nope"), Error);
}
