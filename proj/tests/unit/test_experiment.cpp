#include <catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "lfc/error.hpp"
#include "lfc/experiment.hpp"
#include "lfc/synthetic.hpp"

using namespace lfc;

TEST_CASE("arm parsing") {
  CHECK(parse_arm("proposed") == Arm{ScanKind::Proposed, RefKind::Proposed});
  CHECK(parse_arm("raster") == Arm{ScanKind::Raster, RefKind::LowDelay});
  CHECK(parse_arm("spiral+proposed") == Arm{ScanKind::Spiral, RefKind::Proposed});
  CHECK(arm_name(Arm{ScanKind::Zigzag, RefKind::LowDelay}) == "zigzag+lowdelay");
  CHECK_THROWS_AS(parse_arm("diagonal"), Error);
  CHECK(default_arms().size() == 5);
}

TEST_CASE("synthetic generator") {
  SyntheticConfig cfg;
  cfg.rows = 3;
  cfg.cols = 5;
  cfg.width = 24;
  cfg.height = 16;
  const ViewGrid a = generate_synthetic(cfg);
  CHECK(a.rows() == 3);
  CHECK(a.cols() == 5);
  CHECK(a.chroma() == ChromaFormat::k420);
  CHECK(a == generate_synthetic(cfg));
  cfg.seed = 2;
  CHECK_FALSE(a == generate_synthetic(cfg));
  cfg.bit_depth = 10;
  const ViewGrid t = generate_synthetic(cfg);
  for (const auto& v : t.views())
    for (auto s : v.luma().samples) CHECK(s <= 1023);

  const auto suite = synthetic_suite(13, 13, 64, 64);
  REQUIRE(suite.size() == 3);
  std::set<std::uint64_t> seeds;
  for (const auto& c : suite) seeds.insert(c.seed);
  CHECK(seeds.size() == 3);
}

TEST_CASE("compare and ablation on a small grid") {
  SyntheticConfig cfg;
  cfg.rows = 5;
  cfg.cols = 5;
  cfg.width = 64;
  cfg.height = 64;
  const ViewGrid g = generate_synthetic(cfg);

  CompareConfig cc;
  cc.arms = {parse_arm("proposed"), parse_arm("zigzag")};
  const CompareResult res = run_compare(g, cc);
  REQUIRE(res.curves.size() == 2);
  REQUIRE(res.anchor.has_value());
  CHECK(*res.anchor == 1);
  CHECK(res.bd[1]->bd_rate_pct == Catch::Approx(0.0).margin(1e-9));
  REQUIRE(res.bd[0].has_value());
  for (const auto& c : res.curves) {
    CHECK(c.curve.size() == 4);
    for (std::size_t i = 1; i < c.curve.size(); ++i) CHECK(c.curve[i].bpp < c.curve[i - 1].bpp);
  }
  std::stringstream table, rd;
  write_bd_table(table, {{"lf", res}});
  write_compare_rd_csv(rd, {{"lf", res}});
  CHECK(table.str().find("Average") != std::string::npos);
  CHECK(rd.str().find("lf,proposed+proposed,22,") != std::string::npos);

  AblationConfig ac;
  ac.timing = false;
  const AblationResult ab = run_depth_ablation(g, ac);
  CHECK(ab.full.size() == 4);
  CHECK(ab.rd_evaluations_fast < ab.rd_evaluations_full);
  std::stringstream csv;
  write_ablation_csv(csv, {{"lf", ab}});
  CHECK(csv.str().find("lf,") != std::string::npos);
}

TEST_CASE("compare with rate targets") {
  SyntheticConfig cfg;
  cfg.rows = 3;
  cfg.cols = 3;
  cfg.width = 32;
  cfg.height = 32;
  const ViewGrid g = generate_synthetic(cfg);
  CompareConfig cc;
  cc.arms = {parse_arm("proposed"), parse_arm("zigzag")};
  cc.target_bpps = {0.5, 0.8, 1.2, 1.8};
  const CompareResult res = run_compare(g, cc);
  for (const auto& c : res.curves) {
    REQUIRE(c.curve.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(c.curve[i].bpp <= 1.1 * cc.target_bpps[i] + 1e-12);
  }
}
