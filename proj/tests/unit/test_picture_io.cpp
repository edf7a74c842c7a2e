#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "lfc/error.hpp"
#include "lfc/view_grid.hpp"
#include "unit/test_support.hpp"

using namespace lfc;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lfc_unit_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Picture rgb_picture(int w, int h, int bit_depth, std::uint64_t seed) {
  Picture p(w, h, bit_depth, ChromaFormat::k444, ColorSpace::RGB);
  std::mt19937 rng(static_cast<unsigned>(seed));
  std::uniform_int_distribution<int> d(0, (1 << bit_depth) - 1);
  for (auto& pl : p.planes)
    for (auto& s : pl.samples) s = static_cast<std::uint16_t>(d(rng));
  return p;
}

// Hand-written 16-bit big-endian P6 with maxval 65535.
void write_ppm16(const fs::path& path, const Picture& p) {
  std::ofstream os(path, std::ios::binary);
  os << "P6\n" << p.width << " " << p.height << "\n65535\n";
  for (int y = 0; y < p.height; ++y)
    for (int x = 0; x < p.width; ++x)
      for (int c = 0; c < 3; ++c) {
        const auto v = p.planes[c].at(x, y);
        os.put(static_cast<char>(v >> 8));
        os.put(static_cast<char>(v & 0xFF));
      }
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an lfc::Error");
  return ErrorCode::Io;
}

ViewGrid indexed_grid(int rows, int cols, int w = 8, int h = 8) {
  std::vector<Picture> views;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      Picture p(w, h, 8, ChromaFormat::k444, ColorSpace::YCbCr);
      for (auto& pl : p.planes) std::fill(pl.samples.begin(), pl.samples.end(), static_cast<std::uint16_t>(r * 16 + c));
      views.push_back(std::move(p));
    }
  return ViewGrid(rows, cols, std::move(views));
}

}  // namespace

TEST_CASE("load_grid reads 16-bit PPMs carrying 10-bit samples") {
  const auto dir = scratch_dir("ppm16");
  std::ofstream manifest(dir / "manifest.txt");
  std::vector<Picture> expected;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      expected.push_back(rgb_picture(625, 434, 10, static_cast<std::uint64_t>(r * 3 + c)));
      const std::string name = "v" + std::to_string(r) + "_" + std::to_string(c) + ".ppm";
      write_ppm16(dir / name, expected.back());
      manifest << r << " " << c << " " << name << "\n";
    }
  manifest.close();
  const ViewGrid g = load_grid(dir / "manifest.txt");
  CHECK(g.rows() == 3);
  CHECK(g.cols() == 3);
  CHECK(g.width() == 625);
  CHECK(g.height() == 434);
  CHECK(g.bit_depth() == 10);
  CHECK(g.chroma() == ChromaFormat::k444);
  CHECK(g.color() == ColorSpace::RGB);
  CHECK(g.views() == expected);
}

TEST_CASE("load_grid single view and error paths") {
  const auto dir = scratch_dir("errors");
  write_ppm(rgb_picture(16, 8, 8, 1), dir / "a.ppm");
  write_ppm(rgb_picture(16, 10, 8, 2), dir / "b.ppm");
  {
    std::ofstream(dir / "one.txt") << "# single\n0 0 a.ppm\n";
  }
  const ViewGrid one = load_grid(dir / "one.txt");
  CHECK(one.rows() == 1);
  CHECK(one.cols() == 1);
  CHECK(one.width() == 16);

  {
    std::ofstream(dir / "missing.txt") << "0 0 a.ppm\n0 1 nothere.ppm\n";
  }
  CHECK(code_of([&] { load_grid(dir / "missing.txt"); }) == ErrorCode::MissingView);
  {
    std::ofstream(dir / "hole.txt") << "0 0 a.ppm\n1 1 a.ppm\n";
  }
  CHECK(code_of([&] { load_grid(dir / "hole.txt"); }) == ErrorCode::MissingView);
  {
    std::ofstream(dir / "dims.txt") << "0 0 a.ppm\n0 1 b.ppm\n";
  }
  CHECK(code_of([&] { load_grid(dir / "dims.txt"); }) == ErrorCode::DimensionMismatch);
  {
    std::ofstream os(dir / "bad.ppm", std::ios::binary);
    os << "P6\n2 2\n4095\n";
    for (int i = 0; i < 24; ++i) os.put('\0');
    std::ofstream(dir / "depth.txt") << "0 0 bad.ppm\n";
  }
  CHECK(code_of([&] { load_grid(dir / "depth.txt"); }) == ErrorCode::UnsupportedBitDepth);
}

TEST_CASE("store then load round-trips every format") {
  for (const auto fmt : {ChromaFormat::k444, ChromaFormat::k422, ChromaFormat::k420}) {
    for (const int bd : {8, 10}) {
      std::vector<Picture> views;
      for (int i = 0; i < 4; ++i) views.push_back(test::random_picture(17, 9, fmt, 100 + i, 0, (1 << bd) - 1, bd));
      for (auto& v : views) v.bit_depth = bd;
      const ViewGrid g(2, 2, views);
      const auto dir = scratch_dir("rt");
      store_grid(g, dir);
      CHECK(load_grid(dir / "manifest.txt") == g);
    }
  }
  std::vector<Picture> rgb;
  for (int i = 0; i < 2; ++i) rgb.push_back(rgb_picture(7, 5, 10, 40 + i));
  const ViewGrid g(1, 2, rgb);
  const auto dir = scratch_dir("rt_rgb");
  store_grid(g, dir);
  CHECK(load_grid(dir / "manifest.txt") == g);
}

TEST_CASE("select_center") {
  const ViewGrid g = indexed_grid(15, 15);
  const ViewGrid c = select_center(g, 13, 13);
  CHECK(c.rows() == 13);
  CHECK(c.at(0, 0) == g.at(1, 1));
  CHECK(c.at(12, 12) == g.at(13, 13));
  CHECK(c.at(c.center()) == g.at(g.center()));
  CHECK(select_center(g, 15, 15) == g);
  CHECK(code_of([&] { select_center(g, 14, 13); }) == ErrorCode::InvalidSelection);
  CHECK(code_of([&] { select_center(g, 17, 17); }) == ErrorCode::InvalidSelection);
  for (int a = 15; a >= 1; a -= 2)
    for (int b = a; b >= 1; b -= 2) CHECK(select_center(select_center(g, a, a), b, b) == select_center(g, b, b));
}

TEST_CASE("BT.709 limited-range conversion") {
  // Independent scalar oracle.
  auto oracle = [](double r, double g, double b, int bd) {
    const double m = (1 << bd) - 1, s = 1 << (bd - 8);
    const double ey = 0.2126 * r / m + 0.7152 * g / m + 0.0722 * b / m;
    const double y = s * (16 + 219 * ey);
    const double cb = s * (128 + 224 * (b / m - ey) / 1.8556);
    const double cr = s * (128 + 224 * (r / m - ey) / 1.5748);
    auto rnd = [](double v) { return std::copysign(std::floor(std::abs(v) + 0.5), v); };
    return std::array<double, 3>{rnd(y), rnd(cb), rnd(cr)};
  };
  Picture p(4, 1, 10, ChromaFormat::k444, ColorSpace::RGB);
  const int rgb[4][3] = {{1023, 1023, 1023}, {0, 0, 0}, {500, 500, 500}, {900, 100, 300}};
  for (int x = 0; x < 4; ++x)
    for (int c = 0; c < 3; ++c) p.planes[c].at(x, 0) = static_cast<std::uint16_t>(rgb[x][c]);
  const Picture y = convert_rgb_to_ycbcr(p);
  CHECK(y.color == ColorSpace::YCbCr);
  CHECK(y.planes[0].at(0, 0) == 940);
  CHECK(y.planes[1].at(0, 0) == 512);
  CHECK(y.planes[2].at(0, 0) == 512);
  CHECK(y.planes[0].at(1, 0) == 64);
  CHECK(y.planes[1].at(1, 0) == 512);
  CHECK(y.planes[2].at(1, 0) == 512);
  CHECK(y.planes[1].at(2, 0) == 512);
  CHECK(y.planes[2].at(2, 0) == 512);
  const auto o = oracle(900, 100, 300, 10);
  for (int c = 0; c < 3; ++c) CHECK(y.planes[c].at(3, 0) == o[c]);

  Picture ramp(64, 1, 8, ChromaFormat::k444, ColorSpace::RGB);
  for (int x = 0; x < 64; ++x)
    for (auto& pl : ramp.planes) pl.at(x, 0) = static_cast<std::uint16_t>(x * 4);
  const Picture yr = convert_rgb_to_ycbcr(ramp);
  for (int x = 0; x < 64; ++x) {
    CHECK(yr.planes[1].at(x, 0) == 128);
    CHECK(yr.planes[2].at(x, 0) == 128);
  }
}

TEST_CASE("pad_views edge replication") {
  std::vector<Picture> views{test::random_picture(625, 434, ChromaFormat::k444, 5)};
  const ViewGrid g(1, 1, views);
  const ViewGrid p = pad_views(g, 626, 434);
  CHECK(p.width() == 626);
  for (int y = 0; y < 434; ++y) CHECK(p.at(0, 0).luma().at(625, y) == p.at(0, 0).luma().at(624, y));
  CHECK(pad_views(p, 626, 434) == p);
  CHECK(crop_picture(p.at(0, 0), 625, 434) == g.at(0, 0));

  std::vector<Picture> toy{test::random_picture(3, 3, ChromaFormat::k444, 6)};
  const ViewGrid t = pad_views(ViewGrid(1, 1, toy), 4, 4);
  const Plane& src = toy[0].luma();
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) CHECK(t.at(0, 0).luma().at(x, y) == src.at(std::min(x, 2), std::min(y, 2)));

  const ViewGrid odd = pad_views(ViewGrid(1, 1, {test::random_picture(625, 433, ChromaFormat::k420, 7)}), 626, 434);
  CHECK(odd.height() == 434);
  CHECK(odd.at(0, 0).planes[1].height == 217);
  CHECK(code_of([&] { pad_views(g, 600, 434); }) == ErrorCode::TargetTooSmall);
}

TEST_CASE("chroma subsampling") {
  Picture p(8, 4, 8, ChromaFormat::k444, ColorSpace::YCbCr);
  for (int c = 1; c < 3; ++c)
    for (int y = 0; y < 4; ++y)
      for (int x = 0; x < 8; ++x) p.planes[c].at(x, y) = static_cast<std::uint16_t>(x % 2 ? 200 : 100);
  const Picture s422 = subsample_chroma(p, ChromaFormat::k422);
  CHECK(s422.planes[1].width == 4);
  CHECK(s422.planes[1].height == 4);
  for (auto v : s422.planes[1].samples) CHECK(v == 150);
  const Picture s420 = subsample_chroma(p, ChromaFormat::k420);
  CHECK(s420.planes[2].height == 2);
  for (auto v : s420.planes[2].samples) CHECK(v == 150);
  CHECK(subsample_chroma(p, ChromaFormat::k444) == p);
  CHECK(s420.luma() == p.luma());

  Picture flat(6, 6, 10, ChromaFormat::k444, ColorSpace::YCbCr);
  for (auto& pl : flat.planes) std::fill(pl.samples.begin(), pl.samples.end(), std::uint16_t{777});
  const Picture flat420 = subsample_chroma(flat, ChromaFormat::k420);
  for (auto v : flat420.planes[1].samples) CHECK(v == 777);
}

TEST_CASE("ViewGrid rejects inconsistent views") {
  std::vector<Picture> v{test::random_picture(8, 8, ChromaFormat::k444, 1), test::random_picture(8, 8, ChromaFormat::k420, 2)};
  CHECK(code_of([&] { ViewGrid(1, 2, v); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { ViewGrid(2, 2, v); }) == ErrorCode::MissingView);
}
