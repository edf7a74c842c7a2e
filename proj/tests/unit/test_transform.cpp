#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "lfc/codec/transform.hpp"

using namespace lfc;

namespace {

// Floating-point orthonormal 2-D DCT-II.
std::vector<double> float_dct(const std::vector<std::int32_t>& x, int w, int h) {
  auto basis = [](int n, int k, int i) {
    const double s = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    return s * std::cos(std::numbers::pi * (2 * i + 1) * k / (2.0 * n));
  };
  std::vector<double> out(static_cast<std::size_t>(w) * h, 0.0);
  for (int v = 0; v < h; ++v)
    for (int u = 0; u < w; ++u) {
      double acc = 0.0;
      for (int y = 0; y < h; ++y)
        for (int xx = 0; xx < w; ++xx) acc += basis(h, v, y) * basis(w, u, xx) * x[static_cast<std::size_t>(y) * w + xx];
      out[static_cast<std::size_t>(v) * w + u] = acc;
    }
  return out;
}

std::vector<std::int32_t> random_block(int w, int h, std::mt19937& rng, int amp = 255) {
  std::uniform_int_distribution<int> d(-amp, amp);
  std::vector<std::int32_t> b(static_cast<std::size_t>(w) * h);
  for (auto& v : b) v = d(rng);
  return b;
}

}  // namespace

TEST_CASE("forward transform matches the float DCT") {
  std::mt19937 rng(3);
  for (int w : {4, 8, 16, 32})
    for (int h : {4, 8, 16}) {
      const auto x = random_block(w, h, rng);
      const auto c = forward_transform(x, w, h);
      const auto f = float_dct(x, w, h);
      for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(c[i] - f[i]) <= 1.0);
    }
}

TEST_CASE("inverse(forward(x)) within one per sample") {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_block(8, 8, rng);
    const auto y = inverse_transform(forward_transform(x, 8, 8), 8, 8);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x[i] - y[i]) <= 1);
  }
  for (int w : {4, 16, 32, 64})
    for (int h : {4, 64}) {
      const auto x = random_block(w, h, rng, 1023);
      const auto y = inverse_transform(forward_transform(x, w, h), w, h);
      for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x[i] - y[i]) <= 1);
    }
}

TEST_CASE("DC-only block") {
  std::vector<std::int32_t> x(64, 10);
  const auto c = forward_transform(x, 8, 8);
  CHECK(c[0] == 80);
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] == 0);
}

TEST_CASE("quantizer") {
  CHECK(qstep(4) == Catch::Approx(1.0));
  CHECK(qstep(10) == Catch::Approx(2.0));
  CHECK(qstep(22) == Catch::Approx(8.0));
  CHECK(qstep(23) / qstep(22) == Catch::Approx(std::pow(2.0, 1.0 / 6.0)).epsilon(1e-4));
  const std::vector<std::int32_t> c = {0, 5, -5, 7, -100, 11};
  // qp 10: step 2 -> floor(|c|/2 + 1/3)
  CHECK(quantize(c, 10) == std::vector<std::int32_t>{0, 2, -2, 3, -50, 5});
  CHECK(dequantize(quantize(c, 10), 10) == std::vector<std::int32_t>{0, 4, -4, 6, -100, 10});
  std::mt19937 rng(5);
  for (int qp = 0; qp <= 51; ++qp) {
    const auto x = random_block(8, 8, rng, 5000);
    const auto r = dequantize(quantize(x, qp), qp);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x[i] - r[i]) <= qstep(qp) * 2.0 / 3.0 + 1.0);
  }
}

TEST_CASE("lambda") {
  CHECK(lambda_for_qp(12) == Catch::Approx(0.85));
  CHECK(lambda_for_qp(15) == Catch::Approx(1.7));
  for (int qp = 0; qp <= 51; ++qp) CHECK(lambda_for_qp(qp) > 0.0);
}
