#include <catch_amalgamated.hpp>

#include <random>

#include "lfc/codec/range_coder.hpp"
#include "lfc/error.hpp"

using namespace lfc;

namespace {

std::vector<std::uint8_t> bernoulli(std::size_t n, double p1, unsigned seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution d(p1);
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = d(rng) ? 1 : 0;
  return bits;
}

}  // namespace

TEST_CASE("uniform bits cost about one bit each") {
  const auto bits = bernoulli(100000, 0.5, 1);
  const auto bytes = entropy_encode(bits);
  CHECK(std::abs(static_cast<double>(bytes.size()) - 12500.0) <= 125.0);
  CHECK(entropy_decode(bytes, bits.size()) == bits);
}

TEST_CASE("skewed bits approach the entropy") {
  const auto bits = bernoulli(100000, 0.05, 2);
  const auto bytes = entropy_encode(bits);
  CHECK(bytes.size() * 8.0 <= 0.35 * bits.size());
  CHECK(entropy_decode(bytes, bits.size()) == bits);
  const auto ones = bernoulli(100000, 0.95, 3);
  CHECK(entropy_encode(ones).size() * 8.0 <= 0.35 * ones.size());
}

TEST_CASE("mixed context and bypass round trip") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::tuple<int, int, std::uint32_t, int>> ops;  // kind, ctx, value, nbits
    std::uniform_int_distribution<int> kind(0, 2), ctx(0, 3), nb(1, 24);
    for (int i = 0; i < 3000; ++i) {
      const int k = kind(rng);
      const int n = nb(rng);
      ops.emplace_back(k, ctx(rng), static_cast<std::uint32_t>(rng()) & ((1u << n) - 1), n);
    }
    std::array<BinContext, 4> ectx{};
    RangeEncoder enc;
    for (auto [k, c, v, n] : ops) {
      if (k == 0) enc.encode(ectx[c], static_cast<int>(v & 1) ^ (c == 0));
      else if (k == 1) enc.encode_bypass(static_cast<int>(v & 1));
      else enc.encode_bypass_bits(v, n);
    }
    const auto bytes = enc.finish();
    std::array<BinContext, 4> dctx{};
    RangeDecoder dec(bytes);
    for (auto [k, c, v, n] : ops) {
      if (k == 0) REQUIRE(dec.decode(dctx[c]) == (static_cast<int>(v & 1) ^ (c == 0)));
      else if (k == 1) REQUIRE(dec.decode_bypass() == static_cast<int>(v & 1));
      else REQUIRE(dec.decode_bypass_bits(n) == v);
    }
    CHECK(dctx == ectx);
  }
}

TEST_CASE("terminator and corruption") {
  RangeEncoder empty;
  CHECK(empty.finish() == std::vector<std::uint8_t>{0xA5, 0x5A});
  const auto bytes = entropy_encode(bernoulli(1000, 0.3, 9));
  CHECK(bytes[bytes.size() - 2] == 0xA5);
  CHECK(bytes.back() == 0x5A);
  auto broken = bytes;
  broken.back() = 0;
  CHECK_THROWS_AS(RangeDecoder(broken), Error);
  CHECK_THROWS_AS(RangeDecoder(std::span<const std::uint8_t>{}), Error);
}

TEST_CASE("bin_cost tracks adaptation") {
  BinContext c;
  CHECK(bin_cost(c, 0) == Catch::Approx(1.0).margin(1e-3));
  for (int i = 0; i < 200; ++i) c.update(0);
  CHECK(bin_cost(c, 0) < 0.1);
  CHECK(bin_cost(c, 1) > 4.0);
}
