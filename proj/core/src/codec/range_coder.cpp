#include "lfc/codec/range_coder.hpp"

#include <array>
#include <cmath>

#include "lfc/error.hpp"

namespace lfc {
namespace {

constexpr int kProbBits = 15;
constexpr std::uint32_t kTop = 1u << 24;

const std::array<double, 2048>& cost_table() {
  static const std::array<double, 2048> table = [] {
    std::array<double, 2048> t{};
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = -std::log2((static_cast<double>(i) + 0.5) / 2048.0);
    }
    return t;
  }();
  return table;
}

}  // namespace

void BinContext::update(int bit) {
  const int shift = 4 + (count >> 4);
  if (bit == 0) {
    p0 = static_cast<std::uint16_t>(p0 + (((1 << kProbBits) - p0) >> shift));
  } else {
    p0 = static_cast<std::uint16_t>(p0 - (p0 >> shift));
  }
  if (count < 48) ++count;
}

double bin_cost(const BinContext& ctx, int bit) {
  const int p = bit == 0 ? ctx.p0 : (1 << kProbBits) - ctx.p0;
  return cost_table()[static_cast<std::size_t>(p >> 4)];
}

void RangeEncoder::encode(BinContext& ctx, int bit) {
  const std::uint32_t bound = (range_ >> kProbBits) * ctx.p0;
  if (bit == 0) {
    range_ = bound;
  } else {
    low_ += bound;
    range_ -= bound;
  }
  ctx.update(bit);
  normalize();
}

void RangeEncoder::encode_bypass(int bit) {
  range_ >>= 1;
  if (bit) low_ += range_;
  normalize();
}

void RangeEncoder::encode_bypass_bits(std::uint32_t value, int nbits) {
  for (int i = nbits - 1; i >= 0; --i) encode_bypass(static_cast<int>((value >> i) & 1u));
}

void RangeEncoder::normalize() {
  while (range_ < kTop) {
    range_ <<= 8;
    shift_low();
  }
}

void RangeEncoder::shift_low() {
  if (static_cast<std::uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
    const auto carry = static_cast<std::uint8_t>(low_ >> 32);
    std::uint8_t temp = cache_;
    do {
      // The very first byte is always zero (the interval never exceeds 1.0).
      if (!first_byte_) out_.push_back(static_cast<std::uint8_t>(temp + carry));
      first_byte_ = false;
      temp = 0xFF;
    } while (--pending_ != 0);
    cache_ = static_cast<std::uint8_t>(low_ >> 24);
  }
  ++pending_;
  low_ = (low_ & 0x00FFFFFFu) << 8;
}

std::vector<std::uint8_t> RangeEncoder::finish() {
  // Pick the value in [low, low + range) with the most trailing zero bits so
  // the flushed tail trims away.
  const std::uint64_t hi = low_ + range_;
  for (int k = 32; k >= 0; --k) {
    const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
    const std::uint64_t v = (low_ + mask) & ~mask;
    if (v < hi) {
      low_ = v;
      break;
    }
  }
  for (int i = 0; i < 5; ++i) shift_low();
  while (!out_.empty() && out_.back() == 0) out_.pop_back();
  out_.push_back(kTerminator[0]);
  out_.push_back(kTerminator[1]);
  return std::move(out_);
}

RangeDecoder::RangeDecoder(std::span<const std::uint8_t> stream) {
  check(stream.size() >= 2 && stream[stream.size() - 2] == kTerminator[0] && stream[stream.size() - 1] == kTerminator[1],
        ErrorCode::CorruptStream, "missing range coder terminator");
  payload_ = stream.first(stream.size() - 2);
  for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | next_byte();
}

std::uint8_t RangeDecoder::next_byte() {
  const std::size_t at = pos_++;
  // Trailing zero bytes are trimmed by the encoder.
  return at < payload_.size() ? payload_[at] : 0;
}

void RangeDecoder::normalize() {
  while (range_ < kTop) {
    range_ <<= 8;
    code_ = (code_ << 8) | next_byte();
  }
}

int RangeDecoder::decode(BinContext& ctx) {
  const std::uint32_t bound = (range_ >> kProbBits) * ctx.p0;
  int bit;
  if (code_ < bound) {
    range_ = bound;
    bit = 0;
  } else {
    code_ -= bound;
    range_ -= bound;
    bit = 1;
  }
  ctx.update(bit);
  normalize();
  return bit;
}

int RangeDecoder::decode_bypass() {
  range_ >>= 1;
  int bit = 0;
  if (code_ >= range_) {
    code_ -= range_;
    bit = 1;
  }
  normalize();
  return bit;
}

std::uint32_t RangeDecoder::decode_bypass_bits(int nbits) {
  std::uint32_t v = 0;
  for (int i = 0; i < nbits; ++i) v = (v << 1) | static_cast<std::uint32_t>(decode_bypass());
  return v;
}

std::vector<std::uint8_t> entropy_encode(std::span<const std::uint8_t> bits) {
  RangeEncoder enc;
  BinContext ctx;
  for (auto b : bits) enc.encode(ctx, b ? 1 : 0);
  return enc.finish();
}

std::vector<std::uint8_t> entropy_decode(std::span<const std::uint8_t> bytes, std::size_t count) {
  RangeDecoder dec(bytes);
  BinContext ctx;
  std::vector<std::uint8_t> out(count);
  for (auto& b : out) b = static_cast<std::uint8_t>(dec.decode(ctx));
  return out;
}

}  // namespace lfc
