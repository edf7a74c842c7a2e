#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lfc {

/// Adaptive probability of a binary symbol. `p0` is P(bit == 0) in 1/32768
/// units; adaptation starts fast (shift 4) and slows to shift 7 as the context
/// sees more symbols.
struct BinContext {
  std::uint16_t p0 = 1 << 14;
  std::uint8_t count = 0;

  void update(int bit);
  bool operator==(const BinContext&) const = default;
};

/// Estimated cost in bits of coding `bit` with the context's current state.
double bin_cost(const BinContext& ctx, int bit);

inline constexpr std::uint8_t kTerminator[2] = {0xA5, 0x5A};

/// Carry-propagating binary range encoder (32-bit range, 15-bit probabilities).
class RangeEncoder {
public:
  void encode(BinContext& ctx, int bit);
  void encode_bypass(int bit);
  void encode_bypass_bits(std::uint32_t value, int nbits);

  /// Flushes and returns the payload followed by the 2-byte terminator.
  std::vector<std::uint8_t> finish();

private:
  void normalize();
  void shift_low();

  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint8_t cache_ = 0;
  std::uint64_t pending_ = 1;
  bool first_byte_ = true;
  std::vector<std::uint8_t> out_;
};

/// Decoder counterpart. Bytes past the payload read as zero; a missing
/// terminator raises CorruptStream.
class RangeDecoder {
public:
  explicit RangeDecoder(std::span<const std::uint8_t> stream);

  int decode(BinContext& ctx);
  int decode_bypass();
  std::uint32_t decode_bypass_bits(int nbits);

private:
  std::uint8_t next_byte();
  void normalize();

  std::span<const std::uint8_t> payload_;
  std::size_t pos_ = 0;
  std::uint32_t code_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
};

/// Convenience whole-sequence coding of bits through a single adaptive context.
std::vector<std::uint8_t> entropy_encode(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> entropy_decode(std::span<const std::uint8_t> bytes, std::size_t count);

}  // namespace lfc
