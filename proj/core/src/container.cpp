#include "lfc/container.hpp"

#include <zlib.h>

#include <algorithm>
#include <string>

#include "lfc/error.hpp"

namespace lfc {
namespace {

class Writer {
public:
  void u8(std::uint8_t v) { out.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v & 0xFF));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void substream(const Substream& s) {
    u32(s.offset);
    u32(s.length);
    u16(s.views);
    u32(s.crc32);
  }

  std::vector<std::uint8_t> out;
};

class Reader {
public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}
  std::uint8_t u8() { return bytes_[pos_++]; }
  std::uint16_t u16() {
    const std::uint16_t lo = u8();
    return static_cast<std::uint16_t>(lo | (u8() << 8));
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  Substream substream() {
    Substream s;
    s.offset = u32();
    s.length = u32();
    s.views = u16();
    s.crc32 = u32();
    return s;
  }

private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; substreams never approach 4 GiB but stay safe.
  std::size_t done = 0;
  while (done < bytes.size()) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - done, 1u << 30));
    crc = ::crc32(crc, bytes.data() + done, chunk);
    done += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

std::vector<std::uint8_t> write_container_header(const ContainerHeader& h) {
  Writer w;
  for (auto b : kContainerMagic) w.u8(b);
  w.u16(h.version);
  w.u16(h.rows);
  w.u16(h.cols);
  w.u16(h.width);
  w.u16(h.height);
  w.u8(h.bit_depth);
  w.u8(static_cast<std::uint8_t>(h.chroma));
  w.u8(static_cast<std::uint8_t>(h.scan));
  w.u8(static_cast<std::uint8_t>(h.refs));
  w.u8(h.max_refs);
  w.u8(h.base_qp);
  w.u8(static_cast<std::uint8_t>(h.central_qp_offset));
  w.u8(static_cast<std::uint8_t>(h.color));
  w.substream(h.central);
  for (const auto& q : h.quadrants) w.substream(q);
  return std::move(w.out);
}

ContainerHeader read_container_header(std::span<const std::uint8_t> bytes) {
  check(bytes.size() >= kContainerHeaderSize, ErrorCode::CorruptStream, "container shorter than its header");
  check(std::equal(kContainerMagic.begin(), kContainerMagic.end(), bytes.begin()), ErrorCode::CorruptStream,
        "not an .lflf container");
  Reader r(bytes.subspan(4));
  ContainerHeader h;
  h.version = r.u16();
  check(h.version == kContainerVersion, ErrorCode::VersionMismatch,
        "unsupported container version " + std::to_string(h.version));
  h.rows = r.u16();
  h.cols = r.u16();
  h.width = r.u16();
  h.height = r.u16();
  h.bit_depth = r.u8();
  const std::uint8_t chroma = r.u8();
  const std::uint8_t scan = r.u8();
  const std::uint8_t refs = r.u8();
  h.max_refs = r.u8();
  h.base_qp = r.u8();
  h.central_qp_offset = static_cast<std::int8_t>(r.u8());
  const std::uint8_t color = r.u8();
  h.central = r.substream();
  for (auto& q : h.quadrants) q = r.substream();

  check(h.rows > 0 && h.cols > 0 && h.width > 0 && h.height > 0, ErrorCode::CorruptStream, "empty grid in header");
  check(h.bit_depth == 8 || h.bit_depth == 10, ErrorCode::CorruptStream, "bad bit depth in header");
  check(chroma <= 2 && scan <= 4 && refs <= 1 && color <= 1, ErrorCode::CorruptStream, "bad enum in header");
  check(h.max_refs >= 1 && h.max_refs <= 7, ErrorCode::CorruptStream, "bad max_refs in header");
  check(h.base_qp <= 51, ErrorCode::CorruptStream, "bad qp in header");
  h.chroma = static_cast<ChromaFormat>(chroma);
  h.scan = static_cast<ScanKind>(scan);
  h.refs = static_cast<RefKind>(refs);
  h.color = static_cast<ColorSpace>(color);
  return h;
}

std::vector<std::uint8_t> assemble_container(ContainerHeader header, std::span<const std::uint8_t> central,
                                             const std::array<std::vector<std::uint8_t>, 4>& quadrants) {
  std::size_t offset = kContainerHeaderSize;
  const auto place = [&](Substream& s, std::span<const std::uint8_t> bytes) {
    check(offset + bytes.size() <= 0xFFFFFFFFu, ErrorCode::InvalidConfig, "container exceeds 4 GiB");
    s.offset = static_cast<std::uint32_t>(offset);
    s.length = static_cast<std::uint32_t>(bytes.size());
    s.crc32 = crc32(bytes);
    offset += bytes.size();
  };
  place(header.central, central);
  for (std::size_t q = 0; q < 4; ++q) place(header.quadrants[q], quadrants[q]);

  std::vector<std::uint8_t> out = write_container_header(header);
  out.reserve(offset);
  out.insert(out.end(), central.begin(), central.end());
  for (const auto& q : quadrants) out.insert(out.end(), q.begin(), q.end());
  return out;
}

std::span<const std::uint8_t> substream_bytes(std::span<const std::uint8_t> container, const Substream& s) {
  check(static_cast<std::uint64_t>(s.offset) + s.length <= container.size(), ErrorCode::CorruptStream,
        "substream extends past the end of the container");
  const auto bytes = container.subspan(s.offset, s.length);
  check(crc32(bytes) == s.crc32, ErrorCode::CorruptStream, "substream CRC mismatch");
  return bytes;
}

}  // namespace lfc
