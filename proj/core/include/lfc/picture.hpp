#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace lfc {

enum class ChromaFormat : std::uint8_t { k444 = 0, k422 = 1, k420 = 2 };
enum class ColorSpace : std::uint8_t { RGB = 0, YCbCr = 1 };

std::string_view to_string(ChromaFormat fmt) noexcept;
ChromaFormat parse_chroma_format(std::string_view text);

/// Horizontal / vertical chroma subsampling shifts for a format.
constexpr int chroma_shift_x(ChromaFormat fmt) { return fmt == ChromaFormat::k444 ? 0 : 1; }
constexpr int chroma_shift_y(ChromaFormat fmt) { return fmt == ChromaFormat::k420 ? 1 : 0; }

/// Chroma plane size for a luma size; odd luma sizes round up.
constexpr int chroma_width(int luma_width, ChromaFormat fmt) {
  return (luma_width + (1 << chroma_shift_x(fmt)) - 1) >> chroma_shift_x(fmt);
}
constexpr int chroma_height(int luma_height, ChromaFormat fmt) {
  return (luma_height + (1 << chroma_shift_y(fmt)) - 1) >> chroma_shift_y(fmt);
}

/// A single component of a picture, row-major, unpadded stride.
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> samples;

  Plane() = default;
  Plane(int w, int h, std::uint16_t fill = 0)
      : width(w), height(h), samples(static_cast<std::size_t>(w) * h, fill) {}

  std::uint16_t at(int x, int y) const { return samples[static_cast<std::size_t>(y) * width + x]; }
  std::uint16_t& at(int x, int y) { return samples[static_cast<std::size_t>(y) * width + x]; }

  /// Edge-replicating access; coordinates outside the plane are clamped.
  std::uint16_t clamped(int x, int y) const {
    x = x < 0 ? 0 : (x >= width ? width - 1 : x);
    y = y < 0 ? 0 : (y >= height ? height - 1 : y);
    return samples[static_cast<std::size_t>(y) * width + x];
  }

  std::span<const std::uint16_t> row(int y) const {
    return {samples.data() + static_cast<std::size_t>(y) * width, static_cast<std::size_t>(width)};
  }
  std::span<std::uint16_t> row(int y) {
    return {samples.data() + static_cast<std::size_t>(y) * width, static_cast<std::size_t>(width)};
  }

  bool operator==(const Plane&) const = default;
};

/// One view: three planes (R,G,B or Y,Cb,Cr) sharing a bit depth.
struct Picture {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  ChromaFormat chroma = ChromaFormat::k444;
  ColorSpace color = ColorSpace::YCbCr;
  std::array<Plane, 3> planes;

  Picture() = default;
  Picture(int w, int h, int depth, ChromaFormat fmt, ColorSpace space);

  const Plane& luma() const { return planes[0]; }
  Plane& luma() { return planes[0]; }
  int max_value() const { return (1 << bit_depth) - 1; }

  bool operator==(const Picture&) const = default;
};

/// Edge-replicate a picture to at least the given luma size (right/bottom).
Picture pad_picture(const Picture& pic, int width, int height);

/// Crop the top-left region of a picture.
Picture crop_picture(const Picture& pic, int width, int height);

}  // namespace lfc
