#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "lfc/error.hpp"
#include "lfc/view_grid.hpp"

namespace fs = std::filesystem;

namespace lfc {
namespace {

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  check(static_cast<bool>(in), ErrorCode::MissingView, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  check(static_cast<bool>(out), ErrorCode::Io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  check(static_cast<bool>(out), ErrorCode::Io, "short write to " + path.string());
}

// Netpbm header tokenizer: whitespace separated, '#' comments to end of line.
class PnmHeader {
public:
  explicit PnmHeader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  std::string token() {
    skip_space();
    std::string out;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_])) {
      out.push_back(static_cast<char>(bytes_[pos_++]));
    }
    return out;
  }

  int number(const fs::path& path) {
    const std::string t = token();
    check(!t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(c); }),
          ErrorCode::Io, "malformed PPM header in " + path.string());
    return std::stoi(t);
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() const { return pos_ + 1; }

private:
  void skip_space() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

struct YuvGeometry {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  ChromaFormat chroma = ChromaFormat::k444;
};

std::optional<YuvGeometry> parse_yuv_directive(const std::string& line) {
  std::istringstream ss(line.substr(1));
  std::string kind;
  ss >> kind;
  if (kind != "yuv") {
    return std::nullopt;
  }
  YuvGeometry geo;
  std::string kv;
  while (ss >> kv) {
    const auto eq = kv.find('=');
    check(eq != std::string::npos, ErrorCode::InvalidConfig, "bad manifest directive '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    if (key == "width") geo.width = std::stoi(value);
    else if (key == "height") geo.height = std::stoi(value);
    else if (key == "bitdepth") geo.bit_depth = std::stoi(value);
    else if (key == "chroma") geo.chroma = parse_chroma_format(value);
    else fail(ErrorCode::InvalidConfig, "unknown manifest key '" + key + "'");
  }
  check(geo.width > 0 && geo.height > 0, ErrorCode::InvalidConfig, "yuv directive needs width and height");
  return geo;
}

}  // namespace

Picture read_ppm(const fs::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  PnmHeader header(bytes);
  check(header.token() == "P6", ErrorCode::Io, path.string() + " is not a binary PPM (P6)");
  const int width = header.number(path);
  const int height = header.number(path);
  const int maxval = header.number(path);
  check(width > 0 && height > 0, ErrorCode::Io, "empty PPM " + path.string());

  const bool wide = maxval > 255;
  const std::size_t count = static_cast<std::size_t>(width) * height * 3;
  const std::size_t offset = header.raster_offset();
  check(bytes.size() >= offset + count * (wide ? 2 : 1), ErrorCode::Io, "truncated PPM " + path.string());

  std::vector<std::uint16_t> raw(count);
  for (std::size_t i = 0; i < count; ++i) {
    raw[i] = wide ? static_cast<std::uint16_t>((bytes[offset + 2 * i] << 8) | bytes[offset + 2 * i + 1])
                  : bytes[offset + i];
  }

  int bit_depth = 0;
  if (maxval == 255) {
    bit_depth = 8;
  } else if (maxval == 1023) {
    bit_depth = 10;
  } else if (maxval == 65535 && std::all_of(raw.begin(), raw.end(), [](auto v) { return v <= 1023; })) {
    // 16-bit container carrying 10-bit samples.
    bit_depth = 10;
  } else {
    fail(ErrorCode::UnsupportedBitDepth, path.string() + " has maxval " + std::to_string(maxval));
  }

  Picture pic(width, height, bit_depth, ChromaFormat::k444, ColorSpace::RGB);
  for (std::size_t i = 0; i < count / 3; ++i) {
    for (int c = 0; c < 3; ++c) {
      pic.planes[c].samples[i] = raw[3 * i + c];
    }
  }
  return pic;
}

void write_ppm(const Picture& pic, const fs::path& path) {
  check(pic.chroma == ChromaFormat::k444, ErrorCode::InvalidConfig, "PPM needs 4:4:4 planes");
  const std::string header =
      "P6\n" + std::to_string(pic.width) + " " + std::to_string(pic.height) + "\n" +
      std::to_string(pic.max_value()) + "\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  const bool wide = pic.max_value() > 255;
  const std::size_t n = pic.planes[0].samples.size();
  bytes.reserve(bytes.size() + n * 3 * (wide ? 2 : 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) {
      const std::uint16_t v = pic.planes[c].samples[i];
      if (wide) {
        bytes.push_back(static_cast<std::uint8_t>(v >> 8));
      }
      bytes.push_back(static_cast<std::uint8_t>(v & 0xFF));
    }
  }
  write_file(path, bytes);
}

Picture read_yuv(const fs::path& path, int width, int height, int bit_depth, ChromaFormat chroma) {
  check(bit_depth == 8 || bit_depth == 10, ErrorCode::UnsupportedBitDepth,
        "bit depth " + std::to_string(bit_depth));
  const std::vector<std::uint8_t> bytes = read_file(path);
  Picture pic(width, height, bit_depth, chroma, ColorSpace::YCbCr);
  const int bps = bit_depth > 8 ? 2 : 1;
  std::size_t expected = 0;
  for (const Plane& p : pic.planes) expected += p.samples.size() * bps;
  check(bytes.size() == expected, ErrorCode::DimensionMismatch,
        path.string() + " has " + std::to_string(bytes.size()) + " bytes, expected " + std::to_string(expected));
  std::size_t pos = 0;
  for (Plane& p : pic.planes) {
    for (auto& s : p.samples) {
      s = bps == 2 ? static_cast<std::uint16_t>(bytes[pos] | (bytes[pos + 1] << 8)) : bytes[pos];
      check(s <= pic.max_value(), ErrorCode::UnsupportedBitDepth, "sample exceeds bit depth in " + path.string());
      pos += bps;
    }
  }
  return pic;
}

void write_yuv(const Picture& pic, const fs::path& path) {
  const int bps = pic.bit_depth > 8 ? 2 : 1;
  std::vector<std::uint8_t> bytes;
  for (const Plane& p : pic.planes) {
    for (auto s : p.samples) {
      bytes.push_back(static_cast<std::uint8_t>(s & 0xFF));
      if (bps == 2) bytes.push_back(static_cast<std::uint8_t>(s >> 8));
    }
  }
  write_file(path, bytes);
}

ViewGrid load_grid(const fs::path& manifest_path) {
  std::ifstream in(manifest_path);
  check(static_cast<bool>(in), ErrorCode::Io, "cannot open manifest " + manifest_path.string());
  const fs::path base = manifest_path.parent_path();

  std::optional<YuvGeometry> yuv;
  std::map<std::pair<int, int>, fs::path> entries;
  int rows = 0, cols = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(c); })) {
      continue;
    }
    if (line.front() == '#') {
      if (auto geo = parse_yuv_directive(line)) yuv = geo;
      continue;
    }
    std::istringstream ss(line);
    int row = -1, col = -1;
    std::string name;
    ss >> row >> col >> name;
    check(ss && row >= 0 && col >= 0 && !name.empty(), ErrorCode::InvalidConfig, "bad manifest line '" + line + "'");
    check(entries.emplace(std::pair{row, col}, base / name).second, ErrorCode::InvalidGrid,
          "duplicate view " + std::to_string(row) + "," + std::to_string(col));
    rows = std::max(rows, row + 1);
    cols = std::max(cols, col + 1);
  }
  check(!entries.empty(), ErrorCode::MissingView, "manifest lists no views");

  std::vector<Picture> views;
  views.reserve(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      auto it = entries.find({r, c});
      check(it != entries.end(), ErrorCode::MissingView,
            "no view at " + std::to_string(r) + "," + std::to_string(c));
      check(fs::exists(it->second), ErrorCode::MissingView, "missing file " + it->second.string());
      if (it->second.extension() == ".yuv") {
        check(yuv.has_value(), ErrorCode::InvalidConfig, ".yuv views need a '# yuv ...' manifest directive");
        views.push_back(read_yuv(it->second, yuv->width, yuv->height, yuv->bit_depth, yuv->chroma));
      } else {
        views.push_back(read_ppm(it->second));
      }
    }
  }
  return ViewGrid(rows, cols, std::move(views));
}

void store_grid(const ViewGrid& grid, const fs::path& directory, const fs::path& manifest_name) {
  fs::create_directories(directory);
  std::ostringstream manifest;
  const bool rgb = grid.color() == ColorSpace::RGB;
  if (!rgb) {
    manifest << "# yuv width=" << grid.width() << " height=" << grid.height() << " bitdepth=" << grid.bit_depth()
             << " chroma=" << to_string(grid.chroma()) << "\n";
  }
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) {
      char name[64];
      std::snprintf(name, sizeof(name), "view_%03d_%03d.%s", r, c, rgb ? "ppm" : "yuv");
      if (rgb) write_ppm(grid.at(r, c), directory / name);
      else write_yuv(grid.at(r, c), directory / name);
      manifest << r << " " << c << " " << name << "\n";
    }
  }
  const std::string text = manifest.str();
  write_file(directory / manifest_name, std::vector<std::uint8_t>(text.begin(), text.end()));
}

}  // namespace lfc
