#include "lfc/codec/transform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "lfc/error.hpp"

namespace lfc {
namespace {

constexpr int kBasisShift = 14;
constexpr std::int64_t kMaxCoefficient = std::int64_t{1} << 18;

struct Basis {
  int n = 0;
  std::vector<std::int64_t> m;  // m[k * n + i]
};

Basis make_basis(int n) {
  Basis b{n, std::vector<std::int64_t>(static_cast<std::size_t>(n) * n)};
  for (int k = 0; k < n; ++k) {
    const double ck = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (int i = 0; i < n; ++i) {
      const double v = ck * std::cos(std::numbers::pi * (2 * i + 1) * k / (2.0 * n)) * (1 << kBasisShift);
      b.m[static_cast<std::size_t>(k) * n + i] = std::llround(v);
    }
  }
  return b;
}

const Basis& basis(int n) {
  static const std::array<Basis, 5> table = {make_basis(4), make_basis(8), make_basis(16), make_basis(32),
                                             make_basis(64)};
  switch (n) {
    case 4: return table[0];
    case 8: return table[1];
    case 16: return table[2];
    case 32: return table[3];
    case 64: return table[4];
    default: fail(ErrorCode::InvalidConfig, "unsupported transform size " + std::to_string(n));
  }
}

std::int32_t round_shift(std::int64_t v, int shift) {
  return static_cast<std::int32_t>((v + (std::int64_t{1} << (shift - 1))) >> shift);
}

}  // namespace

std::vector<std::int32_t> forward_transform(std::span<const std::int32_t> residual, int width, int height) {
  const Basis& bw = basis(width);
  const Basis& bh = basis(height);
  const auto w = static_cast<std::size_t>(width);
  // Rows first: tmp[y][k] = sum_x r[y][x] * Bw[k][x]
  std::vector<std::int64_t> tmp(w * height);
  for (int y = 0; y < height; ++y) {
    const std::int32_t* row = residual.data() + y * w;
    for (std::size_t k = 0; k < w; ++k) {
      const std::int64_t* bk = bw.m.data() + k * w;
      std::int64_t acc = 0;
      for (std::size_t x = 0; x < w; ++x) acc += row[x] * bk[x];
      tmp[y * w + k] = acc;
    }
  }
  // Columns: out[l][k] = sum_y tmp[y][k] * Bh[l][y]
  std::vector<std::int32_t> out(w * height);
  std::vector<std::int64_t> acc(w);
  for (int l = 0; l < height; ++l) {
    const std::int64_t* bl = bh.m.data() + static_cast<std::size_t>(l) * height;
    std::fill(acc.begin(), acc.end(), 0);
    for (int y = 0; y < height; ++y) {
      const std::int64_t c = bl[y];
      const std::int64_t* trow = tmp.data() + y * w;
      for (std::size_t k = 0; k < w; ++k) acc[k] += trow[k] * c;
    }
    for (std::size_t k = 0; k < w; ++k) out[l * w + k] = round_shift(acc[k], 2 * kBasisShift);
  }
  return out;
}

std::vector<std::int32_t> inverse_transform(std::span<const std::int32_t> coefficients, int width, int height) {
  const Basis& bw = basis(width);
  const Basis& bh = basis(height);
  const auto w = static_cast<std::size_t>(width);
  // Columns first: tmp[y][k] = sum_l C[l][k] * Bh[l][y]
  std::vector<std::int64_t> tmp(w * height, 0);
  for (int l = 0; l < height; ++l) {
    const std::int32_t* crow = coefficients.data() + l * w;
    if (std::all_of(crow, crow + w, [](std::int32_t v) { return v == 0; })) continue;
    const std::int64_t* bl = bh.m.data() + static_cast<std::size_t>(l) * height;
    for (int y = 0; y < height; ++y) {
      const std::int64_t c = bl[y];
      std::int64_t* trow = tmp.data() + y * w;
      for (std::size_t k = 0; k < w; ++k) trow[k] += crow[k] * c;
    }
  }
  // Rows: out[y][x] = sum_k tmp[y][k] * Bw[k][x]
  std::vector<std::int32_t> out(w * height);
  std::vector<std::int64_t> acc(w);
  for (int y = 0; y < height; ++y) {
    const std::int64_t* trow = tmp.data() + y * w;
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < w; ++k) {
      const std::int64_t c = trow[k];
      if (c == 0) continue;
      const std::int64_t* bk = bw.m.data() + k * w;
      for (std::size_t x = 0; x < w; ++x) acc[x] += c * bk[x];
    }
    for (std::size_t x = 0; x < w; ++x) out[y * w + x] = round_shift(acc[x], 2 * kBasisShift);
  }
  return out;
}

std::int64_t qstep_q16(int qp) {
  // 2^(k/6) in Q16 for k = 0..5.
  static constexpr std::array<std::int64_t, 6> kSteps = {65536, 73562, 82570, 92682, 104032, 116772};
  check(qp >= 0 && qp <= 51, ErrorCode::InvalidConfig, "qp out of range");
  const int e = qp - 4;
  const int octave = e >= 0 ? e / 6 : -((-e + 5) / 6);
  const int frac = e - 6 * octave;
  const std::int64_t base = kSteps[static_cast<std::size_t>(frac)];
  return octave >= 0 ? base << octave : base >> -octave;
}

double qstep(int qp) { return static_cast<double>(qstep_q16(qp)) / 65536.0; }

std::vector<std::int32_t> quantize(std::span<const std::int32_t> coefficients, int qp) {
  const std::int64_t q = qstep_q16(qp);
  std::vector<std::int32_t> out(coefficients.size());
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    const std::int64_t c = coefficients[i];
    const std::int64_t mag = std::llabs(c);
    // floor(|c| / Qstep + 1/3) == floor((3 * |c| * 2^16 + Qstep16) / (3 * Qstep16))
    const std::int64_t level = (3 * (mag << 16) + q) / (3 * q);
    out[i] = static_cast<std::int32_t>(c < 0 ? -level : level);
  }
  return out;
}

std::vector<std::int32_t> dequantize(std::span<const std::int32_t> levels, int qp) {
  const std::int64_t q = qstep_q16(qp);
  std::vector<std::int32_t> out(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const std::int64_t mag = std::llabs(static_cast<std::int64_t>(levels[i]));
    // Valid streams never exceed 2^18 (64 * 1023 for 10-bit data); the clamp
    // keeps the inverse transform inside int64 on corrupt input.
    const std::int64_t v = std::min<std::int64_t>((mag * q + (1 << 15)) >> 16, kMaxCoefficient);
    out[i] = static_cast<std::int32_t>(levels[i] < 0 ? -v : v);
  }
  return out;
}

double lambda_for_qp(int qp) { return 0.85 * std::pow(2.0, (qp - 12) / 3.0); }

}  // namespace lfc
