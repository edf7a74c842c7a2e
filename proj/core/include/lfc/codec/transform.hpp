#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lfc {

/// Separable integer DCT-II on a w x h block (each side in {4, 8, 16, 32, 64}),
/// row-major. The basis is the orthonormal DCT scaled by 2^14 and rounded, so
/// coefficients come out at orthonormal scale.
std::vector<std::int32_t> forward_transform(std::span<const std::int32_t> residual, int width, int height);
std::vector<std::int32_t> inverse_transform(std::span<const std::int32_t> coefficients, int width, int height);

/// Quantizer step in Q16 fixed point: 2^((qp - 4) / 6) * 65536.
std::int64_t qstep_q16(int qp);
double qstep(int qp);

/// level = sign(c) * floor(|c| / Qstep + 1/3)
std::vector<std::int32_t> quantize(std::span<const std::int32_t> coefficients, int qp);
/// c' = round(level * Qstep)
std::vector<std::int32_t> dequantize(std::span<const std::int32_t> levels, int qp);

/// Lagrangian multiplier 0.85 * 2^((qp - 12) / 3).
double lambda_for_qp(int qp);

}  // namespace lfc
