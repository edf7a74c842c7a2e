#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lfc/codec/view_codec.hpp"
#include "lfc/container.hpp"
#include "lfc/error.hpp"
#include "lfc/reference_graph.hpp"
#include "lfc/scan_plan.hpp"
#include "lfc/view_grid.hpp"

namespace lfc {

inline constexpr int kDefaultCentralQpOffset = -4;

struct EncodeJob {
  ScanKind scan = ScanKind::Proposed;
  RefKind refs = RefKind::Proposed;
  int max_refs = kDefaultMaxRefs;
  int base_qp = 32;
  int central_qp_offset = kDefaultCentralQpOffset;
  bool fast_depth = false;
  bool parallel = false;
  std::optional<double> target_bpp;
  int search_range = kDefaultSearchRange;

  /// QP of the first (intra) view: clamp(base_qp + central_qp_offset, 0, 51).
  int central_qp() const;
};

struct EncodeResult {
  std::vector<std::uint8_t> container;
  ScanPlan plan;
  ReferenceGraph graph;
  std::vector<Picture> recon;        // by coding index
  std::vector<EncodeStats> stats;    // by coding index
  std::vector<std::size_t> segment_bytes;  // by coding index
  double bpp = 0.0;
};

/// Bits per pixel of a container for a grid: 8 * bytes / (views * W * H).
double bits_per_pixel(std::size_t container_bytes, int views, int width, int height);

/// Central view intra-coded once, then the quadrant pseudo-sequences (one
/// substream each); with job.parallel the four quadrants run on their own
/// threads. Output bytes do not depend on job.parallel.
EncodeResult encode_lightfield(const ViewGrid& grid, const EncodeJob& job);

struct LightfieldDecode {
  ContainerHeader header;
  std::vector<std::optional<Picture>> views;  // row-major
  /// Per substream (center, Q0..Q3) decode error, if any.
  std::array<std::optional<Error>, 5> errors;

  bool complete() const;
  /// Throws the first substream error when a view is missing.
  ViewGrid grid() const;
};

/// Decodes what it can: a failing quadrant does not affect the others.
/// Header problems throw.
LightfieldDecode decode_lightfield_partial(std::span<const std::uint8_t> container);
ViewGrid decode_lightfield(std::span<const std::uint8_t> container);

struct SingleViewDecode {
  Picture view;
  int decoded_views = 0;
};

/// Decodes the central view and the prefix of the owning quadrant up to `pos`.
SingleViewDecode decode_single_view(std::span<const std::uint8_t> container, GridPos pos);

struct RateTargetResult {
  EncodeResult result;
  int qp = 0;
  double bpp = 0.0;
  int bisection_probes = 0;  // encodes spent bisecting
  int total_probes = 0;      // including the final neighbour check
  bool saturated = false;    // QP 0 is still below the target
  bool unreachable = false;  // QP 51 still exceeds 1.1 x target
};

/// Bisection on base_qp for the QP closest to target_bpp whose rate stays
/// within 1.1 x target_bpp.
RateTargetResult rate_target_encode(const ViewGrid& grid, const EncodeJob& job, double target_bpp);

struct TimeReport {
  double t_serial_full = 0.0;  // seconds
  double t_serial_fast = 0.0;
  double t_parallel_fast = 0.0;
  double delta_t_serial = 0.0;    // percent
  double delta_t_parallel = 0.0;  // percent
  bool serial_parallel_identical = false;
};

/// 100 * (t_anchor - t) / t_anchor.
double time_saving(double t_anchor, double t);

/// Median-of-`runs` wall-clock encode times of full search, fast depth, and
/// fast depth with quadrant threads; fast_depth / parallel in `job` are ignored.
TimeReport time_report(const ViewGrid& grid, const EncodeJob& job, int runs = 3);

}  // namespace lfc
