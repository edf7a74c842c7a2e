#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lfc/metrics.hpp"
#include "lfc/pipeline.hpp"

namespace lfc {

/// One (scan order, reference structure) combination under test.
struct Arm {
  ScanKind scan = ScanKind::Proposed;
  RefKind refs = RefKind::Proposed;
  bool operator==(const Arm&) const = default;
};
std::string arm_name(const Arm& arm);
/// "scan" or "scan+refs"; a bare scan takes proposed refs for the proposed
/// scan and low-delay refs otherwise.
Arm parse_arm(const std::string& text);

/// Proposed scan + proposed refs followed by the four conventional scans with
/// low-delay references.
std::vector<Arm> default_arms();

struct CompareConfig {
  std::vector<Arm> arms = default_arms();
  Arm anchor{ScanKind::Zigzag, RefKind::LowDelay};
  std::vector<int> qps = {22, 27, 32, 37};
  std::vector<double> target_bpps;  // used instead of qps when non-empty
  EncodeJob job;                    // scan / refs / base_qp are overridden per run
};

struct ArmCurve {
  Arm arm;
  std::vector<int> qps;
  RdCurve curve;
};

struct CompareResult {
  std::vector<ArmCurve> curves;
  std::optional<std::size_t> anchor;  // index into curves
  std::vector<std::optional<BdResult>> bd;  // per curve against the anchor
};

/// RD point of one encode: rate from the container, quality from the
/// reconstruction (identical to the decoder output).
RdPoint measure(const ViewGrid& original, const EncodeResult& encoded);

CompareResult run_compare(const ViewGrid& lightfield, const CompareConfig& config);

struct AblationConfig {
  std::vector<int> qps = {22, 27, 32, 37};
  EncodeJob job;
  bool timing = true;
  int runs = 3;
};

struct AblationResult {
  RdCurve full;
  RdCurve fast;
  BdResult bd;             // fast depth against full search
  TimeReport time;         // summed over the rate points
  std::uint64_t rd_evaluations_full = 0;
  std::uint64_t rd_evaluations_fast = 0;
};

AblationResult run_depth_ablation(const ViewGrid& lightfield, const AblationConfig& config);

using Named = std::pair<std::string, CompareResult>;
using NamedAblation = std::pair<std::string, AblationResult>;

/// dataset,arm,qp,bpp,psnr_y,ssim_y
void write_compare_rd_csv(std::ostream& os, const std::vector<Named>& results);
/// One row per dataset, one BD-rate and BD-PSNR column per arm, plus an average row.
void write_bd_table(std::ostream& os, const std::vector<Named>& results);
/// dataset,bd_rate_pct,bd_psnr_db,t_full_s,t_fast_s,t_parallel_s,delta_t_s,delta_t_p,identical
void write_ablation_csv(std::ostream& os, const std::vector<NamedAblation>& results);

}  // namespace lfc
