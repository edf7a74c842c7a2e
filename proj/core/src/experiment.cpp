#include "lfc/experiment.hpp"

#include <ostream>

#include "lfc/error.hpp"

namespace lfc {

std::string arm_name(const Arm& arm) {
  return std::string(to_string(arm.scan)) + "+" + std::string(to_string(arm.refs));
}

Arm parse_arm(const std::string& text) {
  const auto plus = text.find('+');
  Arm arm;
  arm.scan = parse_scan_kind(text.substr(0, plus));
  if (plus == std::string::npos) {
    arm.refs = arm.scan == ScanKind::Proposed ? RefKind::Proposed : RefKind::LowDelay;
  } else {
    arm.refs = parse_ref_kind(text.substr(plus + 1));
  }
  return arm;
}

std::vector<Arm> default_arms() {
  return {{ScanKind::Proposed, RefKind::Proposed},
          {ScanKind::Serpentine, RefKind::LowDelay},
          {ScanKind::Raster, RefKind::LowDelay},
          {ScanKind::Spiral, RefKind::LowDelay},
          {ScanKind::Zigzag, RefKind::LowDelay}};
}

RdPoint measure(const ViewGrid& original, const EncodeResult& encoded) {
  double psnr_sum = 0.0, ssim_sum = 0.0;
  for (const ScanEntry& e : encoded.plan) {
    const Picture& src = original.at(e.pos);
    const Picture& rec = encoded.recon[static_cast<std::size_t>(e.coding_index)];
    psnr_sum += psnr(src.luma(), rec.luma(), src.bit_depth);
    ssim_sum += ssim(src.luma(), rec.luma(), src.bit_depth);
  }
  const auto n = static_cast<double>(encoded.plan.size());
  return {encoded.bpp, psnr_sum / n, ssim_sum / n};
}

CompareResult run_compare(const ViewGrid& lightfield, const CompareConfig& config) {
  check(!config.arms.empty(), ErrorCode::InvalidConfig, "compare needs at least one arm");
  check(!config.qps.empty() || !config.target_bpps.empty(), ErrorCode::InvalidConfig,
        "compare needs at least one rate point");
  CompareResult out;
  for (const Arm& arm : config.arms) {
    ArmCurve c;
    c.arm = arm;
    EncodeJob job = config.job;
    job.scan = arm.scan;
    job.refs = arm.refs;
    if (config.target_bpps.empty()) {
      for (int qp : config.qps) {
        job.base_qp = qp;
        const EncodeResult r = encode_lightfield(lightfield, job);
        c.qps.push_back(qp);
        c.curve.push_back(measure(lightfield, r));
      }
    } else {
      for (double t : config.target_bpps) {
        const RateTargetResult r = rate_target_encode(lightfield, job, t);
        c.qps.push_back(r.qp);
        c.curve.push_back(measure(lightfield, r.result));
      }
    }
    out.curves.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < out.curves.size(); ++i) {
    if (out.curves[i].arm == config.anchor) out.anchor = i;
  }
  out.bd.resize(out.curves.size());
  if (out.anchor && out.curves.size() > 1) {
    for (std::size_t i = 0; i < out.curves.size(); ++i) {
      out.bd[i] = bd_metrics(out.curves[i].curve, out.curves[*out.anchor].curve);
    }
  }
  return out;
}

AblationResult run_depth_ablation(const ViewGrid& lightfield, const AblationConfig& config) {
  check(!config.qps.empty(), ErrorCode::InvalidConfig, "ablation needs at least one rate point");
  AblationResult out;
  bool identical = true;
  for (int qp : config.qps) {
    EncodeJob job = config.job;
    job.base_qp = qp;
    job.parallel = false;
    job.fast_depth = false;
    const EncodeResult full = encode_lightfield(lightfield, job);
    job.fast_depth = true;
    const EncodeResult fast = encode_lightfield(lightfield, job);
    out.full.push_back(measure(lightfield, full));
    out.fast.push_back(measure(lightfield, fast));
    for (const auto& s : full.stats) out.rd_evaluations_full += s.rd_evaluations;
    for (const auto& s : fast.stats) out.rd_evaluations_fast += s.rd_evaluations;
    if (config.timing) {
      const TimeReport t = time_report(lightfield, job, config.runs);
      out.time.t_serial_full += t.t_serial_full;
      out.time.t_serial_fast += t.t_serial_fast;
      out.time.t_parallel_fast += t.t_parallel_fast;
      out.time.serial_parallel_identical = identical && t.serial_parallel_identical;
      identical = out.time.serial_parallel_identical;
    }
  }
  if (config.qps.size() >= 4) out.bd = bd_metrics(out.fast, out.full);
  out.time.delta_t_serial = time_saving(out.time.t_serial_full, out.time.t_serial_fast);
  out.time.delta_t_parallel = time_saving(out.time.t_serial_full, out.time.t_parallel_fast);
  return out;
}

void write_compare_rd_csv(std::ostream& os, const std::vector<Named>& results) {
  os << "dataset,arm,qp,bpp,psnr_y,ssim_y\n";
  os.precision(10);
  for (const auto& [name, res] : results) {
    for (const ArmCurve& c : res.curves) {
      for (std::size_t i = 0; i < c.curve.size(); ++i) {
        os << name << ',' << arm_name(c.arm) << ',' << c.qps[i] << ',' << c.curve[i].bpp << ','
           << c.curve[i].psnr_y << ',' << c.curve[i].ssim_y << '\n';
      }
    }
  }
}

void write_bd_table(std::ostream& os, const std::vector<Named>& results) {
  if (results.empty()) return;
  const auto& first = results.front().second;
  if (!first.anchor || first.curves.size() < 2) return;
  os << "dataset";
  for (const ArmCurve& c : first.curves) {
    os << ',' << arm_name(c.arm) << " bd_rate_pct," << arm_name(c.arm) << " bd_psnr_db";
  }
  os << '\n';
  os.precision(6);
  std::vector<BdResult> sum(first.curves.size());
  for (const auto& [name, res] : results) {
    os << name;
    for (std::size_t i = 0; i < res.bd.size(); ++i) {
      const BdResult b = res.bd[i].value_or(BdResult{});
      sum[i].bd_rate_pct += b.bd_rate_pct;
      sum[i].bd_psnr_db += b.bd_psnr_db;
      os << ',' << b.bd_rate_pct << ',' << b.bd_psnr_db;
    }
    os << '\n';
  }
  os << "Average";
  for (const BdResult& s : sum) {
    os << ',' << s.bd_rate_pct / static_cast<double>(results.size()) << ','
       << s.bd_psnr_db / static_cast<double>(results.size());
  }
  os << '\n';
}

void write_ablation_csv(std::ostream& os, const std::vector<NamedAblation>& results) {
  os << "dataset,bd_rate_pct,bd_psnr_db,t_full_s,t_fast_s,t_parallel_s,delta_t_s,delta_t_p,identical\n";
  os.precision(6);
  AblationResult avg;
  bool identical = true;
  for (const auto& [name, r] : results) {
    os << name << ',' << r.bd.bd_rate_pct << ',' << r.bd.bd_psnr_db << ',' << r.time.t_serial_full << ','
       << r.time.t_serial_fast << ',' << r.time.t_parallel_fast << ',' << r.time.delta_t_serial << ','
       << r.time.delta_t_parallel << ',' << (r.time.serial_parallel_identical ? 1 : 0) << '\n';
    avg.bd.bd_rate_pct += r.bd.bd_rate_pct;
    avg.bd.bd_psnr_db += r.bd.bd_psnr_db;
    avg.time.t_serial_full += r.time.t_serial_full;
    avg.time.t_serial_fast += r.time.t_serial_fast;
    avg.time.t_parallel_fast += r.time.t_parallel_fast;
    avg.time.delta_t_serial += r.time.delta_t_serial;
    avg.time.delta_t_parallel += r.time.delta_t_parallel;
    identical = identical && r.time.serial_parallel_identical;
  }
  if (results.empty()) return;
  const auto n = static_cast<double>(results.size());
  os << "Average," << avg.bd.bd_rate_pct / n << ',' << avg.bd.bd_psnr_db / n << ',' << avg.time.t_serial_full / n
     << ',' << avg.time.t_serial_fast / n << ',' << avg.time.t_parallel_fast / n << ','
     << avg.time.delta_t_serial / n << ',' << avg.time.delta_t_parallel / n << ',' << (identical ? 1 : 0) << '\n';
}

}  // namespace lfc
