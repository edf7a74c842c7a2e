#include "lfc/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <thread>

namespace lfc {

int EncodeJob::central_qp() const { return std::clamp(base_qp + central_qp_offset, 0, kMaxQp); }

double bits_per_pixel(std::size_t container_bytes, int views, int width, int height) {
  return 8.0 * static_cast<double>(container_bytes) /
         (static_cast<double>(views) * static_cast<double>(width) * static_cast<double>(height));
}

namespace {

void validate(const ViewGrid& grid, const EncodeJob& job) {
  check(grid.size() > 0, ErrorCode::InvalidConfig, "empty view grid");
  check(job.base_qp >= 0 && job.base_qp <= kMaxQp, ErrorCode::InvalidConfig, "base qp out of range");
  check(job.central_qp_offset >= -51 && job.central_qp_offset <= 51, ErrorCode::InvalidConfig,
        "central qp offset out of range");
  check(job.max_refs >= 1 && job.max_refs <= kMaxRefsPerView, ErrorCode::InvalidConfig, "max_refs out of range");
  check(grid.rows() <= 0xFFFF && grid.cols() <= 0xFFFF && grid.width() <= 0xFFFF && grid.height() <= 0xFFFF,
        ErrorCode::InvalidConfig, "grid too large for the container");
}

/// Views shared by encoder workers; each coding index is written by exactly one worker.
struct Workspace {
  const ViewGrid& grid;
  const EncodeJob& job;
  const ScanPlan& plan;
  const ReferenceGraph& graph;
  std::vector<Picture> recon;
  std::vector<DepthMap> depth;
  std::vector<EncodeStats> stats;
  std::vector<std::size_t> segment_bytes;

  void encode(int ci, std::vector<std::uint8_t>& out) {
    const ScanEntry& e = plan[static_cast<std::size_t>(ci)];
    const auto& ref_ids = graph.refs(ci);
    std::vector<const Picture*> refs;
    std::vector<const DepthMap*> maps;
    for (int r : ref_ids) {
      refs.push_back(&recon[static_cast<std::size_t>(r)]);
      maps.push_back(&depth[static_cast<std::size_t>(r)]);
    }
    std::optional<DepthPrediction> prediction;
    if (job.fast_depth && !maps.empty()) prediction.emplace(maps, grid.width(), grid.height());
    const int qp = ci == 0 ? job.central_qp() : job.base_qp;
    EncodedView v = encode_view(grid.at(e.pos), refs, RdoConfig::for_qp(qp, job.search_range),
                                prediction ? &*prediction : nullptr, ci);
    const auto k = static_cast<std::size_t>(ci);
    recon[k] = std::move(v.recon);
    depth[k] = std::move(v.depth);
    stats[k] = v.stats;
    segment_bytes[k] = v.segment.size();
    out.insert(out.end(), v.segment.begin(), v.segment.end());
  }
};

struct Layout {
  std::vector<int> central;
  std::array<std::vector<int>, 4> quadrants;
};

Layout layout_of(const ScanPlan& plan) {
  Layout l;
  if (plan.has_center()) l.central.push_back(0);
  for (int q = 0; q < 4; ++q) l.quadrants[static_cast<std::size_t>(q)] = plan.quadrant_members(quadrant_from_index(q));
  return l;
}

}  // namespace

EncodeResult encode_lightfield(const ViewGrid& grid, const EncodeJob& job) {
  validate(grid, job);
  EncodeResult result;
  result.plan = make_plan(job.scan, grid.rows(), grid.cols());
  result.graph = make_graph(job.refs, result.plan, job.max_refs);
  const std::size_t n = result.plan.size();
  Workspace ws{grid, job, result.plan, result.graph, std::vector<Picture>(n), std::vector<DepthMap>(n),
               std::vector<EncodeStats>(n), std::vector<std::size_t>(n)};
  const Layout layout = layout_of(result.plan);

  std::vector<std::uint8_t> central;
  for (int ci : layout.central) ws.encode(ci, central);

  std::array<std::vector<std::uint8_t>, 4> quadrants;
  const auto run_quadrant = [&](std::size_t q) {
    for (int ci : layout.quadrants[q]) ws.encode(ci, quadrants[q]);
  };
  if (job.parallel) {
    std::array<std::exception_ptr, 4> errors;
    std::vector<std::thread> workers;
    for (std::size_t q = 0; q < 4; ++q) {
      if (layout.quadrants[q].empty()) continue;
      workers.emplace_back([&, q] {
        try {
          run_quadrant(q);
        } catch (...) {
          errors[q] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  } else {
    for (std::size_t q = 0; q < 4; ++q) run_quadrant(q);
  }

  ContainerHeader h;
  h.rows = static_cast<std::uint16_t>(grid.rows());
  h.cols = static_cast<std::uint16_t>(grid.cols());
  h.width = static_cast<std::uint16_t>(grid.width());
  h.height = static_cast<std::uint16_t>(grid.height());
  h.bit_depth = static_cast<std::uint8_t>(grid.bit_depth());
  h.chroma = grid.chroma();
  h.color = grid.color();
  h.scan = job.scan;
  h.refs = job.refs;
  h.max_refs = static_cast<std::uint8_t>(job.max_refs);
  h.base_qp = static_cast<std::uint8_t>(job.base_qp);
  h.central_qp_offset = static_cast<std::int8_t>(job.central_qp_offset);
  h.central.views = static_cast<std::uint16_t>(layout.central.size());
  for (std::size_t q = 0; q < 4; ++q) h.quadrants[q].views = static_cast<std::uint16_t>(layout.quadrants[q].size());

  result.container = assemble_container(h, central, quadrants);
  result.recon = std::move(ws.recon);
  result.stats = std::move(ws.stats);
  result.segment_bytes = std::move(ws.segment_bytes);
  result.bpp = bits_per_pixel(result.container.size(), static_cast<int>(grid.size()), grid.width(), grid.height());
  return result;
}

namespace {

struct DecodeContext {
  ContainerHeader header;
  ScanPlan plan;
  ReferenceGraph graph;
  ViewFormat format;
  std::span<const std::uint8_t> container;

  explicit DecodeContext(std::span<const std::uint8_t> bytes)
      : header(read_container_header(bytes)),
        plan(make_plan(header.scan, header.rows, header.cols)),
        graph(make_graph(header.refs, plan, header.max_refs)),
        format{header.width, header.height, header.bit_depth, header.chroma},
        container(bytes) {
    const Layout l = layout_of(plan);
    check(header.central.views == l.central.size(), ErrorCode::CorruptStream, "central view count mismatch");
    for (std::size_t q = 0; q < 4; ++q) {
      check(header.quadrants[q].views == l.quadrants[q].size(), ErrorCode::CorruptStream,
            "quadrant view count mismatch");
    }
  }

  /// Decodes the first `count` segments of a substream whose coding indices
  /// are `members`; `recon` must already hold every reference.
  void decode_substream(const Substream& s, const std::vector<int>& members, std::size_t count,
                        std::vector<std::optional<Picture>>& recon) const {
    const auto bytes = substream_bytes(container, s);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < count; ++i) {
      check(bytes.size() - pos >= kSegmentHeaderSize, ErrorCode::CorruptStream, "substream ends inside a segment");
      const auto rest = bytes.subspan(pos);
      std::uint32_t len = 0;
      for (int b = 0; b < 4; ++b) len |= static_cast<std::uint32_t>(rest[3 + static_cast<std::size_t>(b)]) << (8 * b);
      check(rest.size() - kSegmentHeaderSize >= len, ErrorCode::CorruptStream, "substream ends inside a segment");
      const auto segment = rest.first(kSegmentHeaderSize + len);
      const int ci = members[i];
      const SegmentHeader sh = parse_segment_header(segment);
      check(sh.coding_index == ci, ErrorCode::CorruptStream, "unexpected coding index in substream");
      const int expected_qp =
          ci == 0 ? std::clamp(header.base_qp + header.central_qp_offset, 0, kMaxQp) : header.base_qp;
      check(sh.qp == expected_qp, ErrorCode::CorruptStream, "segment qp disagrees with the container header");
      std::vector<const Picture*> refs;
      for (int r : graph.refs(ci)) {
        const auto& ref = recon[static_cast<std::size_t>(r)];
        check(ref.has_value(), ErrorCode::CorruptStream, "reference view unavailable");
        refs.push_back(&*ref);
      }
      DecodedView v = decode_view(segment, format, refs);
      v.recon.color = header.color;
      recon[static_cast<std::size_t>(ci)] = std::move(v.recon);
      pos += segment.size();
    }
    if (count == members.size()) {
      check(pos == bytes.size(), ErrorCode::CorruptStream, "trailing bytes in substream");
    }
  }
};

}  // namespace

bool LightfieldDecode::complete() const {
  return std::all_of(views.begin(), views.end(), [](const auto& v) { return v.has_value(); });
}

ViewGrid LightfieldDecode::grid() const {
  for (const auto& e : errors) {
    if (e) throw *e;
  }
  check(complete(), ErrorCode::CorruptStream, "light field incomplete");
  std::vector<Picture> pics;
  pics.reserve(views.size());
  for (const auto& v : views) pics.push_back(*v);
  return ViewGrid(header.rows, header.cols, std::move(pics));
}

LightfieldDecode decode_lightfield_partial(std::span<const std::uint8_t> container) {
  const DecodeContext ctx(container);
  const Layout layout = layout_of(ctx.plan);
  std::vector<std::optional<Picture>> recon(ctx.plan.size());
  LightfieldDecode out;
  out.header = ctx.header;

  const auto attempt = [&](std::size_t slot, const Substream& s, const std::vector<int>& members) {
    try {
      ctx.decode_substream(s, members, members.size(), recon);
    } catch (const Error& e) {
      out.errors[slot] = e;
      for (int ci : members) recon[static_cast<std::size_t>(ci)].reset();
    }
  };
  attempt(0, ctx.header.central, layout.central);
  for (std::size_t q = 0; q < 4; ++q) attempt(q + 1, ctx.header.quadrants[q], layout.quadrants[q]);

  out.views.resize(ctx.plan.size());
  for (const ScanEntry& e : ctx.plan) {
    out.views[static_cast<std::size_t>(e.pos.row) * ctx.header.cols + e.pos.col] =
        std::move(recon[static_cast<std::size_t>(e.coding_index)]);
  }
  return out;
}

ViewGrid decode_lightfield(std::span<const std::uint8_t> container) {
  return decode_lightfield_partial(container).grid();
}

SingleViewDecode decode_single_view(std::span<const std::uint8_t> container, GridPos pos) {
  const DecodeContext ctx(container);
  check(pos.row >= 0 && pos.row < ctx.header.rows && pos.col >= 0 && pos.col < ctx.header.cols,
        ErrorCode::InvalidSelection, "view position outside the grid");
  const Layout layout = layout_of(ctx.plan);
  const int target = ctx.plan.coding_index_of(pos);
  std::vector<std::optional<Picture>> recon(ctx.plan.size());

  int decoded = 0;
  if (!layout.central.empty()) {
    ctx.decode_substream(ctx.header.central, layout.central, 1, recon);
    decoded = 1;
  }
  const Quadrant q = ctx.plan[static_cast<std::size_t>(target)].quadrant;
  if (q != Quadrant::Center) {
    const auto qi = static_cast<std::size_t>(quadrant_index(q));
    const auto& members = layout.quadrants[qi];
    const auto count = static_cast<std::size_t>(std::find(members.begin(), members.end(), target) - members.begin()) + 1;
    ctx.decode_substream(ctx.header.quadrants[qi], members, count, recon);
    decoded += static_cast<int>(count);
  }
  return {std::move(*recon[static_cast<std::size_t>(target)]), decoded};
}

RateTargetResult rate_target_encode(const ViewGrid& grid, const EncodeJob& job, double target_bpp) {
  check(target_bpp > 0.0, ErrorCode::InvalidConfig, "target bpp must be positive");
  std::map<int, EncodeResult> cache;
  RateTargetResult out;
  const auto probe = [&](int qp) -> const EncodeResult& {
    auto it = cache.find(qp);
    if (it == cache.end()) {
      EncodeJob j = job;
      j.base_qp = qp;
      it = cache.emplace(qp, encode_lightfield(grid, j)).first;
      ++out.total_probes;
    }
    return it->second;
  };
  const double limit = 1.1 * target_bpp;

  // Smallest QP whose rate fits; QP 51 is assumed to fit until checked.
  int lo = 0, hi = kMaxQp;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (probe(mid).bpp <= limit) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  out.bisection_probes = out.total_probes;
  int best = lo;
  if (probe(best).bpp > limit) {
    out.unreachable = true;
  } else if (probe(best).bpp > target_bpp && best < kMaxQp) {
    if (std::abs(probe(best + 1).bpp - target_bpp) < std::abs(probe(best).bpp - target_bpp)) best = best + 1;
  }
  out.saturated = best == 0 && probe(0).bpp < target_bpp;
  out.qp = best;
  out.result = std::move(cache.at(best));
  out.bpp = out.result.bpp;
  return out;
}

double time_saving(double t_anchor, double t) { return t_anchor > 0.0 ? 100.0 * (t_anchor - t) / t_anchor : 0.0; }

TimeReport time_report(const ViewGrid& grid, const EncodeJob& job, int runs) {
  check(runs >= 1, ErrorCode::InvalidConfig, "runs must be positive");
  const auto median_time = [&](bool fast, bool parallel, std::vector<std::uint8_t>* bytes) {
    EncodeJob j = job;
    j.fast_depth = fast;
    j.parallel = parallel;
    std::vector<double> times;
    for (int i = 0; i < runs; ++i) {
      const auto t0 = std::chrono::steady_clock::now();
      EncodeResult r = encode_lightfield(grid, j);
      times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      if (bytes != nullptr) *bytes = std::move(r.container);
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
  };
  TimeReport rep;
  std::vector<std::uint8_t> serial_bytes, parallel_bytes;
  rep.t_serial_full = median_time(false, false, nullptr);
  rep.t_serial_fast = median_time(true, false, &serial_bytes);
  rep.t_parallel_fast = median_time(true, true, &parallel_bytes);
  rep.delta_t_serial = time_saving(rep.t_serial_full, rep.t_serial_fast);
  rep.delta_t_parallel = time_saving(rep.t_serial_full, rep.t_parallel_fast);
  rep.serial_parallel_identical = serial_bytes == parallel_bytes;
  return rep;
}

}  // namespace lfc
