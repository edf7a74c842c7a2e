// lfc: command-line front end for the light-field codec and its experiments.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lfc/container.hpp"
#include "lfc/error.hpp"
#include "lfc/experiment.hpp"
#include "lfc/metrics.hpp"
#include "lfc/pipeline.hpp"
#include "lfc/synthetic.hpp"
#include "lfc/view_grid.hpp"

namespace fs = std::filesystem;
using namespace lfc;

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kDataError = 2, kInternalError = 3 };

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig:
    case ErrorCode::InvalidSelection:
    case ErrorCode::TargetTooSmall:
      return kConfigError;
    default:
      return kDataError;
  }
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  check(static_cast<bool>(in), ErrorCode::Io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  check(static_cast<bool>(out), ErrorCode::Io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  check(static_cast<bool>(out), ErrorCode::Io, "cannot write " + path.string());
  return out;
}

/// "WxH" or "RxC".
std::pair<int, int> parse_pair(const std::string& text) {
  int a = 0, b = 0;
  char x = 0;
  std::istringstream ss(text);
  if (!(ss >> a >> x >> b) || (x != 'x' && x != 'X') || a <= 0 || b <= 0) {
    fail(ErrorCode::InvalidConfig, "expected AxB, got '" + text + "'");
  }
  return {a, b};
}

struct InputOptions {
  std::string manifest;
  std::string chroma = "420";
  std::string select;
  std::string pad;

  void add(CLI::App* app, bool required = true) {
    auto* opt = app->add_option("-i,--input", manifest, "View manifest (row col file per line)");
    if (required) opt->required();
    app->add_option("--chroma", chroma, "Chroma format for RGB input: 444, 422 or 420")->capture_default_str();
    app->add_option("--select", select, "Centered sub-grid RxC, e.g. 13x13");
    app->add_option("--pad", pad, "Pad views to WxH by edge replication, e.g. 626x434");
  }

  ViewGrid load() const {
    ViewGrid grid = load_grid(manifest);
    if (!select.empty()) {
      const auto [r, c] = parse_pair(select);
      grid = select_center(grid, r, c);
    }
    if (!pad.empty()) {
      const auto [w, h] = parse_pair(pad);
      grid = pad_views(grid, w, h);
    }
    if (grid.color() == ColorSpace::RGB) {
      grid = convert_rgb_to_ycbcr(grid);
      const ChromaFormat fmt = parse_chroma_format(chroma);
      if (fmt != ChromaFormat::k444) grid = subsample_chroma(grid, fmt);
    }
    return grid;
  }
};

struct JobOptions {
  int qp = 32;
  int central_offset = kDefaultCentralQpOffset;
  std::optional<double> target_bpp;
  bool parallel = false;
  std::string fast_depth = "on";
  std::string scan = "proposed";
  std::string refs;
  int max_refs = kDefaultMaxRefs;
  int search_range = kDefaultSearchRange;

  void add(CLI::App* app, bool with_rate = true) {
    if (with_rate) {
      app->add_option("--qp", qp, "Base QP (0..51)")->capture_default_str();
      app->add_option("--target-bpp", target_bpp, "Pick the base QP by bisection for this rate");
    }
    app->add_option("--central-offset", central_offset, "QP offset of the central view")->capture_default_str();
    app->add_flag("--parallel", parallel, "Encode the four quadrants on separate threads");
    app->add_option("--fast-depth", fast_depth, "Co-located CU depth prediction: on|off")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    app->add_option("--scan", scan, "proposed|raster|serpentine|zigzag|spiral")->capture_default_str();
    app->add_option("--refs", refs, "proposed|lowdelay (default: proposed for the proposed scan, else lowdelay)");
    app->add_option("--max-refs", max_refs, "References per view (1..7)")->capture_default_str();
    app->add_option("--search-range", search_range, "Integer motion search range in pixels")
        ->capture_default_str();
  }

  EncodeJob job() const {
    EncodeJob j;
    j.scan = parse_scan_kind(scan);
    j.refs = refs.empty() ? (j.scan == ScanKind::Proposed ? RefKind::Proposed : RefKind::LowDelay)
                          : parse_ref_kind(refs);
    j.base_qp = qp;
    j.central_qp_offset = central_offset;
    j.fast_depth = fast_depth == "on";
    j.parallel = parallel;
    j.target_bpp = target_bpp;
    j.max_refs = max_refs;
    j.search_range = search_range;
    return j;
  }
};

/// Datasets for the experiment subcommands: manifests or the synthetic suite.
struct DatasetOptions {
  std::vector<std::string> manifests;
  std::string chroma = "420";
  bool synthetic = false;
  std::string grid = "13x13";
  std::string size = "64x64";

  void add(CLI::App* app) {
    app->add_option("-i,--input", manifests, "View manifests (one dataset each)");
    app->add_option("--chroma", chroma, "Chroma format for RGB input")->capture_default_str();
    app->add_flag("--synthetic", synthetic, "Use the built-in three-scene synthetic suite");
    app->add_option("--grid", grid, "Synthetic grid RxC")->capture_default_str();
    app->add_option("--size", size, "Synthetic view size WxH")->capture_default_str();
  }

  std::vector<std::pair<std::string, ViewGrid>> load() const {
    std::vector<std::pair<std::string, ViewGrid>> out;
    for (const auto& m : manifests) {
      InputOptions in;
      in.manifest = m;
      in.chroma = chroma;
      out.emplace_back(fs::path(m).parent_path().filename().string(), in.load());
    }
    if (synthetic) {
      const auto [r, c] = parse_pair(grid);
      const auto [w, h] = parse_pair(size);
      int i = 0;
      for (const auto& cfg : synthetic_suite(r, c, w, h)) {
        out.emplace_back("synthetic" + std::to_string(i++), generate_synthetic(cfg));
      }
    }
    check(!out.empty(), ErrorCode::InvalidConfig, "no dataset given (use --input or --synthetic)");
    return out;
  }
};

int cmd_encode(const InputOptions& in, const JobOptions& jo, const std::string& output) {
  const ViewGrid grid = in.load();
  EncodeJob job = jo.job();
  EncodeResult result;
  int qp = job.base_qp;
  if (job.target_bpp) {
    RateTargetResult r = rate_target_encode(grid, job, *job.target_bpp);
    qp = r.qp;
    if (r.unreachable) std::cerr << "warning: target rate unreachable, using QP 51\n";
    if (r.saturated) std::cerr << "warning: target rate above the QP 0 rate\n";
    result = std::move(r.result);
  } else {
    result = encode_lightfield(grid, job);
  }
  write_file(output, result.container);
  std::printf("views %zu  qp %d  bytes %zu  bpp %.6f\n", grid.size(), qp, result.container.size(), result.bpp);
  return kOk;
}

int cmd_decode(const std::string& input, const std::string& output) {
  const auto bytes = read_file(input);
  const LightfieldDecode dec = decode_lightfield_partial(bytes);
  int failures = 0;
  static constexpr const char* kNames[] = {"center", "Q0", "Q1", "Q2", "Q3"};
  for (std::size_t i = 0; i < dec.errors.size(); ++i) {
    if (dec.errors[i]) {
      std::cerr << "substream " << kNames[i] << ": " << dec.errors[i]->what() << '\n';
      ++failures;
    }
  }
  if (failures > 0) return kDataError;
  store_grid(dec.grid(), output);
  std::printf("decoded %zu views to %s\n", dec.views.size(), output.c_str());
  return kOk;
}

int cmd_view(const std::string& input, int row, int col, const std::string& output) {
  const auto bytes = read_file(input);
  const SingleViewDecode v = decode_single_view(bytes, {row, col});
  write_yuv(v.view, output);
  std::printf("view (%d,%d): decoded %d views\n", row, col, v.decoded_views);
  return kOk;
}

int cmd_analyze_scan(int rows, int cols, const std::string& scan, const std::string& refs, int max_refs,
                     const std::string& csv) {
  const ScanKind kind = parse_scan_kind(scan);
  const RefKind rk = refs.empty() ? (kind == ScanKind::Proposed ? RefKind::Proposed : RefKind::LowDelay)
                                  : parse_ref_kind(refs);
  const ScanPlan plan = make_plan(kind, rows, cols);
  const ReferenceGraph graph = make_graph(rk, plan, max_refs);
  std::ostringstream table;
  table << "coding_index,quadrant,row,col,refs,distances\n";
  table.precision(6);
  for (const ScanEntry& e : plan) {
    table << e.coding_index << ',' << to_string(e.quadrant) << ',' << e.pos.row << ',' << e.pos.col << ',';
    const auto& r = graph.refs(e.coding_index);
    for (std::size_t i = 0; i < r.size(); ++i) table << (i ? " " : "") << r[i];
    table << ',';
    for (std::size_t i = 0; i < r.size(); ++i) {
      table << (i ? " " : "") << grid_distance(e.pos, plan[static_cast<std::size_t>(r[i])].pos);
    }
    table << '\n';
  }
  if (csv.empty()) {
    std::cout << table.str();
  } else {
    open_output(csv) << table.str();
  }
  std::printf("scan %s refs %s: %zu views, mean reference distance %.6f\n", std::string(to_string(kind)).c_str(),
              std::string(to_string(rk)).c_str(), plan.size(), mean_reference_distance(plan, graph));
  return kOk;
}

int cmd_similarity(const InputOptions& in, const std::string& output) {
  const SimilarityMap map = similarity_map(in.load());
  if (output.empty()) {
    write_similarity_csv(std::cout, map);
  } else {
    auto out = open_output(output);
    write_similarity_csv(out, map);
  }
  const GridPos best = map.argmax();
  std::fprintf(stderr, "most similar view: (%d,%d) %.3f dB\n", best.row, best.col, map.at(best.row, best.col));
  return kOk;
}

int cmd_bd(const std::string& test, const std::string& anchor) {
  std::ifstream t(test), a(anchor);
  check(static_cast<bool>(t), ErrorCode::Io, "cannot open " + test);
  check(static_cast<bool>(a), ErrorCode::Io, "cannot open " + anchor);
  const BdResult r = bd_metrics(read_rd_csv(t), read_rd_csv(a));
  std::printf("bd_rate_pct,bd_psnr_db\n%.6f,%.6f\n", r.bd_rate_pct, r.bd_psnr_db);
  return kOk;
}

int cmd_compare(const DatasetOptions& data, const JobOptions& jo, const std::vector<int>& qps,
                const std::vector<double>& targets, const std::vector<std::string>& arms, const std::string& anchor,
                const std::string& outdir) {
  CompareConfig cfg;
  cfg.job = jo.job();
  cfg.qps = qps;
  cfg.target_bpps = targets;
  if (!arms.empty()) {
    cfg.arms.clear();
    for (const auto& a : arms) cfg.arms.push_back(parse_arm(a));
  }
  cfg.anchor = parse_arm(anchor);
  std::vector<Named> results;
  for (const auto& [name, grid] : data.load()) {
    std::fprintf(stderr, "compare: %s\n", name.c_str());
    results.emplace_back(name, run_compare(grid, cfg));
  }
  fs::create_directories(outdir);
  {
    auto rd = open_output(fs::path(outdir) / "rd.csv");
    write_compare_rd_csv(rd, results);
  }
  std::ostringstream bd;
  write_bd_table(bd, results);
  if (!bd.str().empty()) {
    open_output(fs::path(outdir) / "bd.csv") << bd.str();
    std::cout << bd.str();
  }
  return kOk;
}

int cmd_ablate(const DatasetOptions& data, const JobOptions& jo, const std::vector<int>& qps, int runs,
               const std::string& outdir) {
  AblationConfig cfg;
  cfg.job = jo.job();
  cfg.qps = qps;
  cfg.runs = runs;
  std::vector<NamedAblation> results;
  for (const auto& [name, grid] : data.load()) {
    std::fprintf(stderr, "ablate-depth: %s\n", name.c_str());
    results.emplace_back(name, run_depth_ablation(grid, cfg));
  }
  std::ostringstream csv;
  write_ablation_csv(csv, results);
  open_output(fs::path(outdir) / "ablation.csv") << csv.str();
  std::cout << csv.str();
  return kOk;
}

int cmd_gen(SyntheticConfig cfg, const std::string& chroma, const std::string& output) {
  cfg.chroma = parse_chroma_format(chroma);
  store_grid(generate_synthetic(cfg), output);
  std::printf("wrote %dx%d views of %dx%d to %s\n", cfg.rows, cfg.cols, cfg.width, cfg.height, output.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Light-field pseudo-sequence codec"};
  app.require_subcommand(1);
  std::function<int()> action;

  InputOptions enc_in;
  JobOptions enc_job;
  std::string enc_out;
  auto* enc = app.add_subcommand("encode", "Encode a view grid into an .lflf container");
  enc_in.add(enc);
  enc_job.add(enc);
  enc->add_option("-o,--output", enc_out, "Output .lflf file")->required();
  enc->callback([&] { action = [&] { return cmd_encode(enc_in, enc_job, enc_out); }; });

  std::string dec_in, dec_out;
  auto* dec = app.add_subcommand("decode", "Decode a container into planar .yuv views plus manifest");
  dec->add_option("-i,--input", dec_in, "Input .lflf file")->required();
  dec->add_option("-o,--output", dec_out, "Output directory")->required();
  dec->callback([&] { action = [&] { return cmd_decode(dec_in, dec_out); }; });

  std::string view_in, view_out;
  int view_row = 0, view_col = 0;
  auto* view = app.add_subcommand("view", "Decode one view (random access)");
  view->add_option("-i,--input", view_in, "Input .lflf file")->required();
  view->add_option("--row", view_row, "Grid row")->required();
  view->add_option("--col", view_col, "Grid column")->required();
  view->add_option("-o,--output", view_out, "Output .yuv file")->required();
  view->callback([&] { action = [&] { return cmd_view(view_in, view_row, view_col, view_out); }; });

  int scan_rows = 13, scan_cols = 13, scan_max_refs = kDefaultMaxRefs;
  std::string scan_kind = "proposed", scan_refs, scan_csv;
  auto* scan = app.add_subcommand("analyze-scan", "Print a coding order, its references and mean distance");
  scan->add_option("--rows", scan_rows)->capture_default_str();
  scan->add_option("--cols", scan_cols)->capture_default_str();
  scan->add_option("--scan", scan_kind)->capture_default_str();
  scan->add_option("--refs", scan_refs);
  scan->add_option("--max-refs", scan_max_refs)->capture_default_str();
  scan->add_option("-o,--output", scan_csv, "CSV file (default stdout)");
  scan->callback([&] {
    action = [&] { return cmd_analyze_scan(scan_rows, scan_cols, scan_kind, scan_refs, scan_max_refs, scan_csv); };
  });

  InputOptions sim_in;
  std::string sim_out;
  auto* sim = app.add_subcommand("similarity-map", "Mean luma PSNR of every view against all others");
  sim_in.add(sim);
  sim->add_option("-o,--output", sim_out, "CSV file (default stdout)");
  sim->callback([&] { action = [&] { return cmd_similarity(sim_in, sim_out); }; });

  std::string bd_test, bd_anchor;
  auto* bd = app.add_subcommand("bd", "Bjontegaard deltas between two RD csv files (bpp,psnr_y[,ssim_y])");
  bd->add_option("--test", bd_test)->required();
  bd->add_option("--anchor", bd_anchor)->required();
  bd->callback([&] { action = [&] { return cmd_bd(bd_test, bd_anchor); }; });

  DatasetOptions cmp_data;
  JobOptions cmp_job;
  std::vector<int> cmp_qps = {22, 27, 32, 37};
  std::vector<double> cmp_targets;
  std::vector<std::string> cmp_arms;
  std::string cmp_anchor = "zigzag+lowdelay", cmp_out = "results";
  auto* cmp = app.add_subcommand("compare", "RD curves and BD table for scan orders / reference structures");
  cmp_data.add(cmp);
  cmp_job.add(cmp, false);
  cmp->add_option("--qps", cmp_qps, "QP ladder")->delimiter(',')->capture_default_str();
  cmp->add_option("--target-bpp", cmp_targets, "Rate points in bpp instead of QPs")->delimiter(',');
  cmp->add_option("--arms", cmp_arms, "scan[+refs] list (default: proposed and the four conventional scans)")
      ->delimiter(',');
  cmp->add_option("--anchor", cmp_anchor)->capture_default_str();
  cmp->add_option("-o,--output", cmp_out, "Output directory")->capture_default_str();
  cmp->callback([&] {
    action = [&] { return cmd_compare(cmp_data, cmp_job, cmp_qps, cmp_targets, cmp_arms, cmp_anchor, cmp_out); };
  });

  DatasetOptions abl_data;
  JobOptions abl_job;
  std::vector<int> abl_qps = {22, 27, 32, 37};
  int abl_runs = 3;
  std::string abl_out = "results";
  auto* abl = app.add_subcommand("ablate-depth", "Fast depth vs full search: BD and encode time savings");
  abl_data.add(abl);
  abl_job.add(abl, false);
  abl->add_option("--qps", abl_qps, "QP ladder")->delimiter(',')->capture_default_str();
  abl->add_option("--runs", abl_runs, "Timed runs per configuration (median)")->capture_default_str();
  abl->add_option("-o,--output", abl_out, "Output directory")->capture_default_str();
  abl->callback([&] { action = [&] { return cmd_ablate(abl_data, abl_job, abl_qps, abl_runs, abl_out); }; });

  SyntheticConfig gen_cfg;
  std::string gen_chroma = "420", gen_out;
  auto* gen = app.add_subcommand("gen-synthetic", "Write a synthetic light field (.yuv views + manifest)");
  gen->add_option("--rows", gen_cfg.rows)->capture_default_str();
  gen->add_option("--cols", gen_cfg.cols)->capture_default_str();
  gen->add_option("--width", gen_cfg.width)->capture_default_str();
  gen->add_option("--height", gen_cfg.height)->capture_default_str();
  gen->add_option("--bit-depth", gen_cfg.bit_depth)->capture_default_str();
  gen->add_option("--chroma", gen_chroma)->capture_default_str();
  gen->add_option("--seed", gen_cfg.seed)->capture_default_str();
  gen->add_option("--background-disparity", gen_cfg.background_disparity)->capture_default_str();
  gen->add_option("--foreground-disparity", gen_cfg.foreground_disparity)->capture_default_str();
  gen->add_option("--vignetting", gen_cfg.vignetting)->capture_default_str();
  gen->add_option("--noise", gen_cfg.noise)->capture_default_str();
  gen->add_option("-o,--output", gen_out, "Output directory")->required();
  gen->callback([&] { action = [&] { return cmd_gen(gen_cfg, gen_chroma, gen_out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    return action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}
