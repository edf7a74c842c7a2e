#include "lfc/scan_plan.hpp"

#include <array>
#include <cmath>
#include <string>

#include "lfc/error.hpp"
#include "lfc/reference_graph.hpp"

namespace lfc {

std::string_view to_string(Quadrant q) noexcept {
  switch (q) {
    case Quadrant::Center: return "C";
    case Quadrant::Q0: return "Q0";
    case Quadrant::Q1: return "Q1";
    case Quadrant::Q2: return "Q2";
    case Quadrant::Q3: return "Q3";
  }
  return "?";
}

std::string_view to_string(ScanKind kind) noexcept {
  switch (kind) {
    case ScanKind::Proposed: return "proposed";
    case ScanKind::Raster: return "raster";
    case ScanKind::Serpentine: return "serpentine";
    case ScanKind::Zigzag: return "zigzag";
    case ScanKind::Spiral: return "spiral";
  }
  return "?";
}

ScanKind parse_scan_kind(std::string_view text) {
  for (ScanKind k : {ScanKind::Proposed, ScanKind::Raster, ScanKind::Serpentine, ScanKind::Zigzag, ScanKind::Spiral}) {
    if (to_string(k) == text) return k;
  }
  fail(ErrorCode::InvalidConfig, "unknown scan kind '" + std::string(text) + "'");
}

ScanPlan::ScanPlan(ScanKind kind, int rows, int cols, std::vector<ScanEntry> entries)
    : kind_(kind), rows_(rows), cols_(cols), entries_(std::move(entries)),
      index_of_pos_(static_cast<std::size_t>(rows) * cols, -1) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const ScanEntry& e = entries_[i];
    check(e.coding_index == static_cast<int>(i), ErrorCode::InvalidGrid, "coding indices must be contiguous");
    check(e.pos.row >= 0 && e.pos.row < rows && e.pos.col >= 0 && e.pos.col < cols, ErrorCode::InvalidGrid,
          "scan entry outside the grid");
    int& slot = index_of_pos_[static_cast<std::size_t>(e.pos.row) * cols + e.pos.col];
    check(slot < 0, ErrorCode::InvalidGrid, "grid position visited twice");
    slot = e.coding_index;
  }
  check(entries_.size() == index_of_pos_.size(), ErrorCode::InvalidGrid, "scan does not cover the grid");
}

int ScanPlan::coding_index_of(GridPos pos) const {
  check(pos.row >= 0 && pos.row < rows_ && pos.col >= 0 && pos.col < cols_, ErrorCode::InvalidSelection,
        "position outside the grid");
  return index_of_pos_[static_cast<std::size_t>(pos.row) * cols_ + pos.col];
}

std::vector<int> ScanPlan::quadrant_members(Quadrant q) const {
  std::vector<int> out;
  for (const ScanEntry& e : entries_) {
    if (e.quadrant == q) out.push_back(e.coding_index);
  }
  return out;
}

namespace {

struct Rect {
  int row0, col0, rows, cols;
};

// Serpentine over a rectangle starting at one of its corners. `row_lines`
// selects whether lines run along rows (alternating left/right) or columns.
std::vector<GridPos> serpentine_from_corner(const Rect& r, GridPos start, bool row_lines) {
  std::vector<GridPos> out;
  out.reserve(static_cast<std::size_t>(r.rows) * r.cols);
  const bool start_top = start.row == r.row0;
  const bool start_left = start.col == r.col0;
  if (row_lines) {
    for (int i = 0; i < r.rows; ++i) {
      const int row = start_top ? r.row0 + i : r.row0 + r.rows - 1 - i;
      const bool left_to_right = (i % 2 == 0) == start_left;
      for (int j = 0; j < r.cols; ++j) {
        out.push_back({row, left_to_right ? r.col0 + j : r.col0 + r.cols - 1 - j});
      }
    }
  } else {
    for (int j = 0; j < r.cols; ++j) {
      const int col = start_left ? r.col0 + j : r.col0 + r.cols - 1 - j;
      const bool top_to_bottom = (j % 2 == 0) == start_top;
      for (int i = 0; i < r.rows; ++i) {
        out.push_back({top_to_bottom ? r.row0 + i : r.row0 + r.rows - 1 - i, col});
      }
    }
  }
  return out;
}

}  // namespace

ScanPlan plan_proposed(int rows, int cols) {
  check(rows >= 3 && cols >= 3 && rows % 2 == 1 && cols % 2 == 1, ErrorCode::InvalidGrid,
        "proposed scan needs odd grid dimensions >= 3");
  const int cr = (rows - 1) / 2;
  const int cc = (cols - 1) / 2;

  // Rectangle, start cell (touching the center) and far corner per quadrant.
  const std::array<Rect, 4> rects = {{
      {0, 0, cr, cc + 1},
      {0, cc + 1, cr + 1, cols - cc - 1},
      {cr + 1, cc, rows - cr - 1, cols - cc},
      {cr, 0, rows - cr, cc},
  }};
  const std::array<GridPos, 4> starts = {{{cr - 1, cc}, {cr, cc + 1}, {cr + 1, cc}, {cr, cc - 1}}};
  const std::array<GridPos, 4> corners = {{{0, 0}, {0, cols - 1}, {rows - 1, cols - 1}, {rows - 1, 0}}};
  // Rotational default when neither orientation reaches the corner.
  const std::array<bool, 4> default_row_lines = {false, true, false, true};

  std::vector<ScanEntry> entries;
  entries.reserve(static_cast<std::size_t>(rows) * cols);
  entries.push_back({0, Quadrant::Center, {cr, cc}});
  for (int q = 0; q < 4; ++q) {
    std::vector<GridPos> path = serpentine_from_corner(rects[q], starts[q], default_row_lines[q]);
    if (!(path.back() == corners[q])) {
      std::vector<GridPos> other = serpentine_from_corner(rects[q], starts[q], !default_row_lines[q]);
      if (other.back() == corners[q]) path = std::move(other);
    }
    for (GridPos p : path) {
      entries.push_back({static_cast<int>(entries.size()), quadrant_from_index(q), p});
    }
  }
  return ScanPlan(ScanKind::Proposed, rows, cols, std::move(entries));
}

ScanPlan plan_conventional(int rows, int cols, ScanKind kind) {
  check(rows >= 1 && cols >= 1, ErrorCode::InvalidGrid, "empty grid");
  std::vector<GridPos> order;
  order.reserve(static_cast<std::size_t>(rows) * cols);
  switch (kind) {
    case ScanKind::Raster:
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) order.push_back({r, c});
      break;
    case ScanKind::Serpentine:
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) order.push_back({r, r % 2 == 0 ? c : cols - 1 - c});
      break;
    case ScanKind::Zigzag:
      // JPEG coefficient order: (0,0) (0,1) (1,0) (2,0) (1,1) (0,2) ...
      for (int s = 0; s <= rows + cols - 2; ++s) {
        if (s % 2 == 0) {
          for (int r = std::min(s, rows - 1); r >= 0 && s - r < cols; --r) order.push_back({r, s - r});
        } else {
          for (int c = std::min(s, cols - 1); c >= 0 && s - c < rows; --c) order.push_back({s - c, c});
        }
      }
      break;
    case ScanKind::Spiral: {
      check(rows % 2 == 1 && cols % 2 == 1, ErrorCode::InvalidGrid, "spiral scan needs odd grid dimensions");
      // Clockwise outward square spiral: right 1, down 1, left 2, up 2, right 3, ...
      GridPos p{(rows - 1) / 2, (cols - 1) / 2};
      const std::array<GridPos, 4> steps = {{{0, 1}, {1, 0}, {0, -1}, {-1, 0}}};
      const std::size_t total = static_cast<std::size_t>(rows) * cols;
      order.push_back(p);
      for (int leg = 0; order.size() < total; ++leg) {
        const int len = leg / 2 + 1;
        for (int k = 0; k < len; ++k) {
          p.row += steps[leg % 4].row;
          p.col += steps[leg % 4].col;
          if (p.row >= 0 && p.row < rows && p.col >= 0 && p.col < cols) order.push_back(p);
        }
      }
      break;
    }
    case ScanKind::Proposed:
      return plan_proposed(rows, cols);
  }
  std::vector<ScanEntry> entries;
  entries.reserve(order.size());
  for (GridPos p : order) {
    entries.push_back({static_cast<int>(entries.size()), Quadrant::Q0, p});
  }
  return ScanPlan(kind, rows, cols, std::move(entries));
}

ScanPlan make_plan(ScanKind kind, int rows, int cols) {
  if (kind == ScanKind::Proposed) {
    // A single view has no quadrants; it is just the intra-coded center.
    if (rows == 1 && cols == 1) {
      return ScanPlan(ScanKind::Proposed, 1, 1, {{0, Quadrant::Center, {0, 0}}});
    }
    return plan_proposed(rows, cols);
  }
  return plan_conventional(rows, cols, kind);
}

double grid_distance(GridPos a, GridPos b) {
  const double dr = a.row - b.row;
  const double dc = a.col - b.col;
  return std::sqrt(dr * dr + dc * dc);
}

double mean_reference_distance(const ScanPlan& plan, const ReferenceGraph& graph) {
  check(graph.size() == plan.size(), ErrorCode::InvalidGrid, "graph does not match plan");
  double total = 0.0;
  int inter_views = 0;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const auto& refs = graph.refs(static_cast<int>(i));
    if (refs.empty()) continue;
    double sum = 0.0;
    for (int r : refs) sum += grid_distance(plan[i].pos, plan[static_cast<std::size_t>(r)].pos);
    total += sum / static_cast<double>(refs.size());
    ++inter_views;
  }
  return inter_views == 0 ? 0.0 : total / inter_views;
}

}  // namespace lfc
