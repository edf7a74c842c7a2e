#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lfc/view_grid.hpp"

namespace lfc {

enum class Quadrant : std::uint8_t { Center = 0, Q0 = 1, Q1 = 2, Q2 = 3, Q3 = 4 };

/// Index 0..3 of a non-center quadrant.
constexpr int quadrant_index(Quadrant q) { return static_cast<int>(q) - 1; }
constexpr Quadrant quadrant_from_index(int i) { return static_cast<Quadrant>(i + 1); }
std::string_view to_string(Quadrant q) noexcept;

enum class ScanKind : std::uint8_t { Proposed = 0, Raster = 1, Serpentine = 2, Zigzag = 3, Spiral = 4 };
std::string_view to_string(ScanKind kind) noexcept;
ScanKind parse_scan_kind(std::string_view text);

struct ScanEntry {
  int coding_index = 0;
  Quadrant quadrant = Quadrant::Q0;
  GridPos pos;
};

/// Coding order over a rows x cols view grid.
class ScanPlan {
public:
  ScanPlan() = default;
  ScanPlan(ScanKind kind, int rows, int cols, std::vector<ScanEntry> entries);

  ScanKind kind() const { return kind_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }
  const ScanEntry& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<ScanEntry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Coding index of the view at a grid position.
  int coding_index_of(GridPos pos) const;

  /// Coding indices belonging to one quadrant, in coding order.
  std::vector<int> quadrant_members(Quadrant q) const;

  /// True when the plan starts with an intra-coded center view.
  bool has_center() const { return !entries_.empty() && entries_.front().quadrant == Quadrant::Center; }

private:
  ScanKind kind_ = ScanKind::Raster;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<ScanEntry> entries_;
  std::vector<int> index_of_pos_;
};

/// Center view first, then four independently scanned quadrants. The quadrants
/// are a pinwheel around the center view (each one a 90 degree rotation of the
/// previous, clockwise from the above-left block):
///
///   Q0 = rows [0, cr-1]   x cols [0, cc]        (above, includes center column)
///   Q1 = rows [0, cr]     x cols [cc+1, C-1]    (right, includes center row)
///   Q2 = rows [cr+1, R-1] x cols [cc, C-1]      (below)
///   Q3 = rows [cr, R-1]   x cols [0, cc-1]      (left)
///
/// with (cr, cc) the central view. Each quadrant is a serpentine starting at the
/// cell touching the center and, wherever the rectangle allows it, ending at the
/// outer grid corner. For 13x13 every quadrant is 6x7 / 7x6 and holds 42 views.
ScanPlan plan_proposed(int rows, int cols);

/// Single-sequence scans; every entry is tagged Q0.
ScanPlan plan_conventional(int rows, int cols, ScanKind kind);

ScanPlan make_plan(ScanKind kind, int rows, int cols);

class ReferenceGraph;

/// Mean over inter-coded views of the mean Euclidean grid distance to their
/// references; 0 when no view has references.
double mean_reference_distance(const ScanPlan& plan, const ReferenceGraph& graph);

double grid_distance(GridPos a, GridPos b);

}  // namespace lfc
