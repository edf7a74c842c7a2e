#pragma once

#include <string_view>
#include <vector>

#include "lfc/scan_plan.hpp"

namespace lfc {

enum class RefKind : std::uint8_t { Proposed = 0, LowDelay = 1 };
std::string_view to_string(RefKind kind) noexcept;
RefKind parse_ref_kind(std::string_view text);

inline constexpr int kDefaultMaxRefs = 4;

/// Per coding index, the ordered reference list (earlier coding indices only).
class ReferenceGraph {
public:
  ReferenceGraph() = default;
  ReferenceGraph(std::vector<std::vector<int>> refs, int max_refs);

  std::size_t size() const { return refs_.size(); }
  int max_refs() const { return max_refs_; }
  const std::vector<int>& refs(int coding_index) const { return refs_[static_cast<std::size_t>(coding_index)]; }

private:
  std::vector<std::vector<int>> refs_;
  int max_refs_ = kDefaultMaxRefs;
};

/// Spatial-adjacency references: candidates are views already coded in the
/// same quadrant plus the center view; the max_refs nearest (Euclidean grid
/// distance) are kept, ties going to the more recently coded view.
ReferenceGraph build_proposed(const ScanPlan& plan, int max_refs = kDefaultMaxRefs);

/// POC-style low-delay references {i-1, i-3, i-7, i-11}, offsets clamped to
/// the first picture and de-duplicated. Applied per quadrant sub-sequence
/// (center first) for quadrant plans so quadrants stay independent.
ReferenceGraph build_low_delay(const ScanPlan& plan, int max_refs = kDefaultMaxRefs);

ReferenceGraph make_graph(RefKind kind, const ScanPlan& plan, int max_refs = kDefaultMaxRefs);

/// True when every reference of a quadrant view is the center or lies in the
/// same quadrant.
bool respects_quadrants(const ScanPlan& plan, const ReferenceGraph& graph);

}  // namespace lfc
