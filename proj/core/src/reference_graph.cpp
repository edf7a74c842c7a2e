#include "lfc/reference_graph.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "lfc/codec/view_codec.hpp"
#include "lfc/error.hpp"

namespace lfc {

std::string_view to_string(RefKind kind) noexcept {
  return kind == RefKind::Proposed ? "proposed" : "lowdelay";
}

RefKind parse_ref_kind(std::string_view text) {
  if (text == "proposed") return RefKind::Proposed;
  if (text == "lowdelay") return RefKind::LowDelay;
  fail(ErrorCode::InvalidConfig, "unknown reference kind '" + std::string(text) + "'");
}

ReferenceGraph::ReferenceGraph(std::vector<std::vector<int>> refs, int max_refs)
    : refs_(std::move(refs)), max_refs_(max_refs) {
  check(max_refs >= 1 && max_refs <= kMaxRefsPerView, ErrorCode::InvalidConfig, "max_refs must be in [1,7]");
  for (std::size_t i = 0; i < refs_.size(); ++i) {
    check(refs_[i].size() <= static_cast<std::size_t>(max_refs), ErrorCode::InvalidGrid, "too many references");
    for (int r : refs_[i]) {
      check(r >= 0 && r < static_cast<int>(i), ErrorCode::InvalidGrid, "reference to a view not yet coded");
    }
  }
}

namespace {

// Squared distances keep the ordering exact.
int squared_distance(GridPos a, GridPos b) {
  const int dr = a.row - b.row;
  const int dc = a.col - b.col;
  return dr * dr + dc * dc;
}

// Coding-order sub-sequences that are coded independently: the whole plan for
// single-sequence scans, center + quadrant for quadrant plans.
std::vector<std::vector<int>> subsequences(const ScanPlan& plan) {
  if (!plan.has_center()) {
    std::vector<int> all(plan.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return {all};
  }
  std::vector<std::vector<int>> out;
  for (int q = 0; q < 4; ++q) {
    std::vector<int> seq = {0};
    for (int idx : plan.quadrant_members(quadrant_from_index(q))) seq.push_back(idx);
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace

ReferenceGraph build_proposed(const ScanPlan& plan, int max_refs) {
  std::vector<std::vector<int>> refs(plan.size());
  for (const auto& seq : subsequences(plan)) {
    for (std::size_t k = 1; k < seq.size(); ++k) {
      const GridPos here = plan[static_cast<std::size_t>(seq[k])].pos;
      std::vector<int> candidates(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(k));
      std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
        const int da = squared_distance(here, plan[static_cast<std::size_t>(a)].pos);
        const int db = squared_distance(here, plan[static_cast<std::size_t>(b)].pos);
        return da != db ? da < db : a > b;
      });
      if (candidates.size() > static_cast<std::size_t>(max_refs)) candidates.resize(static_cast<std::size_t>(max_refs));
      refs[static_cast<std::size_t>(seq[k])] = std::move(candidates);
    }
  }
  return ReferenceGraph(std::move(refs), max_refs);
}

ReferenceGraph build_low_delay(const ScanPlan& plan, int max_refs) {
  constexpr std::array<int, 4> kOffsets = {1, 3, 7, 11};
  std::vector<std::vector<int>> refs(plan.size());
  for (const auto& seq : subsequences(plan)) {
    for (std::size_t k = 1; k < seq.size(); ++k) {
      std::vector<int>& out = refs[static_cast<std::size_t>(seq[k])];
      for (int off : kOffsets) {
        const int local = std::max(0, static_cast<int>(k) - off);
        const int global = seq[static_cast<std::size_t>(local)];
        if (std::find(out.begin(), out.end(), global) == out.end()) out.push_back(global);
        if (out.size() == static_cast<std::size_t>(max_refs)) break;
      }
    }
  }
  return ReferenceGraph(std::move(refs), max_refs);
}

ReferenceGraph make_graph(RefKind kind, const ScanPlan& plan, int max_refs) {
  return kind == RefKind::Proposed ? build_proposed(plan, max_refs) : build_low_delay(plan, max_refs);
}

bool respects_quadrants(const ScanPlan& plan, const ReferenceGraph& graph) {
  for (const ScanEntry& e : plan) {
    for (int r : graph.refs(e.coding_index)) {
      const Quadrant rq = plan[static_cast<std::size_t>(r)].quadrant;
      if (rq != Quadrant::Center && rq != e.quadrant) return false;
    }
  }
  return true;
}

}  // namespace lfc
