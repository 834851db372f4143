#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "bodygraphs/body.hpp"

namespace bodygraphs {

/// Bucket grid over a fixed point array. Queries visit the 3x3 block of cells
/// around a location, so the cell size must be at least the query radius.
class UniformGrid {
 public:
  UniformGrid(const std::vector<Vec2>& pts, double cell) : pts_(&pts), cell_(cell) {
    std::vector<std::pair<std::int64_t, std::uint32_t>> keyed;
    keyed.reserve(pts.size());
    for (std::uint32_t i = 0; i < pts.size(); ++i) keyed.emplace_back(key_of(pts[i]), i);
    std::sort(keyed.begin(), keyed.end());
    order_.reserve(keyed.size());
    for (std::size_t i = 0; i < keyed.size(); ++i) {
      order_.push_back(keyed[i].second);
      auto& range = cells_[keyed[i].first];
      if (range.second == 0) range.first = static_cast<std::uint32_t>(i);
      range.second = static_cast<std::uint32_t>(i + 1);
    }
  }

  double cell() const { return cell_; }

  template <class F>
  void for_each_near(Vec2 p, F&& f) const {
    const auto cx = static_cast<std::int64_t>(std::floor(p.x / cell_));
    const auto cy = static_cast<std::int64_t>(std::floor(p.y / cell_));
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const auto it = cells_.find(pack(cx + dx, cy + dy));
        if (it == cells_.end()) continue;
        for (std::uint32_t k = it->second.first; k < it->second.second; ++k) f(order_[k]);
      }
  }

 private:
  static std::int64_t pack(std::int64_t cx, std::int64_t cy) { return (cx << 32) ^ (cy & 0xffffffffLL); }
  std::int64_t key_of(Vec2 p) const {
    return pack(static_cast<std::int64_t>(std::floor(p.x / cell_)), static_cast<std::int64_t>(std::floor(p.y / cell_)));
  }

  const std::vector<Vec2>* pts_;
  double cell_;
  std::vector<std::uint32_t> order_;
  std::unordered_map<std::int64_t, std::pair<std::uint32_t, std::uint32_t>> cells_;
};

inline constexpr std::size_t kBruteForceLimit = 2000;

/// Calls f(i, j, d) for every i < j with d = ||p_j - p_i||_A <= radius.
template <class F>
void for_each_pair_within(const SymmetricBody& body, const std::vector<Vec2>& pts, double radius, F&& f) {
  const double euclid = radius * body.circumradius() * (1.0 + 1e-9) + 1e-12;
  const double euclid2 = euclid * euclid;
  auto visit = [&](std::uint32_t i, std::uint32_t j) {
    const Vec2 d = pts[j] - pts[i];
    if (dot(d, d) > euclid2) return;
    const double nd = body.norm(d);
    if (nd <= radius) f(i, j, nd);
  };
  if (pts.size() <= kBruteForceLimit) {
    for (std::uint32_t i = 0; i < pts.size(); ++i)
      for (std::uint32_t j = i + 1; j < pts.size(); ++j) visit(i, j);
    return;
  }
  const UniformGrid grid(pts, euclid);
  for (std::uint32_t i = 0; i < pts.size(); ++i)
    grid.for_each_near(pts[i], [&](std::uint32_t j) {
      if (j > i) visit(i, j);
    });
}

}  // namespace bodygraphs
