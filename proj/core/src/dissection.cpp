#include "acqlab/dissection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "acqlab/error.hpp"

namespace acqlab {

Dissection::Dissection(const PointSet& points, std::size_t m, double radius, CellAdjacency rule)
    : m_(m), radius_(radius), rule_(rule) {
  if (m == 0) throw Error(ErrorCode::config_error, "dissection needs m >= 1");
  const std::size_t cells = m * m;
  cell_of_.resize(points.size());
  offsets_.assign(cells + 1, 0);
  auto index = [m](double x) {
    const auto i = static_cast<long long>(std::floor(x * static_cast<double>(m)));
    return static_cast<std::size_t>(std::clamp<long long>(i, 0, static_cast<long long>(m) - 1));
  };
  for (std::size_t i = 0; i < points.size(); ++i) {
    cell_of_[i] = static_cast<CellId>(index(points[i].y) * m + index(points[i].x));
    ++offsets_[cell_of_[i] + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) offsets_[c + 1] += offsets_[c];
  members_.resize(points.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < points.size(); ++i) members_[fill[cell_of_[i]]++] = static_cast<Vertex>(i);
}

Point Dissection::corner(CellId c) const {
  return {static_cast<double>(col(c)) * side(), static_cast<double>(row(c)) * side()};
}

std::vector<std::pair<int, int>> Dissection::adjacency_offsets() const {
  std::vector<std::pair<int, int>> out;
  switch (rule_) {
    case CellAdjacency::four:
      out = {{-1, 0}, {0, -1}, {0, 1}, {1, 0}};
      break;
    case CellAdjacency::touching8:
      for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc)
          if (dr != 0 || dc != 0) out.emplace_back(dr, dc);
      break;
    case CellAdjacency::corner_rule: {
      const double s = side();
      const double reach = radius_ - s * std::sqrt(2.0);
      if (reach < 0) break;
      const int span = static_cast<int>(std::floor(reach / s)) + 1;
      const double reach2 = reach * reach;
      for (int dr = -span; dr <= span; ++dr) {
        for (int dc = -span; dc <= span; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const double d2 = (static_cast<double>(dr) * dr + static_cast<double>(dc) * dc) * s * s;
          if (d2 <= reach2) out.emplace_back(dr, dc);
        }
      }
      break;
    }
  }
  return out;
}

bool Dissection::adjacent(CellId a, CellId b) const {
  if (a == b) return false;
  const long dr = static_cast<long>(row(b)) - static_cast<long>(row(a));
  const long dc = static_cast<long>(col(b)) - static_cast<long>(col(a));
  switch (rule_) {
    case CellAdjacency::four: return std::abs(dr) + std::abs(dc) == 1;
    case CellAdjacency::touching8: return std::abs(dr) <= 1 && std::abs(dc) <= 1;
    case CellAdjacency::corner_rule: {
      const double s = side();
      const double reach = radius_ - s * std::sqrt(2.0);
      if (reach < 0) return false;
      const double d2 = (static_cast<double>(dr) * dr + static_cast<double>(dc) * dc) * s * s;
      return d2 <= reach * reach;
    }
  }
  return false;
}

std::vector<CellId> Dissection::neighbors(CellId c) const {
  std::vector<CellId> out;
  const long r0 = static_cast<long>(row(c));
  const long c0 = static_cast<long>(col(c));
  const long mm = static_cast<long>(m_);
  for (auto [dr, dc] : adjacency_offsets()) {
    const long r = r0 + dr;
    const long cc = c0 + dc;
    if (r >= 0 && r < mm && cc >= 0 && cc < mm) out.push_back(static_cast<CellId>(r * mm + cc));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Dissection dissect(const PointSet& points, double granularity, double r, CellAdjacency rule) {
  if (!(r > 0)) throw Error(ErrorCode::radius_out_of_range, "radius must be positive");
  if (!(granularity > 0)) throw Error(ErrorCode::config_error, "granularity must be positive");
  const auto m = static_cast<std::size_t>(std::ceil(granularity / r));
  return Dissection(points, std::max<std::size_t>(m, 1), r, rule);
}

}  // namespace acqlab
