#include "acqlab/matching.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>

#include "acqlab/error.hpp"

namespace acqlab {

void BipartiteGraph::finalize() {
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

namespace {

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& g)
      : g_(g), dist_(g.left_size()), iter_(g.left_size()) {
    m_.left_to_right.assign(g.left_size(), kUnmatched);
    m_.right_to_left.assign(g.right_size(), kUnmatched);
  }

  BipartiteMatching run() {
    while (bfs()) {
      std::fill(iter_.begin(), iter_.end(), 0);
      for (std::uint32_t l = 0; l < g_.left_size(); ++l) {
        if (m_.left_to_right[l] == kUnmatched && dfs(l)) ++m_.size;
      }
    }
    return std::move(m_);
  }

 private:
  static constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

  bool bfs() {
    std::vector<std::uint32_t> queue;
    for (std::uint32_t l = 0; l < g_.left_size(); ++l) {
      if (m_.left_to_right[l] == kUnmatched) {
        dist_[l] = 0;
        queue.push_back(l);
      } else {
        dist_[l] = kInf;
      }
    }
    bool reachable_free = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t l = queue[head];
      for (std::uint32_t r : g_.neighbors(l)) {
        const std::uint32_t next = m_.right_to_left[r];
        if (next == kUnmatched) {
          reachable_free = true;
        } else if (dist_[next] == kInf) {
          dist_[next] = dist_[l] + 1;
          queue.push_back(next);
        }
      }
    }
    return reachable_free;
  }

  // Iterative layered DFS to avoid deep recursion on long augmenting paths.
  bool dfs(std::uint32_t root) {
    std::vector<std::uint32_t> stack{root};
    while (!stack.empty()) {
      const std::uint32_t l = stack.back();
      auto nb = g_.neighbors(l);
      bool advanced = false;
      while (iter_[l] < nb.size()) {
        const std::uint32_t r = nb[iter_[l]];
        const std::uint32_t next = m_.right_to_left[r];
        if (next == kUnmatched) {
          // Augment along the stack.
          std::uint32_t free_right = r;
          for (std::size_t i = stack.size(); i-- > 0;) {
            const std::uint32_t left = stack[i];
            const std::uint32_t prev_right = m_.left_to_right[left];
            m_.left_to_right[left] = free_right;
            m_.right_to_left[free_right] = left;
            free_right = prev_right;
          }
          return true;
        }
        if (dist_[next] == dist_[l] + 1) {
          stack.push_back(next);
          advanced = true;
          break;
        }
        ++iter_[l];
      }
      if (!advanced) {
        dist_[l] = kInf;
        stack.pop_back();
        if (!stack.empty()) ++iter_[stack.back()];
      }
    }
    return false;
  }

  const BipartiteGraph& g_;
  BipartiteMatching m_;
  std::vector<std::uint32_t> dist_;
  std::vector<std::size_t> iter_;
};

}  // namespace

BipartiteMatching max_matching(BipartiteGraph g) {
  g.finalize();
  return HopcroftKarp(g).run();
}

std::vector<std::uint32_t> hall_violator(const BipartiteGraph& g, const BipartiteMatching& m) {
  std::vector<char> seen_left(g.left_size(), 0);
  std::vector<char> seen_right(g.right_size(), 0);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t l = 0; l < g.left_size(); ++l) {
    if (m.left_to_right[l] == kUnmatched) {
      seen_left[l] = 1;
      queue.push_back(l);
    }
  }
  if (queue.empty()) return {};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::uint32_t r : g.neighbors(queue[head])) {
      if (seen_right[r]) continue;
      seen_right[r] = 1;
      const std::uint32_t l = m.right_to_left[r];
      if (l != kUnmatched && !seen_left[l]) {
        seen_left[l] = 1;
        queue.push_back(l);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

std::vector<Matching> grid_four_cover(std::size_t rows, std::size_t cols) {
  std::vector<Matching> out(4);
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) out[c % 2].emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) out[2 + r % 2].emplace_back(id(r, c), id(r + 1, c));
    }
  }
  for (auto& m : out) m = canonical(std::move(m));
  return out;
}

TransferTable inter_cell_matchings(const Graph& g, const GroupMap& groups,
                                   std::span<const std::pair<Vertex, Vertex>> pairs) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint32_t> slot_group(n, kUnmatched);
  std::vector<std::uint32_t> slot_index(n, kUnmatched);
  for (std::size_t c = 0; c < groups.slots.size(); ++c) {
    for (std::size_t i = 0; i < groups.slots[c].size(); ++i) {
      slot_group[groups.slots[c][i]] = static_cast<std::uint32_t>(c);
      slot_index[groups.slots[c][i]] = static_cast<std::uint32_t>(i);
    }
  }
  TransferTable table;
  for (auto [a, b] : pairs) {
    const Vertex c = std::min(a, b);
    const Vertex d = std::max(a, b);
    if (table.count({c, d})) continue;
    const auto& left = groups.slots[c];
    const auto& right = groups.slots[d];
    BipartiteGraph bg(left.size(), right.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
      for (Vertex w : g.neighbors(left[i])) {
        if (slot_group[w] == d) bg.add_edge(static_cast<std::uint32_t>(i), slot_index[w]);
      }
    }
    bg.finalize();
    BipartiteMatching m = max_matching(bg);
    if (left.size() != right.size() || !m.saturates_left()) {
      std::string message = "groups " + std::to_string(c) + " and " + std::to_string(d) + " have no perfect matching";
      if (left.size() == right.size()) {
        auto violator = hall_violator(bg, m);
        message += "; " + std::to_string(violator.size()) + " slots of group " + std::to_string(c) +
                   " see fewer slots of the other group, first slot vertex " +
                   std::to_string(violator.empty() ? 0 : left[violator.front()]);
      }
      throw Error(ErrorCode::missing_transfer_matching, message);
    }
    Matching out;
    for (std::size_t i = 0; i < left.size(); ++i) out.emplace_back(left[i], right[m.left_to_right[i]]);
    table[{c, d}] = canonical(std::move(out));
  }
  return table;
}

std::optional<std::vector<Vertex>> saturating_matching(const Graph& g, std::span<const Vertex> from,
                                            std::span<const Vertex> into) {
  std::unordered_map<Vertex, std::uint32_t> index;
  for (std::size_t j = 0; j < into.size(); ++j) index.emplace(into[j], static_cast<std::uint32_t>(j));
  BipartiteGraph bg(from.size(), into.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    for (Vertex w : g.neighbors(from[i])) {
      auto it = index.find(w);
      if (it != index.end()) bg.add_edge(static_cast<std::uint32_t>(i), it->second);
    }
  }
  BipartiteMatching m = max_matching(bg);
  if (!m.saturates_left()) return std::nullopt;
  std::vector<Vertex> partner(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) partner[i] = into[m.left_to_right[i]];
  return partner;
}

}  // namespace acqlab
