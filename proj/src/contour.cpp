#include "reekit/contour.hpp"

#include <array>
#include <cstdint>
#include <unordered_map>

namespace reekit::contour {

namespace {

enum Side { kBottom, kRight, kTop, kLeft };

// Segments (pairs of cell sides) for each corner configuration. Corner bits:
// 1 = (i, j), 2 = (i+1, j), 4 = (i+1, j+1), 8 = (i, j+1). Saddles (5, 10)
// are resolved separately.
constexpr std::array<std::array<int, 4>, 16> kTable = {{
    {-1, -1, -1, -1},
    {kLeft, kBottom, -1, -1},
    {kBottom, kRight, -1, -1},
    {kLeft, kRight, -1, -1},
    {kRight, kTop, -1, -1},
    {-1, -1, -1, -1},
    {kBottom, kTop, -1, -1},
    {kLeft, kTop, -1, -1},
    {kTop, kLeft, -1, -1},
    {kBottom, kTop, -1, -1},
    {-1, -1, -1, -1},
    {kRight, kTop, -1, -1},
    {kLeft, kRight, -1, -1},
    {kBottom, kRight, -1, -1},
    {kLeft, kBottom, -1, -1},
    {-1, -1, -1, -1},
}};

struct Segment {
  std::int64_t a;
  std::int64_t b;
};

}  // namespace

std::vector<Polyline> isolines(const Eigen::Ref<const Eigen::MatrixXd>& values,
                               const Eigen::Ref<const Eigen::VectorXd>& x,
                               const Eigen::Ref<const Eigen::VectorXd>& y, double level) {
  const Eigen::Index nx = values.rows();
  const Eigen::Index ny = values.cols();
  std::vector<Polyline> lines;
  if (nx < 2 || ny < 2) return lines;

  // Edge keys: horizontal edge (i,j)-(i+1,j) -> 2 (i ny + j); vertical edge
  // (i,j)-(i,j+1) -> 2 (i ny + j) + 1.
  const auto h_key = [ny](Eigen::Index i, Eigen::Index j) { return 2 * (i * ny + j); };
  const auto v_key = [ny](Eigen::Index i, Eigen::Index j) { return 2 * (i * ny + j) + 1; };

  std::unordered_map<std::int64_t, Eigen::Vector2d> points;
  const auto edge_point = [&](std::int64_t key) -> const Eigen::Vector2d& {
    auto it = points.find(key);
    if (it != points.end()) return it->second;
    const Eigen::Index node = key / 2;
    const Eigen::Index i = node / ny;
    const Eigen::Index j = node % ny;
    const bool horizontal = key % 2 == 0;
    const Eigen::Index i2 = horizontal ? i + 1 : i;
    const Eigen::Index j2 = horizontal ? j : j + 1;
    const double va = values(i, j);
    const double vb = values(i2, j2);
    const double t = vb == va ? 0.5 : (level - va) / (vb - va);
    Eigen::Vector2d p(x(i) + t * (x(i2) - x(i)), y(j) + t * (y(j2) - y(j)));
    return points.emplace(key, p).first->second;
  };

  std::vector<Segment> segments;
  for (Eigen::Index i = 0; i + 1 < nx; ++i) {
    for (Eigen::Index j = 0; j + 1 < ny; ++j) {
      const double v0 = values(i, j), v1 = values(i + 1, j), v2 = values(i + 1, j + 1),
                   v3 = values(i, j + 1);
      const int code = (v0 >= level ? 1 : 0) | (v1 >= level ? 2 : 0) | (v2 >= level ? 4 : 0) |
                       (v3 >= level ? 8 : 0);
      const std::array<std::int64_t, 4> side_key = {h_key(i, j), v_key(i + 1, j), h_key(i, j + 1),
                                                    v_key(i, j)};
      std::array<int, 4> sides = kTable[static_cast<std::size_t>(code)];
      if (code == 5 || code == 10) {
        const bool centre_in = 0.25 * (v0 + v1 + v2 + v3) >= level;
        // Separate the two outside corners when the centre joins the inside ones.
        const bool cut_odd = (code == 5) == centre_in;
        sides = cut_odd ? std::array<int, 4>{kBottom, kRight, kTop, kLeft}
                        : std::array<int, 4>{kLeft, kBottom, kRight, kTop};
      }
      for (int s = 0; s < 4 && sides[s] >= 0; s += 2) {
        segments.push_back({side_key[sides[s]], side_key[sides[s + 1]]});
      }
    }
  }

  std::unordered_map<std::int64_t, std::vector<std::size_t>> incident;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    incident[segments[s].a].push_back(s);
    incident[segments[s].b].push_back(s);
  }
  std::vector<bool> used(segments.size(), false);

  const auto trace = [&](std::size_t first, std::int64_t start) {
    Polyline line;
    std::int64_t at = start;
    line.points.push_back(edge_point(at));
    std::size_t seg = first;
    while (true) {
      used[seg] = true;
      at = segments[seg].a == at ? segments[seg].b : segments[seg].a;
      line.points.push_back(edge_point(at));
      if (at == start) {
        line.closed = true;
        line.points.pop_back();
        break;
      }
      std::size_t next = segments.size();
      for (std::size_t cand : incident[at]) {
        if (!used[cand]) {
          next = cand;
          break;
        }
      }
      if (next == segments.size()) break;
      seg = next;
    }
    lines.push_back(std::move(line));
  };

  // Open chains start at border edges (touched by one segment); the rest are loops.
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (used[s]) continue;
    if (incident[segments[s].a].size() == 1) {
      trace(s, segments[s].a);
    } else if (incident[segments[s].b].size() == 1) {
      trace(s, segments[s].b);
    }
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (!used[s]) trace(s, segments[s].a);
  }
  return lines;
}

int count_superlevel_regions(const Eigen::Ref<const Eigen::MatrixXd>& values, double level) {
  const Eigen::Index nx = values.rows();
  const Eigen::Index ny = values.cols();
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> seen =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(nx, ny, false);
  int regions = 0;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> stack;
  for (Eigen::Index i = 0; i < nx; ++i) {
    for (Eigen::Index j = 0; j < ny; ++j) {
      if (seen(i, j) || values(i, j) < level) continue;
      ++regions;
      stack.push_back({i, j});
      seen(i, j) = true;
      while (!stack.empty()) {
        const auto [ci, cj] = stack.back();
        stack.pop_back();
        const std::array<std::pair<Eigen::Index, Eigen::Index>, 4> nbrs = {
            {{ci - 1, cj}, {ci + 1, cj}, {ci, cj - 1}, {ci, cj + 1}}};
        for (const auto& [ni, nj] : nbrs) {
          if (ni < 0 || nj < 0 || ni >= nx || nj >= ny || seen(ni, nj) || values(ni, nj) < level) {
            continue;
          }
          seen(ni, nj) = true;
          stack.push_back({ni, nj});
        }
      }
    }
  }
  return regions;
}

}  // namespace reekit::contour
