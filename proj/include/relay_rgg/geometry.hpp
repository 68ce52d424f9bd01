#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "relay_rgg/errors.hpp"
#include "relay_rgg/rng.hpp"

namespace relay_rgg {

/// A location in the unit square S = [-1/2, 1/2]^2.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double dist2(Point a, Point b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}
inline double dist(Point a, Point b) { return std::sqrt(dist2(a, b)); }

inline bool in_closed_square(Point p) {
  return p.x >= -0.5 && p.x <= 0.5 && p.y >= -0.5 && p.y <= 0.5;
}
inline bool in_open_square(Point p) {
  return p.x > -0.5 && p.x < 0.5 && p.y > -0.5 && p.y < 0.5;
}

/// A density on S bounded between eps1 and eps2 (both positive, finite) and
/// integrating to 1. Either uniform or piecewise constant on an R x C grid.
class DensitySpec {
 public:
  static DensitySpec uniform();
  /// Cells row-major; row 0 is the bottom strip (y near -1/2), column 0 the
  /// left strip. Validates positivity and unit integral (1e-9).
  static DensitySpec grid(int rows, int cols, std::vector<double> cells);
  /// Text file: first line "grid R C", then R*C values row-major, '#' comments.
  /// Unit integral validated within 1e-6.
  static DensitySpec from_file(const std::string& path);

  bool is_uniform() const { return rows_ == 0; }
  double eps1() const { return eps1_; }
  double eps2() const { return eps2_; }
  double value_at(Point p) const;

 private:
  int rows_ = 0, cols_ = 0;  // rows_ == 0 means uniform
  std::vector<double> cells_;
  double eps1_ = 1.0, eps2_ = 1.0;
};

/// n points with stable 1-based indices.
struct PointSet {
  std::vector<Point> pts;

  int n() const { return static_cast<int>(pts.size()); }
  const Point& at(int id) const { return pts[static_cast<std::size_t>(id) - 1]; }
};

/// i.i.d. draws from the density by rejection sampling with the constant
/// envelope eps2. Deterministic given the stream. Throws config_error if the
/// accept loop exceeds 1e6 iterations per point (malformed density).
PointSet sample_points(long n, const DensitySpec& density, RandomStream& rng);

/// Uniform-cell spatial index for closed-ball radius queries.
class GridIndex {
 public:
  GridIndex(const PointSet& points, double cell_size);

  double cell_size() const { return cell_; }
  std::size_t bucket_count() const { return buckets_.size(); }

  static std::pair<long, long> cell_of(Point p, double cell_size) {
    return {static_cast<long>(std::floor((p.x + 0.5) / cell_size)),
            static_cast<long>(std::floor((p.y + 0.5) / cell_size))};
  }

  const std::vector<int>* bucket(long cx, long cy) const {
    auto it = buckets_.find(key(cx, cy));
    return it == buckets_.end() ? nullptr : &it->second;
  }

  /// Calls f(id) for every point at Euclidean distance <= radius from center
  /// (closed ball, exact squared-distance comparison). Scans ceil(r/cell)+1
  /// rings of cells around the center's cell.
  template <class F>
  void for_each_within(const PointSet& points, Point center, double radius,
                       F&& f) const {
    const auto [ccx, ccy] = cell_of(center, cell_);
    const long reach = static_cast<long>(std::ceil(radius / cell_));
    const double r2 = radius * radius;
    for (long cx = ccx - reach; cx <= ccx + reach; ++cx) {
      for (long cy = ccy - reach; cy <= ccy + reach; ++cy) {
        const std::vector<int>* b = bucket(cx, cy);
        if (!b) continue;
        for (int id : *b) {
          if (dist2(points.at(id), center) <= r2) f(id);
        }
      }
    }
  }

  /// Indices within the closed ball, ascending.
  std::vector<int> neighbors_within(const PointSet& points, Point center,
                                    double radius) const;

 private:
  static std::uint64_t key(long cx, long cy) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
           static_cast<std::uint32_t>(cy);
  }

  double cell_;
  std::unordered_map<std::uint64_t, std::vector<int>> buckets_;
};

inline GridIndex grid_build(const PointSet& points, double cell_size) {
  return GridIndex(points, cell_size);
}

}  // namespace relay_rgg
