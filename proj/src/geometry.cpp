#include "relay_rgg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace relay_rgg {

DensitySpec DensitySpec::uniform() { return DensitySpec{}; }

DensitySpec DensitySpec::grid(int rows, int cols, std::vector<double> cells) {
  if (rows <= 0 || cols <= 0)
    throw config_error("density grid: rows and cols must be positive");
  if (cells.size() != static_cast<std::size_t>(rows) * cols)
    throw config_error("density grid: expected rows*cols cell values");
  double lo = cells[0], hi = cells[0], sum = 0.0;
  for (double v : cells) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw config_error("density grid: cell values must be positive and finite");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
  }
  const double integral = sum / (static_cast<double>(rows) * cols);
  if (std::abs(integral - 1.0) > 1e-9)
    throw config_error("density grid: does not integrate to 1 (got " +
                       std::to_string(integral) + ")");
  DensitySpec d;
  d.rows_ = rows;
  d.cols_ = cols;
  d.cells_ = std::move(cells);
  d.eps1_ = lo;
  d.eps2_ = hi;
  return d;
}

DensitySpec DensitySpec::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("density file not found: " + path);
  std::string line, word;
  int rows = 0, cols = 0;
  bool header = false;
  std::vector<double> cells;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (!header) {
      if (!(ls >> word)) continue;  // blank line before header
      if (word != "grid")
        throw config_error("density file " + path + ": expected 'grid R C' header");
      if (!(ls >> rows >> cols) || rows <= 0 || cols <= 0)
        throw config_error("density file " + path + ": bad grid dimensions");
      header = true;
      double v;
      while (ls >> v) cells.push_back(v);
      continue;
    }
    double v;
    while (ls >> v) cells.push_back(v);
  }
  if (!header) throw config_error("density file " + path + ": missing header");
  if (cells.size() != static_cast<std::size_t>(rows) * cols)
    throw config_error("density file " + path + ": expected " +
                       std::to_string(static_cast<long>(rows) * cols) +
                       " cell values, got " + std::to_string(cells.size()));
  // File tolerance is looser than the programmatic 1e-9: renormalize exactly
  // after checking the 1e-6 gate, so downstream invariants see integral 1.
  double sum = 0.0;
  for (double v : cells) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw config_error("density file " + path + ": cell values must be positive");
    sum += v;
  }
  const double integral = sum / (static_cast<double>(rows) * cols);
  if (std::abs(integral - 1.0) > 1e-6)
    throw config_error("density file " + path + ": integral " +
                       std::to_string(integral) + " not within 1e-6 of 1");
  for (double& v : cells) v /= integral;
  return grid(rows, cols, std::move(cells));
}

double DensitySpec::value_at(Point p) const {
  if (is_uniform()) return 1.0;
  int col = static_cast<int>(std::floor((p.x + 0.5) * cols_));
  int row = static_cast<int>(std::floor((p.y + 0.5) * rows_));
  col = std::clamp(col, 0, cols_ - 1);
  row = std::clamp(row, 0, rows_ - 1);
  return cells_[static_cast<std::size_t>(row) * cols_ + col];
}

PointSet sample_points(long n, const DensitySpec& density, RandomStream& rng) {
  if (n < 0) throw config_error("sample_points: n must be >= 0");
  PointSet ps;
  ps.pts.reserve(static_cast<std::size_t>(n));
  const double eps2 = density.eps2();
  const long cap = 1000000L * std::max(n, 1L);
  long iterations = 0;
  for (long i = 0; i < n; ++i) {
    for (;;) {
      if (++iterations > cap)
        throw config_error("sample_points: rejection sampling exceeded iteration "
                           "cap; density malformed");
      const double x = rng.uniform(-0.5, 0.5);
      const double y = rng.uniform(-0.5, 0.5);
      const double u = rng.uniform01();
      const Point p{x, y};
      if (u * eps2 <= density.value_at(p)) {
        ps.pts.push_back(p);
        break;
      }
    }
  }
  return ps;
}

GridIndex::GridIndex(const PointSet& points, double cell_size) : cell_(cell_size) {
  if (!(cell_size > 0.0)) throw config_error("grid_build: cell_size must be > 0");
  for (int id = 1; id <= points.n(); ++id) {
    const auto [cx, cy] = cell_of(points.at(id), cell_);
    buckets_[key(cx, cy)].push_back(id);
  }
}

std::vector<int> GridIndex::neighbors_within(const PointSet& points, Point center,
                                             double radius) const {
  std::vector<int> out;
  for_each_within(points, center, radius, [&](int id) { out.push_back(id); });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace relay_rgg
