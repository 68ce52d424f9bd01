#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relay_rgg/geometry.hpp"

namespace relay_rgg {

/// The deterministic backbone graph: vertices strictly inside the open unit
/// square, straight-segment edges, with derived length statistics.
struct DetGraph {
  std::vector<Point> vertices;             // 1-based ids
  std::vector<std::pair<int, int>> edges;  // 1-based vertex ids
  std::vector<double> edge_len;
  double l0 = 0.0;     // min edge length
  double l_up = 0.0;   // max edge length
  double l_tot = 0.0;  // sum of edge lengths

  int v0() const { return static_cast<int>(vertices.size()); }
  int e0() const { return static_cast<int>(edges.size()); }
  const Point& vertex(int id) const {
    return vertices[static_cast<std::size_t>(id) - 1];
  }

  /// Validates (open-square containment, no repeated vertices, no self loops,
  /// no duplicate edges, positive lengths) and fills the derived fields.
  static DetGraph make(std::vector<Point> vertices,
                       std::vector<std::pair<int, int>> edges);

  /// Text format: "v <x> <y>" lines, then "e <i> <j>" lines, '#' comments.
  static DetGraph from_file(const std::string& path);

  /// Single horizontal edge of length d centered at the origin.
  static DetGraph segment(double d);
  /// k spokes of the given length around a hub at the origin.
  static DetGraph star(int k, double length = 0.3);
};

/// The parallel-edges example: m vertical edges of length 2/m spaced 1/m
/// apart, mapped into the open square by centering and shrinking by 0.9.
DetGraph gamma_parallel_example(int m);

/// The RGG G(r_n): points adjacent iff at distance <= r_n (and distinct).
/// Adjacency is answered through the grid index, never materialized.
struct RggInstance {
  PointSet points;
  double r_n = 0.0;
  GridIndex index;
};

RggInstance build_rgg(PointSet points, double r_n);

inline bool rgg_adjacent(const RggInstance& g, int i, int j) {
  return i != j && dist2(g.points.at(i), g.points.at(j)) <= g.r_n * g.r_n;
}

/// Visits each RGG edge {i, j} with i < j exactly once.
template <class F>
void for_each_rgg_edge(const RggInstance& g, F&& f) {
  for (int i = 1; i <= g.points.n(); ++i) {
    g.index.for_each_within(g.points, g.points.at(i), g.r_n, [&](int j) {
      if (j > i) f(i, j);
    });
  }
}

enum class VertexKind : std::uint8_t { backbone = 0, relay = 1 };

struct VertexRef {
  VertexKind kind = VertexKind::relay;
  int id = 0;
  auto operator<=>(const VertexRef&) const = default;
};
inline VertexRef backbone_vertex(int id) { return {VertexKind::backbone, id}; }
inline VertexRef relay_vertex(int id) { return {VertexKind::relay, id}; }

/// G_loc: the RGG plus edges from each backbone vertex to all points within
/// r_n. There are no backbone-backbone edges.
struct GLocGraph {
  RggInstance rgg;
  DetGraph gamma;

  double r_n() const { return rgg.r_n; }
  int n_relay() const { return rgg.points.n(); }
  int n_backbone() const { return gamma.v0(); }
  Point pos(VertexRef v) const {
    return v.kind == VertexKind::relay ? rgg.points.at(v.id) : gamma.vertex(v.id);
  }
  bool adjacent(VertexRef a, VertexRef b) const {
    if (a == b) return false;
    if (a.kind == VertexKind::backbone && b.kind == VertexKind::backbone)
      return false;
    return dist2(pos(a), pos(b)) <= rgg.r_n * rgg.r_n;
  }
};

GLocGraph build_gloc(RggInstance rgg, DetGraph gamma);

/// Minimum hop count between any two G_loc vertices (BFS); nullopt when
/// unreachable.
std::optional<int> graph_distance(const GLocGraph& g, VertexRef s, VertexRef t);

/// Minimum hop count over relay paths from backbone vertex u to backbone
/// vertex v: interior vertices are RGG points only. nullopt when unreachable.
std::optional<int> relay_distance(const GLocGraph& g, int u, int v);

/// The smallest integer strictly larger than d/r_n. Ratios within 1e-9 of an
/// integer count as integral, so e.g. d=0.3, r_n=0.1 gives 4.
int two_point_target(double d, double r_n);

struct DistanceEventOutcome {
  std::optional<int> d_gr;  // relay graph distance
  double d_euclid = 0.0;
  int d_uv = 0;
  bool e_uv = false;  // d_gr <= (d/r_n)(1+eps)
  bool f_uv = false;  // d_gr in {d_uv, d_uv+1}
};

DistanceEventOutcome check_distance_events(const GLocGraph& g, int u, int v,
                                           double eps);

}  // namespace relay_rgg
