#include "relay_rgg/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

namespace relay_rgg {

DetGraph DetGraph::make(std::vector<Point> vertices,
                        std::vector<std::pair<int, int>> edges) {
  DetGraph g;
  g.vertices = std::move(vertices);
  g.edges = std::move(edges);

  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const Point p = g.vertices[i];
    if (!in_open_square(p))
      throw config_error("backbone vertex " + std::to_string(i + 1) +
                         " is not strictly inside the open unit square");
    for (std::size_t j = i + 1; j < g.vertices.size(); ++j) {
      if (g.vertices[j].x == p.x && g.vertices[j].y == p.y)
        throw config_error("repeated backbone vertex at index " +
                           std::to_string(j + 1));
    }
  }
  std::set<std::pair<int, int>> seen;
  for (auto& [a, b] : g.edges) {
    if (a < 1 || b < 1 || a > g.v0() || b > g.v0())
      throw config_error("backbone edge references unknown vertex");
    if (a == b) throw config_error("backbone self-loop edge rejected");
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second)
      throw config_error("duplicate backbone edge rejected");
    g.edge_len.push_back(dist(g.vertex(a), g.vertex(b)));
  }
  if (!g.edges.empty()) {
    g.l0 = *std::min_element(g.edge_len.begin(), g.edge_len.end());
    g.l_up = *std::max_element(g.edge_len.begin(), g.edge_len.end());
    for (double l : g.edge_len) g.l_tot += l;
    if (!(g.l0 > 0.0)) throw config_error("backbone edge of zero length");
  }
  return g;
}

DetGraph DetGraph::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("gamma file not found: " + path);
  std::vector<Point> vertices;
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      double x, y;
      if (!(ls >> x >> y))
        throw config_error(path + ":" + std::to_string(lineno) +
                           ": expected 'v <x> <y>'");
      vertices.push_back({x, y});
    } else if (tag == "e") {
      int a, b;
      if (!(ls >> a >> b))
        throw config_error(path + ":" + std::to_string(lineno) +
                           ": expected 'e <i> <j>'");
      edges.push_back({a, b});
    } else {
      throw config_error(path + ":" + std::to_string(lineno) +
                         ": unknown record '" + tag + "'");
    }
  }
  return make(std::move(vertices), std::move(edges));
}

DetGraph DetGraph::segment(double d) {
  if (!(d > 0.0) || d >= 1.0)
    throw config_error("segment builtin: need 0 < d < 1");
  return make({{-d / 2.0, 0.0}, {d / 2.0, 0.0}}, {{1, 2}});
}

DetGraph DetGraph::star(int k, double length) {
  if (k < 1) throw config_error("star builtin: need k >= 1");
  if (!(length > 0.0) || length >= 0.5)
    throw config_error("star builtin: need 0 < length < 1/2");
  std::vector<Point> vertices{{0.0, 0.0}};
  std::vector<std::pair<int, int>> edges;
  const double two_pi = 2.0 * 3.14159265358979323846;
  for (int j = 0; j < k; ++j) {
    const double ang = two_pi * j / k;
    vertices.push_back({length * std::cos(ang), length * std::sin(ang)});
    edges.push_back({1, j + 2});
  }
  return DetGraph::make(std::move(vertices), std::move(edges));
}

DetGraph gamma_parallel_example(int m) {
  if (m < 2) throw config_error("parallel builtin: need m >= 2");
  // The reference coordinates live on [0,1] x [0,2/m]; recentre to the unit
  // square and shrink by 0.9 so vertices are strictly interior.
  const double s = 0.9;
  std::vector<Point> vertices;
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= m; ++i) {
    const double x = s * ((i - 1) / static_cast<double>(m) - 0.5);
    vertices.push_back({x, s * (0.0 - 0.5)});
    vertices.push_back({x, s * (2.0 / m - 0.5)});
    edges.push_back({2 * i - 1, 2 * i});
  }
  return DetGraph::make(std::move(vertices), std::move(edges));
}

RggInstance build_rgg(PointSet points, double r_n) {
  if (!(r_n > 0.0)) throw config_error("build_rgg: r_n must be > 0");
  GridIndex index(points, r_n);
  return RggInstance{std::move(points), r_n, std::move(index)};
}

GLocGraph build_gloc(RggInstance rgg, DetGraph gamma) {
  return GLocGraph{std::move(rgg), std::move(gamma)};
}

namespace {

// Backbone ids are encoded after the relay ids in BFS scratch arrays.
struct BfsScratch {
  std::vector<int> dist;
  std::deque<VertexRef> queue;
};

}  // namespace

std::optional<int> graph_distance(const GLocGraph& g, VertexRef s, VertexRef t) {
  const auto check = [&](VertexRef v) {
    const int limit = v.kind == VertexKind::relay ? g.n_relay() : g.n_backbone();
    if (v.id < 1 || v.id > limit)
      throw config_error("graph_distance: invalid vertex id");
  };
  check(s);
  check(t);
  if (s == t) return 0;

  const int nr = g.n_relay();
  std::vector<int> dist(static_cast<std::size_t>(nr) + g.n_backbone() + 1, -1);
  const auto slot = [&](VertexRef v) {
    return v.kind == VertexKind::relay ? v.id - 1 : nr + v.id - 1;
  };
  std::deque<VertexRef> queue;
  dist[slot(s)] = 0;
  queue.push_back(s);
  while (!queue.empty()) {
    const VertexRef cur = queue.front();
    queue.pop_front();
    const int d = dist[slot(cur)];
    const Point cp = g.pos(cur);
    bool found = false;
    const auto visit = [&](VertexRef nxt) {
      if (dist[slot(nxt)] != -1) return;
      dist[slot(nxt)] = d + 1;
      if (nxt == t) {
        found = true;
        return;
      }
      queue.push_back(nxt);
    };
    g.rgg.index.for_each_within(g.rgg.points, cp, g.r_n(), [&](int j) {
      const VertexRef nxt = relay_vertex(j);
      if (nxt != cur) visit(nxt);
    });
    if (found) return d + 1;
    if (cur.kind == VertexKind::relay) {
      for (int b = 1; b <= g.n_backbone(); ++b) {
        if (dist2(g.gamma.vertex(b), cp) <= g.r_n() * g.r_n()) {
          visit(backbone_vertex(b));
          if (found) return d + 1;
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<int> relay_distance(const GLocGraph& g, int u, int v) {
  if (u < 1 || u > g.n_backbone() || v < 1 || v > g.n_backbone())
    throw config_error("relay_distance: invalid backbone vertex id");
  if (u == v) throw config_error("relay_distance: endpoints must differ");

  const double r = g.r_n();
  const Point vu = g.gamma.vertex(u), vv = g.gamma.vertex(v);
  std::vector<int> dist(static_cast<std::size_t>(g.n_relay()) + 1, -1);
  std::deque<int> queue;

  // Level-1 frontier: points adjacent to u. A point adjacent to v closes the
  // path at dist+1; BFS order makes the first hit minimal.
  int best = -1;
  g.rgg.index.for_each_within(g.rgg.points, vu, r, [&](int j) {
    dist[j] = 1;
    queue.push_back(j);
  });
  while (!queue.empty() && best == -1) {
    const int cur = queue.front();
    queue.pop_front();
    const int d = dist[cur];
    if (dist2(g.rgg.points.at(cur), vv) <= r * r) {
      best = d + 1;
      break;
    }
    g.rgg.index.for_each_within(g.rgg.points, g.rgg.points.at(cur), r, [&](int j) {
      if (dist[j] == -1) {
        dist[j] = d + 1;
        queue.push_back(j);
      }
    });
  }
  if (best == -1) return std::nullopt;
  return best;
}

int two_point_target(double d, double r_n) {
  if (!(d > 0.0) || !(r_n > 0.0))
    throw config_error("two_point_target: inputs must be positive");
  const double q = d / r_n;
  const double nearest = std::round(q);
  if (std::abs(q - nearest) <= 1e-9 * std::max(1.0, std::abs(q)))
    return static_cast<int>(nearest) + 1;
  return static_cast<int>(std::ceil(q));
}

DistanceEventOutcome check_distance_events(const GLocGraph& g, int u, int v,
                                           double eps) {
  if (!(eps > 0.0)) throw config_error("check_distance_events: eps must be > 0");
  DistanceEventOutcome out;
  out.d_euclid = dist(g.gamma.vertex(u), g.gamma.vertex(v));
  out.d_uv = two_point_target(out.d_euclid, g.r_n());
  out.d_gr = relay_distance(g, u, v);
  if (out.d_gr) {
    const int dgr = *out.d_gr;
    // Each hop covers at most r_n.
    if (static_cast<double>(dgr) * g.r_n() < out.d_euclid - 1e-12)
      throw invariant_violation("relay distance below the d/r_n lower bound");
    out.f_uv = dgr == out.d_uv || dgr == out.d_uv + 1;
    out.e_uv = static_cast<double>(dgr) <= (out.d_euclid / g.r_n()) * (1.0 + eps);
  }
  return out;
}

}  // namespace relay_rgg
