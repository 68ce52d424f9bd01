#include "relay_rgg/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

namespace relay_rgg {

namespace {

bool square_in_unit_square(Point center, double half) {
  return center.x - half >= -0.5 && center.x + half <= 0.5 &&
         center.y - half >= -0.5 && center.y + half <= 0.5;
}

// Frame node (column, height level): world center of the grid square.
Point node_pos(Point u, Point dir, Point normal, double step, long col,
               long level) {
  return Point{u.x + col * step * dir.x + level * step * normal.x,
               u.y + col * step * dir.y + level * step * normal.y};
}

}  // namespace

SquareChainLayout square_chain_layout(Point u, Point v, double r_n, long L_n) {
  if (!(r_n > 0.0)) throw config_error("square_chain_layout: r_n must be > 0");
  if (L_n < 1) throw config_error("square_chain_layout: L_n must be >= 1");
  const double l = dist(u, v);
  SquareChainLayout lay;
  lay.a = r_n / 10.0;
  const double a = lay.a;
  const double step = 4.0 * a;
  const double ilen = 1.0 / l;
  lay.dir = Point{(v.x - u.x) * ilen, (v.y - u.y) * ilen};
  lay.normal = inward_normal(u, v);

  // Interior squares live on the 4a grid of the edge frame: column c at
  // distance 4ac from u, level h at offset 4ah along the normal. The path
  // runs S_0 -> (0,1) -> ... -> (c_e,1) -> S_{N+1}, detouring up unused
  // levels when the hop-budget band wants more squares than the base row.
  const long c_e = static_cast<long>(std::floor(l / step));
  if (c_e < 1)
    throw chain_error(FailReason::layout_infeasible, 0,
                      "edge shorter than one 4a step");
  const long base_cols = c_e + 1;

  const long n_lo = (L_n + 15) / 16;  // ceil(L_n/16)
  const long n_hi = L_n / 8;
  long N = std::max(n_lo, base_cols);
  if ((N - base_cols) % 2 != 0) ++N;
  if (N + 1 > L_n)
    throw chain_error(FailReason::layout_infeasible, 0,
                      "edge cannot be spanned within the hop budget");

  // Teeth capacity: tallest level whose squares stay inside S on every column.
  long teeth_needed = (N - base_cols) / 2;
  long level_cap = 1;
  while (teeth_needed > 0) {
    bool fits = true;
    for (long c = 0; c <= c_e && fits; ++c)
      fits = square_in_unit_square(
          node_pos(u, lay.dir, lay.normal, step, c, level_cap + 1), a / 2.0);
    if (!fits) break;
    ++level_cap;
    const long pairs = (c_e + 1) / 2;
    if (pairs * (level_cap - 1) >= teeth_needed) break;
  }
  const long tooth_max = level_cap - 1;
  const long pairs = (c_e + 1) / 2;
  if (pairs * tooth_max < teeth_needed)
    throw chain_error(FailReason::layout_infeasible, 0,
                      "square strip leaves the unit square");

  std::vector<long> tooth(static_cast<std::size_t>(pairs), 0);
  for (long s = 0; s < pairs && teeth_needed > 0; ++s) {
    tooth[static_cast<std::size_t>(s)] = std::min(tooth_max, teeth_needed);
    teeth_needed -= tooth[static_cast<std::size_t>(s)];
  }

  lay.centers.push_back(u);  // S_0
  long emitted = 0;
  long max_tooth = 0;
  for (long c = 0; c <= c_e; ++c) {
    const long pair_index = c / 2;
    const long k =
        pair_index < pairs ? tooth[static_cast<std::size_t>(pair_index)] : 0;
    max_tooth = std::max(max_tooth, k);
    if (c % 2 == 0) {
      // left leg of the pair: base square, then climb if the pair has a tooth
      lay.centers.push_back(node_pos(u, lay.dir, lay.normal, step, c, 1));
      ++emitted;
      for (long h = 2; h <= 1 + k; ++h) {
        lay.centers.push_back(node_pos(u, lay.dir, lay.normal, step, c, h));
        ++emitted;
      }
    } else {
      // right leg: descend from the tooth top back to the base row
      for (long h = 1 + k; h >= 2; --h) {
        lay.centers.push_back(node_pos(u, lay.dir, lay.normal, step, c, h));
        ++emitted;
      }
      lay.centers.push_back(node_pos(u, lay.dir, lay.normal, step, c, 1));
      ++emitted;
    }
  }
  lay.centers.push_back(v);  // S_{N+1}
  if (emitted != N)
    throw invariant_violation("square chain emitted an unexpected square count");
  lay.N = static_cast<int>(N);
  lay.rows = static_cast<int>(1 + max_tooth);
  lay.cols = static_cast<int>(base_cols);

  const double rho = l - step * static_cast<double>(c_e);
  if (rho > 1e-12 * std::max(1.0, l)) lay.irregular_gap_index = lay.N;

  for (std::size_t i = 1; i + 1 < lay.centers.size(); ++i)
    if (!square_in_unit_square(lay.centers[i], a / 2.0))
      throw chain_error(FailReason::site_outside_square, static_cast<int>(i),
                        "square " + std::to_string(i) + " leaves the unit square");
  return lay;
}

ValidationReport validate_square_chain_layout(const SquareChainLayout& lay,
                                              Point u, Point v, double r_n,
                                              long L_n) {
  ValidationReport rep;
  const auto add = [&](const std::string& s) { rep.violations.push_back(s); };
  const double a = lay.a;
  if (std::abs(a - r_n / 10.0) > 1e-15) add("square side is not r_n/10");
  if (lay.centers.size() != static_cast<std::size_t>(lay.N) + 2)
    add("center count differs from N+2");
  if (dist(lay.centers.front(), u) > a / 2.0) add("first square does not hold u");
  if (dist(lay.centers.back(), v) > a / 2.0) add("last square does not hold v");
  if (lay.N + 1 > L_n) add("hop count would exceed L_n");

  int irregular = 0;
  for (std::size_t i = 0; i + 1 < lay.centers.size(); ++i) {
    const double d = dist(lay.centers[i], lay.centers[i + 1]);
    if (std::abs(d - 4.0 * a) <= 1e-12) continue;
    if (d > 4.0 * a && d <= 8.0 * a + 1e-12) {
      ++irregular;
    } else {
      add("consecutive gap " + std::to_string(i) + " outside {4a} u (4a,8a]");
    }
  }
  if (irregular > 1) add("more than one irregular gap");
  for (std::size_t i = 0; i < lay.centers.size(); ++i) {
    if (!square_in_unit_square(lay.centers[i], a / 2.0))
      add("square " + std::to_string(i) + " leaves the unit square");
    for (std::size_t j = i + 1; j < lay.centers.size(); ++j) {
      // Squares are frame-aligned, so separation is read off the frame axes.
      const Point di{lay.centers[j].x - lay.centers[i].x,
                     lay.centers[j].y - lay.centers[i].y};
      const double ft = std::abs(di.x * lay.dir.x + di.y * lay.dir.y);
      const double fh = std::abs(di.x * lay.normal.x + di.y * lay.normal.y);
      if (std::max(ft, fh) < a - 1e-12)
        add("squares " + std::to_string(i) + "/" + std::to_string(j) +
            " overlap");
    }
  }
  return rep;
}

namespace {

void check_greedy_geometry(const GLocGraph& g, const RelayPath& path,
                           long L_n) {
  const double r = g.r_n();
  const auto& vs = path.vertices;
  if (path.hops() > L_n)
    throw invariant_violation("greedy path exceeds the hop budget");
  for (std::size_t i = 0; i + 1 < vs.size(); ++i)
    if (dist(g.pos(vs[i]), g.pos(vs[i + 1])) > r)
      throw invariant_violation("greedy path hop longer than r_n");
  const double gap = 3.0 * r / 10.0;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (dist(g.pos(vs[i]), g.pos(vs[j])) < gap - 1e-12)
        throw invariant_violation("greedy path vertices closer than 3r_n/10");
}

}  // namespace

GreedyBuildResult build_greedy_max_weight_path(const GLocGraph& g,
                                               const WeightAssignment& w,
                                               const SquareChainLayout& lay,
                                               int u, int v,
                                               const std::vector<char>& forbidden) {
  GreedyBuildResult out;
  GreedyPathResult res;
  res.path.vertices.push_back(backbone_vertex(u));
  std::set<int> in_path;
  const double a = lay.a;
  const double query_radius = a * 0.7072;  // covers the half-diagonal
  VertexRef cur = backbone_vertex(u);

  for (int i = 1; i <= lay.N; ++i) {
    const Point center = lay.centers[static_cast<std::size_t>(i)];
    int best_id = 0;
    double best_w = -1.0;
    g.rgg.index.for_each_within(
        g.rgg.points, center, query_radius, [&](int id) {
          const Point p = g.rgg.points.at(id);
          const Point d{p.x - center.x, p.y - center.y};
          const double ft = d.x * lay.dir.x + d.y * lay.dir.y;
          const double fh = d.x * lay.normal.x + d.y * lay.normal.y;
          if (std::abs(ft) > a / 2.0 || std::abs(fh) > a / 2.0) return;
          if (!forbidden.empty() && forbidden[static_cast<std::size_t>(id)])
            return;
          if (in_path.count(id)) return;
          if (dist2(p, g.pos(cur)) > g.r_n() * g.r_n()) return;
          const double wt = w.weight(cur, relay_vertex(id));
          if (wt > best_w || (wt == best_w && id < best_id)) {
            best_w = wt;
            best_id = id;
          }
        });
    if (best_id == 0) {
      out.failure = BuildFailure{0, i, FailReason::empty_site};
      return out;
    }
    res.hop_weights.push_back(best_w);
    res.total += best_w;
    in_path.insert(best_id);
    cur = relay_vertex(best_id);
    res.path.vertices.push_back(cur);
  }
  const double last = w.weight(cur, backbone_vertex(v));
  res.hop_weights.push_back(last);
  res.total += last;
  res.path.vertices.push_back(backbone_vertex(v));
  res.min_hop_weight =
      *std::min_element(res.hop_weights.begin(), res.hop_weights.end());
  out.result = std::move(res);
  return out;
}

MaxWeightBuildResult build_max_weight_relay_rgg(const GLocGraph& g,
                                                const WeightAssignment& w,
                                                long L_n) {
  MaxWeightBuildResult out;
  const DetGraph& gamma = g.gamma;
  RelayRgg rgg;
  std::vector<char> forbidden(static_cast<std::size_t>(g.n_relay()) + 1, 0);
  for (int e = 1; e <= gamma.e0(); ++e) {
    const auto [a, b] = gamma.edges[static_cast<std::size_t>(e) - 1];
    SquareChainLayout lay;
    try {
      lay = square_chain_layout(gamma.vertex(a), gamma.vertex(b), g.r_n(), L_n);
    } catch (const chain_error& err) {
      out.failure = BuildFailure{e, err.site_index, err.reason};
      return out;
    }
    GreedyBuildResult gr =
        build_greedy_max_weight_path(g, w, lay, a, b, forbidden);
    if (!gr.ok()) {
      out.failure = gr.failure;
      out.failure.edge_index = e;
      return out;
    }
    check_greedy_geometry(g, gr.result->path, L_n);
    const long lo = (L_n + 15) / 16;
    if (gr.result->path.hops() < lo)
      throw invariant_violation("greedy path below the L_n/16 hop floor");
    for (const VertexRef& vr : gr.result->path.vertices)
      if (vr.kind == VertexKind::relay)
        forbidden[static_cast<std::size_t>(vr.id)] = 1;
    out.total_weight += gr.result->total;
    rgg.paths.push_back(gr.result->path);
    out.per_edge.push_back(std::move(*gr.result));
  }
  const ValidationReport report = validate_relay_rgg(rgg, g);
  if (!report.ok())
    throw invariant_violation("greedy relay RGG failed validation: " +
                              report.violations.front());
  if (static_cast<double>(rgg.total_edges()) * g.r_n() < gamma.l_tot - 1e-9)
    throw invariant_violation("greedy relay RGG violates the length lower bound");
  out.rgg = std::move(rgg);
  return out;
}

EupResult check_eup(const GLocGraph& g, const WeightAssignment& w, double M) {
  if (!(M > 2.0)) throw config_error("check_eup: M must exceed 2");
  EupResult out;
  double min_u = 1.0;
  long long count = 0;
  for_each_rgg_edge(g.rgg, [&](int i, int j) {
    min_u = std::min(min_u, w.uniform_for(relay_vertex(i), relay_vertex(j)));
    ++count;
  });
  for (int b = 1; b <= g.n_backbone(); ++b) {
    g.rgg.index.for_each_within(
        g.rgg.points, g.gamma.vertex(b), g.r_n(), [&](int j) {
          min_u =
              std::min(min_u, w.uniform_for(backbone_vertex(b), relay_vertex(j)));
          ++count;
        });
  }
  out.max_weight = count > 0 ? -std::log(min_u) : 0.0;
  out.edges_checked = count;
  out.holds = out.max_weight <= M * std::log(static_cast<double>(g.n_relay()));
  return out;
}

WeightEstimate make_weight_estimate(int e0, long L_n, long n, double M,
                                    double achieved_total, bool eup_holds) {
  WeightEstimate est;
  const double logn = std::log(static_cast<double>(n));
  est.delta_n = static_cast<double>(e0) * static_cast<double>(L_n) * logn;
  est.upper_cert = static_cast<double>(e0) * M * static_cast<double>(L_n) * logn;
  est.lower_achieved = achieved_total;
  est.eup_holds = eup_holds;
  return est;
}

namespace {

struct OracleSearch {
  const GLocGraph& g;
  const WeightAssignment& w;
  int target;
  long max_hops;
  std::vector<std::vector<int>> adj;  // relay adjacency
  std::vector<char> target_adjacent;  // relay id -> adjacent to target
  std::vector<char> used;
  std::vector<int> stack;
  double best = -1.0;
  bool found = false;
  std::vector<int> best_stack;

  void dfs(int cur, long hops, double total) {
    // close the path at the target whenever possible
    if (target_adjacent[static_cast<std::size_t>(cur)] && hops + 1 <= max_hops) {
      const double t =
          total + w.weight(relay_vertex(cur), backbone_vertex(target));
      if (!found || t > best) {
        found = true;
        best = t;
        best_stack = stack;
      }
    }
    if (hops + 1 >= max_hops) return;
    for (int nxt : adj[static_cast<std::size_t>(cur)]) {
      if (used[static_cast<std::size_t>(nxt)]) continue;
      used[static_cast<std::size_t>(nxt)] = 1;
      stack.push_back(nxt);
      dfs(nxt, hops + 1,
          total + w.weight(relay_vertex(cur), relay_vertex(nxt)));
      stack.pop_back();
      used[static_cast<std::size_t>(nxt)] = 0;
    }
  }
};

}  // namespace

OraclePathResult oracle_max_weight_path(const GLocGraph& g,
                                        const WeightAssignment& w, int u, int v,
                                        long L_n) {
  const int n = g.n_relay();
  if (n > 12)
    throw config_error("oracle_max_weight_path: instance too large (n > 12)");
  OraclePathResult out;
  if (L_n < 2) return out;  // backbone vertices are never mutually adjacent

  OracleSearch s{g, w, v, L_n, {}, {}, {}, {}};
  s.adj.assign(static_cast<std::size_t>(n) + 1, {});
  s.target_adjacent.assign(static_cast<std::size_t>(n) + 1, 0);
  s.used.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j)
      if (i != j && rgg_adjacent(g.rgg, i, j))
        s.adj[static_cast<std::size_t>(i)].push_back(j);
    s.target_adjacent[static_cast<std::size_t>(i)] =
        dist2(g.rgg.points.at(i), g.gamma.vertex(v)) <= g.r_n() * g.r_n();
  }
  for (int start = 1; start <= n; ++start) {
    if (dist2(g.rgg.points.at(start), g.gamma.vertex(u)) > g.r_n() * g.r_n())
      continue;
    s.used[static_cast<std::size_t>(start)] = 1;
    s.stack.push_back(start);
    s.dfs(start, 1, w.weight(backbone_vertex(u), relay_vertex(start)));
    s.stack.pop_back();
    s.used[static_cast<std::size_t>(start)] = 0;
  }
  if (!s.found) return out;
  out.found = true;
  out.total = s.best;
  out.path.push_back(backbone_vertex(u));
  for (int id : s.best_stack) out.path.push_back(relay_vertex(id));
  out.path.push_back(backbone_vertex(v));
  return out;
}

}  // namespace relay_rgg
