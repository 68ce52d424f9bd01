#include "relay_rgg/relay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

namespace relay_rgg {

CircleChainParams make_circle_chain_params(double K, const ChainMode& mode) {
  if (!(K > 1.0))
    throw chain_error(FailReason::params_infeasible, 0,
                      "circle chain needs K > 1, got " + std::to_string(K));
  double gamma = 0.5;
  if (!is_two_point(mode)) {
    const double eps = mode_eps(mode);
    if (!(eps > 0.0))
      throw chain_error(FailReason::params_infeasible, 0,
                        "ratio mode needs eps > 0");
    gamma = K * eps;
  }
  CircleChainParams p;
  p.K = K;
  p.gamma = gamma;
  p.eta1 = gamma / (K + gamma);
  p.eta2 = (1.0 + gamma) / (1.0 + gamma + K);
  // delta in (eta1, eta2] with W = K/(1-delta) integral. Since
  // K/(1-eta1) = K+gamma and K/(1-eta2) = K+gamma+1, the admissible W window
  // is (K+gamma, K+gamma+1] and the smallest choice is floor(K+gamma)+1.
  long w = static_cast<long>(std::floor(K + gamma)) + 1;
  double delta = 1.0 - K / static_cast<double>(w);
  if (!(delta > p.eta1)) {
    ++w;
    delta = 1.0 - K / static_cast<double>(w);
  }
  if (delta > p.eta2 + 1e-12)
    throw chain_error(FailReason::params_infeasible, 0,
                      "no integer W puts delta within (eta1, eta2]");
  p.delta = delta;
  p.W = static_cast<int>(w);
  return p;
}

Point inward_normal(Point u, Point v) {
  const double l = dist(u, v);
  const double dx = (v.x - u.x) / l, dy = (v.y - u.y) / l;
  const Point left{-dy, dx};
  const Point mid{(u.x + v.x) / 2.0, (u.y + v.y) / 2.0};
  const double side = -(mid.x * left.x + mid.y * left.y);
  if (side < 0.0) return Point{dy, -dx};
  return left;
}

DiskChain disk_chain(Point u, Point v, const CircleChainParams& params,
                     double r_n) {
  const double l = dist(u, v);
  if (std::abs(l - params.K * r_n) > 1e-9 * std::max(1.0, l))
    throw chain_error(FailReason::params_infeasible, 0,
                      "disk_chain: edge length does not match K*r_n");
  DiskChain c;
  c.radius = params.disk_radius(r_n);
  const double ilen = 1.0 / l;
  c.dir = Point{(v.x - u.x) * ilen, (v.y - u.y) * ilen};
  c.normal = inward_normal(u, v);
  const double step = params.spacing(r_n);
  for (int i = 1; i <= params.W - 1; ++i) {
    const Point center{u.x + i * step * c.dir.x + c.radius * c.normal.x,
                       u.y + i * step * c.dir.y + c.radius * c.normal.y};
    if (center.x - c.radius < -0.5 || center.x + c.radius > 0.5 ||
        center.y - c.radius < -0.5 || center.y + c.radius > 0.5)
      throw chain_error(FailReason::site_outside_square, i,
                        "disk " + std::to_string(i) + " leaves the unit square");
    c.centers.push_back(center);
  }
  return c;
}

namespace {

void check_path_geometry(const GLocGraph& g, const RelayPath& path,
                         const CircleChainParams& params) {
  const double r = g.r_n();
  const double hop_cap = params.spacing(r) + 2.0 * params.disk_radius(r);
  const double min_gap = r * (1.0 - 1.5 * params.delta);
  const auto& vs = path.vertices;
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    const double d = dist(g.pos(vs[i]), g.pos(vs[i + 1]));
    if (d > hop_cap + 1e-12 || d > r)
      throw invariant_violation("circle-chain hop exceeds its length estimate");
  }
  // Every pair of path vertices keeps the chain's spacing bound.
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (vs[i] == vs[j])
        throw invariant_violation("circle-chain path repeats a vertex");
      const double d = dist(g.pos(vs[i]), g.pos(vs[j]));
      if (d < min_gap - 1e-12)
        throw invariant_violation("circle-chain spacing below r(1-3delta/2)");
    }
  }
}

PathBuildResult build_path_impl(const GLocGraph& g, int u, int v,
                                const CircleChainParams& params,
                                const std::vector<char>& forbidden,
                                const std::unordered_map<int, int>* owner,
                                bool enforce_owner_count) {
  PathBuildResult out;
  DiskChain chain;
  try {
    chain = disk_chain(g.gamma.vertex(u), g.gamma.vertex(v), params, g.r_n());
  } catch (const chain_error& e) {
    out.failure = BuildFailure{0, e.site_index, e.reason};
    return out;
  }
  RelayPath path;
  path.vertices.push_back(backbone_vertex(u));
  std::set<int> in_path;
  for (std::size_t i = 0; i < chain.centers.size(); ++i) {
    const std::vector<int> candidates = g.rgg.index.neighbors_within(
        g.rgg.points, chain.centers[i], chain.radius);
    if (owner && enforce_owner_count) {
      // Disk diameter is below the spacing of every earlier path, so no
      // earlier path may contribute two vertices to one disk.
      std::unordered_map<int, int> per_owner;
      for (int id : candidates) {
        auto it = owner->find(id);
        if (it != owner->end() && ++per_owner[it->second] > 1)
          throw invariant_violation(
              "two vertices of one earlier relay path found in a single disk");
      }
    }
    int chosen = 0;
    for (int id : candidates) {
      if (!forbidden.empty() && forbidden[static_cast<std::size_t>(id)]) continue;
      if (in_path.count(id)) continue;
      chosen = id;
      break;
    }
    if (chosen == 0) {
      out.failure =
          BuildFailure{0, static_cast<int>(i) + 1, FailReason::empty_site};
      return out;
    }
    in_path.insert(chosen);
    path.vertices.push_back(relay_vertex(chosen));
  }
  path.vertices.push_back(backbone_vertex(v));
  if (path.hops() != params.W)
    throw invariant_violation("circle-chain path hop count differs from W");
  check_path_geometry(g, path, params);
  out.path = std::move(path);
  return out;
}

}  // namespace

PathBuildResult build_relay_path(const GLocGraph& g, int u, int v,
                                 const CircleChainParams& params,
                                 const std::vector<char>& forbidden) {
  return build_path_impl(g, u, v, params, forbidden, nullptr, false);
}

RelayBuildResult build_relay_rgg(const GLocGraph& g, const ChainMode& mode) {
  RelayBuildResult out;
  const DetGraph& gamma = g.gamma;
  RelayRgg rgg;
  std::vector<char> forbidden(static_cast<std::size_t>(g.n_relay()) + 1, 0);
  std::unordered_map<int, int> owner;  // relay vertex id -> earlier edge index
  double max_delta = 0.0;

  for (int e = 1; e <= gamma.e0(); ++e) {
    const auto [a, b] = gamma.edges[static_cast<std::size_t>(e) - 1];
    const double K = gamma.edge_len[static_cast<std::size_t>(e) - 1] / g.r_n();
    CircleChainParams params;
    try {
      params = make_circle_chain_params(K, mode);
    } catch (const chain_error& err) {
      out.failure = BuildFailure{e, err.site_index, err.reason};
      return out;
    }
    out.per_edge_params.push_back(params);
    max_delta = std::max(max_delta, params.delta);
    // The one-vertex-per-disk count is only guaranteed while every delta so
    // far keeps earlier spacing >= 5r/8 (delta <= 1/4).
    const bool enforce = max_delta <= 0.25;
    PathBuildResult pr =
        build_path_impl(g, a, b, params, forbidden, &owner, enforce);
    if (!pr.ok()) {
      out.failure = pr.failure;
      out.failure.edge_index = e;
      return out;
    }
    for (const VertexRef& vr : pr.path->vertices) {
      if (vr.kind == VertexKind::relay) {
        forbidden[static_cast<std::size_t>(vr.id)] = 1;
        owner.emplace(vr.id, e);
      }
    }
    rgg.paths.push_back(std::move(*pr.path));

    if (is_two_point(mode)) {
      const int alpha = two_point_target(
          gamma.edge_len[static_cast<std::size_t>(e) - 1], g.r_n());
      const int hops = rgg.paths.back().hops();
      if (hops != alpha && hops != alpha + 1)
        throw invariant_violation(
            "two-point construction produced hops outside {alpha, alpha+1}");
    }
  }

  const ValidationReport report = validate_relay_rgg(rgg, g);
  if (!report.ok())
    throw invariant_violation("constructed relay RGG failed validation: " +
                              report.violations.front());
  if (static_cast<double>(rgg.total_edges()) * g.r_n() < gamma.l_tot - 1e-9)
    throw invariant_violation("relay RGG violates the length lower bound");
  out.rgg = std::move(rgg);
  return out;
}

ValidationReport validate_relay_rgg(const RelayRgg& rr, const GLocGraph& g) {
  ValidationReport rep;
  const DetGraph& gamma = g.gamma;
  const double r2 = g.r_n() * g.r_n();
  const auto add = [&](const std::string& s) { rep.violations.push_back(s); };

  if (rr.paths.size() != static_cast<std::size_t>(gamma.e0())) {
    add("path count differs from backbone edge count");
    return rep;
  }
  for (int e = 1; e <= gamma.e0(); ++e) {
    const RelayPath& p = rr.paths[static_cast<std::size_t>(e) - 1];
    const auto [a, b] = gamma.edges[static_cast<std::size_t>(e) - 1];
    const std::string tag = "path " + std::to_string(e);
    if (p.vertices.size() < 2) {
      add(tag + ": fewer than two vertices");
      continue;
    }
    if (p.vertices.front() != backbone_vertex(a) ||
        p.vertices.back() != backbone_vertex(b))
      add(tag + ": endvertices do not match its backbone edge");
    for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i)
      if (p.vertices[i].kind != VertexKind::relay)
        add(tag + ": interior vertex is not an RGG point");
    for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i)
      if (dist2(g.pos(p.vertices[i]), g.pos(p.vertices[i + 1])) > r2)
        add(tag + ": hop " + std::to_string(i + 1) + " longer than r_n");
    std::set<VertexRef> uniq(p.vertices.begin(), p.vertices.end());
    if (uniq.size() != p.vertices.size()) add(tag + ": repeated vertex");
  }
  for (int e1 = 1; e1 <= gamma.e0(); ++e1) {
    for (int e2 = e1 + 1; e2 <= gamma.e0(); ++e2) {
      const auto [a1, b1] = gamma.edges[static_cast<std::size_t>(e1) - 1];
      const auto [a2, b2] = gamma.edges[static_cast<std::size_t>(e2) - 1];
      std::set<int> shared_ends;
      for (int x : {a1, b1})
        for (int y : {a2, b2})
          if (x == y) shared_ends.insert(x);
      const auto& p1 = rr.paths[static_cast<std::size_t>(e1) - 1].vertices;
      const auto& p2 = rr.paths[static_cast<std::size_t>(e2) - 1].vertices;
      std::set<VertexRef> s1(p1.begin(), p1.end());
      std::set<VertexRef> common;
      for (const VertexRef& vr : p2)
        if (s1.count(vr)) common.insert(vr);
      const std::string tag =
          "paths " + std::to_string(e1) + "/" + std::to_string(e2);
      if (shared_ends.empty()) {
        if (!common.empty()) add(tag + ": non-adjacent edges share a vertex");
      } else {
        std::set<VertexRef> expected;
        for (int x : shared_ends) expected.insert(backbone_vertex(x));
        if (common != expected)
          add(tag + ": adjacent edges must share exactly their common endvertex");
      }
    }
  }
  return rep;
}

LengthEstimate length_bounds(const RelayBuildResult& result, const GLocGraph& g,
                             const ChainMode& mode) {
  LengthEstimate est;
  const DetGraph& gamma = g.gamma;
  est.lower = gamma.l_tot / g.r_n();
  for (double l : gamma.edge_len)
    est.per_edge_targets.push_back(two_point_target(l, g.r_n()));
  if (result.ok()) {
    est.achieved = static_cast<double>(result.rgg->total_edges());
    est.sandwich_two_point =
        est.achieved <= est.lower + 2.0 * gamma.e0() + 1e-9;
    const double eps = mode_eps(mode);
    est.sandwich_ratio =
        !is_two_point(mode) && est.achieved <= est.lower * (1.0 + eps) + 1e-9;
  } else {
    est.achieved = std::numeric_limits<double>::infinity();
    est.sandwich_two_point = false;
    est.sandwich_ratio = false;
  }
  return est;
}

}  // namespace relay_rgg
