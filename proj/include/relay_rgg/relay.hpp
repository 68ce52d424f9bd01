#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "relay_rgg/graphs.hpp"

namespace relay_rgg {

struct TwoPointMode {};
struct RatioMode {
  double eps = 0.0;
};
using ChainMode = std::variant<TwoPointMode, RatioMode>;

inline bool is_two_point(const ChainMode& m) {
  return std::holds_alternative<TwoPointMode>(m);
}
inline double mode_eps(const ChainMode& m) {
  return is_two_point(m) ? 0.0 : std::get<RatioMode>(m).eps;
}

enum class FailReason : int {
  none = 0,
  params_infeasible = 1,
  site_outside_square = 2,
  empty_site = 3,
  layout_infeasible = 4,
};

/// Construction failure: which backbone edge, and which disk/square along its
/// chain, could not be serviced. A failure is data, not an error.
struct BuildFailure {
  int edge_index = 0;  // 1-based backbone edge, 0 = none
  int site_index = 0;  // 1-based disk or square along the chain, 0 = n/a
  FailReason reason = FailReason::none;
};

struct chain_error : std::runtime_error {
  chain_error(FailReason r, int site, const std::string& msg)
      : std::runtime_error(msg), reason(r), site_index(site) {}
  FailReason reason;
  int site_index;
};

/// Parameters of the circle-chain construction for one edge of ratio
/// K = d(u,v)/r_n. gamma is the slack (1/2 in two-point mode, K*eps in ratio
/// mode); delta is picked so that W = K/(1-delta) is the smallest integer
/// with delta in (eta1, eta2].
struct CircleChainParams {
  double K = 0.0;
  double gamma = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  double delta = 0.0;
  int W = 0;
  int L_const = 17;

  double disk_radius(double r_n) const { return delta * r_n / L_const; }
  double spacing(double r_n) const { return r_n * (1.0 - delta); }
};

/// Throws chain_error when K <= 1 or no integer W puts delta within the
/// window.
CircleChainParams make_circle_chain_params(double K, const ChainMode& mode);

/// Unit normal of the segment u->v pointing toward the square's center; the
/// left normal when the edge's supporting line passes through the center.
Point inward_normal(Point u, Point v);

/// The W-1 disks of the circle chain: center i at distance i*r_n*(1-delta)
/// from u along the edge, offset one radius along the inward normal.
struct DiskChain {
  std::vector<Point> centers;
  double radius = 0.0;
  Point dir{};
  Point normal{};
};

/// Throws chain_error (site_outside_square) if any disk leaves the closed
/// square — the signal that r_n is too large for this edge's position.
DiskChain disk_chain(Point u, Point v, const CircleChainParams& params,
                     double r_n);

/// A path whose endpoints are backbone vertices and interior vertices are RGG
/// points, with consecutive vertices within r_n.
struct RelayPath {
  std::vector<VertexRef> vertices;
  int hops() const { return static_cast<int>(vertices.size()) - 1; }
};

struct PathBuildResult {
  std::optional<RelayPath> path;
  BuildFailure failure;
  bool ok() const { return path.has_value(); }
};

/// One relay vertex per disk, lowest index among eligible (not forbidden, not
/// already used in this path). forbidden may be empty or sized n_relay()+1.
/// On success the path is checked against the chain estimates (hop length,
/// pairwise spacing, hop count) and any breach throws invariant_violation.
PathBuildResult build_relay_path(const GLocGraph& g, int u, int v,
                                 const CircleChainParams& params,
                                 const std::vector<char>& forbidden);

/// A relay path per backbone edge, pairwise vertex-disjoint except at shared
/// backbone endvertices.
struct RelayRgg {
  std::vector<RelayPath> paths;  // index i-1 serves backbone edge i
  long total_edges() const {
    long t = 0;
    for (const auto& p : paths) t += p.hops();
    return t;
  }
};

struct RelayBuildResult {
  std::optional<RelayRgg> rgg;
  BuildFailure failure;
  std::vector<CircleChainParams> per_edge_params;
  bool ok() const { return rgg.has_value(); }
};

/// Iterative construction over backbone edges in ascending index order; the
/// forbidden set accumulates interior vertices of earlier paths. Propagates
/// the first per-edge failure. On success the result has been re-validated
/// against the disjointness rules and the deterministic length lower bound.
RelayBuildResult build_relay_rgg(const GLocGraph& g, const ChainMode& mode);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks endvertex matching, hop lengths, interior tags, within-path vertex
/// distinctness, and the pairwise sharing rules for adjacent/non-adjacent
/// backbone edges.
ValidationReport validate_relay_rgg(const RelayRgg& rr, const GLocGraph& g);

struct LengthEstimate {
  double lower = 0.0;              // l_tot / r_n
  double achieved = 0.0;           // total edges, or +inf on failure
  std::vector<int> per_edge_targets;  // alpha(K_f) per backbone edge
  bool sandwich_two_point = false;    // achieved <= lower + 2*e0
  bool sandwich_ratio = false;        // achieved <= lower * (1 + eps)
};

LengthEstimate length_bounds(const RelayBuildResult& result, const GLocGraph& g,
                             const ChainMode& mode);

}  // namespace relay_rgg
