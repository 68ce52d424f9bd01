#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "relay_rgg/relay.hpp"

namespace relay_rgg {

/// Functional unit-mean exponential weights: weight(pair) is the inverse CDF
/// applied to a uniform derived from stable_hash(seed, canonical pair key).
/// No storage; every queried pair gets the same value forever.
class WeightAssignment {
 public:
  explicit WeightAssignment(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// The uniform the weight is derived from; weight = -log(uniform), so the
  /// maximum weight over a set of pairs is -log of the minimum uniform.
  double uniform_for(VertexRef a, VertexRef b) const {
    if (b < a) std::swap(a, b);
    const std::uint64_t h =
        stable_hash(seed_, static_cast<std::uint64_t>(a.kind),
                    static_cast<std::uint64_t>(a.id),
                    static_cast<std::uint64_t>(b.kind),
                    static_cast<std::uint64_t>(b.id));
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
  }

  double weight(VertexRef a, VertexRef b) const {
    return -std::log(uniform_for(a, b));
  }

 private:
  std::uint64_t seed_;
};

/// The square chain for one backbone edge: a x a squares (a = r_n/10) whose
/// centers sit on a 4a grid in the edge frame. centers[0] holds u,
/// centers[N+1] holds v; the N interior squares run along a base row at
/// offset 4a with vertical detours ("teeth") when the hop budget asks for
/// more squares than one row holds. All consecutive center gaps are exactly
/// 4a except at most the final hop, which stays within (4a, 8a].
struct SquareChainLayout {
  double a = 0.0;
  int N = 0;
  std::vector<Point> centers;  // size N + 2
  Point dir{};
  Point normal{};
  std::optional<int> irregular_gap_index;  // gap between centers[i] and [i+1]
  int rows = 0;  // 1 + tallest tooth
  int cols = 0;  // base-row square count
};

/// Throws chain_error (layout_infeasible / site_outside_square) when the edge
/// cannot be spanned within L_n hops at 4a spacing or the strip leaves the
/// square.
SquareChainLayout square_chain_layout(Point u, Point v, double r_n, long L_n);

ValidationReport validate_square_chain_layout(const SquareChainLayout& layout,
                                              Point u, Point v, double r_n,
                                              long L_n);

struct GreedyPathResult {
  RelayPath path;
  std::vector<double> hop_weights;
  double total = 0.0;
  double min_hop_weight = 0.0;
};

struct GreedyBuildResult {
  std::optional<GreedyPathResult> result;
  BuildFailure failure;
  bool ok() const { return result.has_value(); }
};

/// From the current vertex, picks the maximum-weight edge into the next
/// square among eligible points (lowest index on ties). Failure reports the
/// first square with no eligible vertex.
GreedyBuildResult build_greedy_max_weight_path(const GLocGraph& g,
                                               const WeightAssignment& w,
                                               const SquareChainLayout& layout,
                                               int u, int v,
                                               const std::vector<char>& forbidden);

struct MaxWeightBuildResult {
  std::optional<RelayRgg> rgg;
  BuildFailure failure;
  std::vector<GreedyPathResult> per_edge;
  double total_weight = 0.0;
  bool ok() const { return rgg.has_value(); }
};

/// One greedy square-chain path per backbone edge, edges in ascending order,
/// forbidden set accumulating used interior vertices. Every path has at most
/// L_n edges.
MaxWeightBuildResult build_max_weight_relay_rgg(const GLocGraph& g,
                                                const WeightAssignment& w,
                                                long L_n);

struct EupResult {
  bool holds = false;
  double max_weight = 0.0;
  long long edges_checked = 0;
};

/// True iff every realized G_loc edge has weight <= M log n. Requires M > 2.
EupResult check_eup(const GLocGraph& g, const WeightAssignment& w, double M);

struct WeightEstimate {
  double delta_n = 0.0;         // e0 * L_n * log n
  double lower_achieved = 0.0;  // constructed total weight, +inf if infeasible
  double upper_cert = 0.0;      // e0 * M * L_n * log n
  bool eup_holds = false;
};

WeightEstimate make_weight_estimate(int e0, long L_n, long n, double M,
                                    double achieved_total, bool eup_holds);

struct OraclePathResult {
  bool found = false;
  double total = 0.0;
  std::vector<VertexRef> path;
};

/// Exact maximum-weight simple relay path from backbone u to backbone v with
/// at most L_n edges, by exhaustive search. Requires n_relay() <= 12.
OraclePathResult oracle_max_weight_path(const GLocGraph& g,
                                        const WeightAssignment& w, int u, int v,
                                        long L_n);

}  // namespace relay_rgg
