#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relay_rgg/harness.hpp"

namespace py = pybind11;
using namespace relay_rgg;

namespace {

VertexRef ref_from(const std::string& kind, int id) {
  if (kind == "backbone") return backbone_vertex(id);
  if (kind == "relay") return relay_vertex(id);
  throw config_error("vertex kind must be 'backbone' or 'relay'");
}

std::string kind_name(VertexKind k) {
  return k == VertexKind::backbone ? "backbone" : "relay";
}

PointSet points_from(const std::vector<std::pair<double, double>>& pts) {
  PointSet ps;
  ps.pts.reserve(pts.size());
  for (const auto& [x, y] : pts) ps.pts.push_back({x, y});
  return ps;
}

py::list path_to_list(const RelayPath& path) {
  py::list out;
  for (const VertexRef& v : path.vertices)
    out.append(py::make_tuple(kind_name(v.kind), v.id));
  return out;
}

ExperimentConfig config_from_dict(const py::dict& d) {
  std::vector<std::pair<std::string, std::string>> overrides;
  for (const auto& item : d)
    overrides.emplace_back(py::cast<std::string>(item.first),
                           py::cast<std::string>(py::str(item.second)));
  return load_config("", overrides, nullptr);
}

ExperimentResult run_by_kind(const std::string& kind,
                             const ExperimentConfig& cfg, int workers) {
  if (kind == "distance") return run_distance_experiment(cfg, workers);
  if (kind == "length") return run_length_experiment(cfg, workers);
  if (kind == "weight") return run_weight_experiment(cfg, workers);
  if (kind == "rgg-stats") return run_rgg_stats(cfg, workers);
  if (kind == "trend") {
    std::vector<ExperimentConfig> cfgs;
    for (long nv : cfg.n_values) {
      ExperimentConfig c = cfg;
      c.n_values = {nv};
      cfgs.push_back(std::move(c));
    }
    return run_trend_experiment(cfgs, workers);
  }
  throw config_error("unknown experiment kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Relay random geometric graphs: constructions, bounds, experiments";

  py::register_exception<config_error>(m, "ConfigError");
  py::register_exception<invariant_violation>(m, "InvariantViolation");

  py::class_<DetGraph>(m, "DetGraph")
      .def_static("from_file", &DetGraph::from_file, py::arg("path"))
      .def_static("segment", &DetGraph::segment, py::arg("d"))
      .def_static("star", &DetGraph::star, py::arg("k"), py::arg("length") = 0.3)
      .def_static("parallel", &gamma_parallel_example, py::arg("m"))
      .def_property_readonly("v0", &DetGraph::v0)
      .def_property_readonly("e0", &DetGraph::e0)
      .def_readonly("l0", &DetGraph::l0)
      .def_readonly("l_up", &DetGraph::l_up)
      .def_readonly("l_tot", &DetGraph::l_tot)
      .def("vertices",
           [](const DetGraph& g) {
             std::vector<std::pair<double, double>> out;
             for (const Point& p : g.vertices) out.push_back({p.x, p.y});
             return out;
           })
      .def("edges", [](const DetGraph& g) { return g.edges; });

  py::class_<GLocGraph>(m, "GLocGraph")
      .def_property_readonly("r_n", &GLocGraph::r_n)
      .def_property_readonly("n_relay", &GLocGraph::n_relay)
      .def_property_readonly("n_backbone", &GLocGraph::n_backbone);

  m.def(
      "sample_points",
      [](long n, std::uint64_t seed) {
        RandomStream rng(seed);
        const PointSet ps = sample_points(n, DensitySpec::uniform(), rng);
        std::vector<std::pair<double, double>> out;
        for (const Point& p : ps.pts) out.push_back({p.x, p.y});
        return out;
      },
      py::arg("n"), py::arg("seed"),
      "i.i.d. uniform points on the unit square, reproducible from the seed");

  m.def(
      "build_gloc",
      [](const std::vector<std::pair<double, double>>& pts, double r_n,
         const DetGraph& gamma) {
        return build_gloc(build_rgg(points_from(pts), r_n), gamma);
      },
      py::arg("points"), py::arg("r_n"), py::arg("gamma"));

  m.def(
      "relay_distance",
      [](const GLocGraph& g, int u, int v) -> py::object {
        const auto d = relay_distance(g, u, v);
        if (!d) return py::none();
        return py::int_(*d);
      },
      py::arg("gloc"), py::arg("u"), py::arg("v"));

  m.def(
      "graph_distance",
      [](const GLocGraph& g, const std::string& s_kind, int s_id,
         const std::string& t_kind, int t_id) -> py::object {
        const auto d =
            graph_distance(g, ref_from(s_kind, s_id), ref_from(t_kind, t_id));
        if (!d) return py::none();
        return py::int_(*d);
      },
      py::arg("gloc"), py::arg("s_kind"), py::arg("s_id"), py::arg("t_kind"),
      py::arg("t_id"));

  m.def("two_point_target", &two_point_target, py::arg("d"), py::arg("r_n"));

  m.def(
      "distance_events",
      [](const GLocGraph& g, int u, int v, double eps) {
        const DistanceEventOutcome ev = check_distance_events(g, u, v, eps);
        py::dict out;
        out["d_gr"] = ev.d_gr ? py::object(py::int_(*ev.d_gr)) : py::none();
        out["d_euclid"] = ev.d_euclid;
        out["d_uv"] = ev.d_uv;
        out["e_uv"] = ev.e_uv;
        out["f_uv"] = ev.f_uv;
        return out;
      },
      py::arg("gloc"), py::arg("u"), py::arg("v"), py::arg("eps"));

  m.def(
      "build_relay_rgg",
      [](const GLocGraph& g, const std::string& mode, double eps) {
        const ChainMode cm = mode == "ratio" ? ChainMode{RatioMode{eps}}
                                             : ChainMode{TwoPointMode{}};
        const RelayBuildResult res = build_relay_rgg(g, cm);
        const LengthEstimate est = length_bounds(res, g, cm);
        py::dict out;
        out["ok"] = res.ok();
        out["lower"] = est.lower;
        out["achieved"] = est.achieved;
        out["sandwich_two_point"] = est.sandwich_two_point;
        out["sandwich_ratio"] = est.sandwich_ratio;
        out["per_edge_targets"] = est.per_edge_targets;
        if (res.ok()) {
          py::list paths;
          for (const RelayPath& p : res.rgg->paths) paths.append(path_to_list(p));
          out["paths"] = paths;
        } else {
          out["fail_edge"] = res.failure.edge_index;
          out["fail_site"] = res.failure.site_index;
          out["fail_reason"] = static_cast<int>(res.failure.reason);
        }
        return out;
      },
      py::arg("gloc"), py::arg("mode") = "twopoint", py::arg("eps") = 0.0);

  m.def(
      "build_max_weight_relay_rgg",
      [](const GLocGraph& g, std::uint64_t weight_seed, long L_n) {
        const WeightAssignment w(weight_seed);
        const MaxWeightBuildResult res = build_max_weight_relay_rgg(g, w, L_n);
        py::dict out;
        out["ok"] = res.ok();
        if (res.ok()) {
          out["total_weight"] = res.total_weight;
          py::list paths;
          py::list hop_weights;
          for (const GreedyPathResult& p : res.per_edge) {
            paths.append(path_to_list(p.path));
            hop_weights.append(p.hop_weights);
          }
          out["paths"] = paths;
          out["hop_weights"] = hop_weights;
        } else {
          out["fail_edge"] = res.failure.edge_index;
          out["fail_site"] = res.failure.site_index;
          out["fail_reason"] = static_cast<int>(res.failure.reason);
        }
        return out;
      },
      py::arg("gloc"), py::arg("weight_seed"), py::arg("L_n"));

  m.def(
      "oracle_max_weight_path",
      [](const GLocGraph& g, std::uint64_t weight_seed, int u, int v, long L_n) {
        const OraclePathResult res =
            oracle_max_weight_path(g, WeightAssignment(weight_seed), u, v, L_n);
        py::dict out;
        out["found"] = res.found;
        if (res.found) {
          out["total"] = res.total;
          py::list path;
          for (const VertexRef& vr : res.path)
            path.append(py::make_tuple(kind_name(vr.kind), vr.id));
          out["path"] = path;
        }
        return out;
      },
      py::arg("gloc"), py::arg("weight_seed"), py::arg("u"), py::arg("v"),
      py::arg("L_n"));

  m.def(
      "check_eup",
      [](const GLocGraph& g, std::uint64_t weight_seed, double M) {
        const EupResult res = check_eup(g, WeightAssignment(weight_seed), M);
        py::dict out;
        out["holds"] = res.holds;
        out["max_weight"] = res.max_weight;
        out["edges_checked"] = res.edges_checked;
        return out;
      },
      py::arg("gloc"), py::arg("weight_seed"), py::arg("M"));

  m.def(
      "exp_weight",
      [](std::uint64_t seed, const std::string& a_kind, int a_id,
         const std::string& b_kind, int b_id) {
        return WeightAssignment(seed).weight(ref_from(a_kind, a_id),
                                             ref_from(b_kind, b_id));
      },
      py::arg("seed"), py::arg("a_kind"), py::arg("a_id"), py::arg("b_kind"),
      py::arg("b_id"));

  m.def("chernoff_upper", &chernoff_upper, py::arg("mu"), py::arg("eps"));
  m.def(
      "exact_two_sided_tail",
      [](const std::vector<double>& p, double eps) {
        return exact_two_sided_tail(BernoulliSumSpec{p}, eps);
      },
      py::arg("p"), py::arg("eps"));
  m.def("stretch_tail_bound", &stretch_tail_bound, py::arg("n"), py::arg("r_n"),
        py::arg("D"));
  m.def(
      "two_point_tail_bound",
      [](double n, double r_n, double d, double D) {
        const TwoPointBound b = two_point_tail_bound(n, r_n, d, D);
        py::dict out;
        out["value"] = b.value;
        out["specialization_applies"] = b.specialization_applies;
        out["specialized_value"] = b.specialized_value;
        return out;
      },
      py::arg("n"), py::arg("r_n"), py::arg("d"), py::arg("D"));
  m.def(
      "tail_bound_calculators",
      [](double n, double r_n, double C, double D, double a) {
        const TailBounds t = tail_bound_calculators(n, r_n, C, D, a);
        py::dict out;
        out["ratio_sandwich_fail"] = t.ratio_sandwich_fail;
        out["additive_sandwich_fail"] = t.additive_sandwich_fail;
        out["weight_band_fail"] = t.weight_band_fail;
        return out;
      },
      py::arg("n"), py::arg("r_n"), py::arg("C") = 1.0, py::arg("D") = 1.0,
      py::arg("a") = 1.0);

  m.def(
      "run_experiment",
      [](const std::string& kind, const py::dict& config, int workers) {
        const ExperimentConfig cfg = config_from_dict(config);
        const ExperimentResult res = run_by_kind(kind, cfg, workers);
        py::dict out;
        out["csv"] = res.csv;
        out["summary_json"] = res.summary_json;
        return out;
      },
      py::arg("kind"), py::arg("config"), py::arg("workers") = 0,
      "Runs an experiment in-process and returns its CSV and summary JSON");

  m.def(
      "run_and_write",
      [](const std::string& kind, const py::dict& config, int workers) {
        const ExperimentConfig cfg = config_from_dict(config);
        const ExperimentResult res = run_by_kind(kind, cfg, workers);
        const auto [csv_path, json_path] = write_outputs(res, cfg, kind);
        return py::make_tuple(csv_path, json_path);
      },
      py::arg("kind"), py::arg("config"), py::arg("workers") = 0,
      "Runs an experiment and writes <kind>-<seed>.csv plus .summary.json");
}
