#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

#include "hypsite/error.hpp"
#include "hypsite/estimators.hpp"
#include "hypsite/generators.hpp"
#include "hypsite/graph_io.hpp"
#include "hypsite/matching.hpp"
#include "hypsite/percolation.hpp"
#include "hypsite/report.hpp"
#include "hypsite/tree_embed.hpp"

#ifdef HYPSITE_WITH_CLI
#include "cli.hpp"
#endif

namespace py = pybind11;
using namespace hypsite;

namespace {

using GraphPtr = std::shared_ptr<RotationGraph>;

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

GraphPtr share(RotationGraph g) { return std::make_shared<RotationGraph>(std::move(g)); }

RunOptions run_options(std::size_t replicas, std::uint64_t seed, unsigned threads, bool inverted) {
  return RunOptions{replicas, seed, threads, inverted};
}

// Graphs and matching graphs are both accepted wherever an adjacency is needed.
Adjacency adjacency_of(const py::object& g) {
  if (py::isinstance<MatchingGraph>(g)) return g.cast<const MatchingGraph&>().adjacency();
  return Adjacency(*g.cast<GraphPtr>());
}

VertexId center_of(const py::object& g, std::optional<VertexId> v) {
  if (v) return *v;
  if (py::isinstance<MatchingGraph>(g)) return g.cast<const MatchingGraph&>().base().origin();
  return g.cast<GraphPtr>()->origin();
}

}  // namespace

PYBIND11_MODULE(hypsite, m) {
  m.doc() = "Site percolation on planar hyperbolic graphs";
  m.attr("__version__") = HYPSITE_VERSION;

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception<StructuralError>(m, "StructuralError", error.ptr());
  py::register_exception<FormatError>(m, "FormatError", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<HypothesisError>(m, "HypothesisError", error.ptr());
  py::register_exception<BudgetError>(m, "BudgetError", error.ptr());
  static py::exception<TruncationError> truncation(m, "TruncationError", error.ptr());
  py::register_exception<PartialTreeError>(m, "PartialTreeError", truncation.ptr());

  py::class_<RotationGraph, GraphPtr>(m, "Graph")
      .def_property_readonly("size", &RotationGraph::size)
      .def_property_readonly("edge_count", &RotationGraph::edge_count)
      .def_property_readonly("origin", &RotationGraph::origin)
      .def_property_readonly("meta", [](const RotationGraph& g) { return to_python(g.meta()); })
      .def("degree", &RotationGraph::degree)
      .def("is_boundary", &RotationGraph::is_boundary)
      .def("neighbors",
           [](const RotationGraph& g, VertexId v) {
             auto n = g.neighbors(v);
             return std::vector<VertexId>(n.begin(), n.end());
           })
      .def("boundary_vertices", &RotationGraph::boundary_vertices)
      .def("degree_profile",
           [](const RotationGraph& g) {
             const DegreeProfile d = degree_profile(g);
             return py::make_tuple(d.min_interior_degree, d.min_finite_face_degree);
           })
      .def("distances",
           [](const RotationGraph& g, VertexId src, int max_r) { return bfs_distances(g, src, max_r); },
           py::arg("source"), py::arg("max_radius") = -1)
      .def("save", [](const RotationGraph& g, const std::string& path) { save_graph(path, g); })
      .def("to_string", [](const RotationGraph& g) { return graph_to_string(g); })
      .def("__len__", &RotationGraph::size);

  py::class_<MatchingGraph>(m, "MatchingGraph")
      .def_property_readonly("base", [](const MatchingGraph& mg) { return std::const_pointer_cast<RotationGraph>(mg.base_ptr()); })
      .def_property_readonly("added_edges", &MatchingGraph::added_edges)
      .def("neighbors", &MatchingGraph::star_neighbors)
      .def("distance", [](const MatchingGraph& mg, VertexId u, VertexId v) { return star_distance(mg, u, v); });

  m.def("tiling", [](int p, int q, int radius) { return share(tiling({p, q, radius})); }, py::arg("p"), py::arg("q"),
        py::arg("radius"));
  m.def(
      "half_plane",
      [](int p, int q, int radius, bool augment) {
        RotationGraph g = half_plane({p, q, radius});
        if (augment) g = barycentric_augment(g, g.meta().at("cut_path").get<std::vector<VertexId>>());
        return share(std::move(g));
      },
      py::arg("p"), py::arg("q"), py::arg("radius"), py::arg("augment") = false);
  m.def("tree", [](int n, int depth) { return share(tree_Tn(n, depth)); }, py::arg("n"), py::arg("depth"));
  m.def("square_lattice", [](int radius) { return share(square_lattice(radius)); }, py::arg("radius"));
  m.def("load_graph", [](const std::string& path) { return share(load_graph(path).graph); }, py::arg("path"));
  m.def("matching_graph", [](GraphPtr g) { return MatchingGraph(std::move(g)); }, py::arg("graph"));

  m.def(
      "embed_tree",
      [](GraphPtr g, int depth, const std::string& mode, std::optional<VertexId> root, bool allow_partial) {
        if (mode != "deg7" && mode != "deg5") throw DomainError("mode must be deg7 or deg5");
        const TurnRule rule = mode == "deg7" ? TurnRule::degree7 : TurnRule::degree5;
        const EmbeddedTree t = embed_tree(*g, root.value_or(g->origin()), depth, rule, allow_partial);
        nlohmann::json out = to_json(t);
        out["verification"] = to_json(verify_embedding(t));
        return to_python(out);
      },
      py::arg("graph"), py::arg("depth"), py::arg("mode") = "deg7", py::arg("root") = py::none(),
      py::arg("allow_partial") = false);

  m.def(
      "theta_n",
      [](const py::object& g, double p, int n, std::optional<VertexId> v, std::size_t replicas, std::uint64_t seed,
         unsigned threads, bool inverted) {
        return to_python(
            to_json(theta_n(adjacency_of(g), center_of(g, v), p, n, run_options(replicas, seed, threads, inverted))));
      },
      py::arg("graph"), py::arg("p"), py::arg("n"), py::arg("vertex") = py::none(), py::arg("replicas") = 1000,
      py::arg("seed") = 1, py::arg("threads") = 1, py::arg("inverted") = false);

  m.def(
      "estimate_pc",
      [](const py::object& g, int n, int mm, double level, double tol, std::optional<VertexId> v,
         std::size_t replicas, std::uint64_t seed, unsigned threads) {
        const PcOptions pc{n, mm, level, tol, 200};
        return to_python(
            to_json(estimate_pc(adjacency_of(g), center_of(g, v), pc, run_options(replicas, seed, threads, false))));
      },
      py::arg("graph"), py::arg("n") = 8, py::arg("m") = 0, py::arg("level") = 0.5, py::arg("tol") = 1e-4,
      py::arg("vertex") = py::none(), py::arg("replicas") = 1000, py::arg("seed") = 1, py::arg("threads") = 1);

  m.def(
      "two_point_decay",
      [](const MatchingGraph& mg, double p, const std::vector<int>& radii, std::optional<VertexId> v,
         std::size_t replicas, std::uint64_t seed, unsigned threads) {
        return to_python(to_json(two_point_decay(mg, p, v.value_or(mg.base().origin()), radii,
                                                 run_options(replicas, seed, threads, false))));
      },
      py::arg("matching"), py::arg("p"), py::arg("radii"), py::arg("vertex") = py::none(), py::arg("replicas") = 1000,
      py::arg("seed") = 1, py::arg("threads") = 1);

  m.def(
      "uniqueness_probe",
      [](const py::object& g, double p, int r_inner, int r_outer, int state, std::optional<VertexId> v,
         std::size_t replicas, std::uint64_t seed, unsigned threads) {
        const AnnulusSpec spec{center_of(g, v), r_inner, r_outer, state};
        return to_python(
            to_json(uniqueness_probe(adjacency_of(g), p, spec, run_options(replicas, seed, threads, false))));
      },
      py::arg("graph"), py::arg("p"), py::arg("r_inner") = 4, py::arg("r_outer") = 9, py::arg("state") = 1,
      py::arg("vertex") = py::none(), py::arg("replicas") = 1000, py::arg("seed") = 1, py::arg("threads") = 1);

  m.def(
      "estimate_pu",
      [](const py::object& g, int r_inner, int r_outer, double epsilon, double tol, std::optional<VertexId> v,
         std::size_t replicas, std::uint64_t seed, unsigned threads) {
        PuOptions pu;
        pu.annulus = {center_of(g, v), r_inner, r_outer, 1};
        pu.epsilon = epsilon;
        pu.tol = tol;
        return to_python(to_json(estimate_pu(adjacency_of(g), pu, run_options(replicas, seed, threads, false))));
      },
      py::arg("graph"), py::arg("r_inner") = 4, py::arg("r_outer") = 9, py::arg("epsilon") = 0.02,
      py::arg("tol") = 1e-4, py::arg("vertex") = py::none(), py::arg("replicas") = 1000, py::arg("seed") = 1,
      py::arg("threads") = 1);

  m.def(
      "iso_upper",
      [](const py::object& g, int max_size, std::optional<VertexId> root, std::uint64_t budget) {
        return to_python(to_json(iso_upper(adjacency_of(g), center_of(g, root), max_size, budget)));
      },
      py::arg("graph"), py::arg("max_size"), py::arg("root") = py::none(), py::arg("budget") = 2'000'000'000ULL);

  m.def("hoeffding_bound", &hoeffding_bound, py::arg("p"), py::arg("i_lower"), py::arg("M"));

  m.def(
      "duality_check",
      [](const MatchingGraph& mg, int n, double level, int r_inner, int r_outer, double epsilon,
         std::size_t pc_replicas, std::size_t replicas, std::uint64_t seed, unsigned threads) {
        DualityOptions d;
        d.pc.n = n;
        d.pc.level = level;
        d.pu.annulus = {mg.base().origin(), r_inner, r_outer, 1};
        d.pu.epsilon = epsilon;
        d.pc_replicas = pc_replicas;
        return to_python(to_json(duality_check(mg, d, run_options(replicas, seed, threads, false))));
      },
      py::arg("matching"), py::arg("n") = 6, py::arg("level") = 0.5, py::arg("r_inner") = 3, py::arg("r_outer") = 6,
      py::arg("epsilon") = 0.02, py::arg("pc_replicas") = 0, py::arg("replicas") = 400, py::arg("seed") = 1,
      py::arg("threads") = 1);

  m.def(
      "sample_config",
      [](const RotationGraph& g, double p, std::uint64_t seed, bool inverted) {
        const SiteConfig cfg = threshold(UniformField(seed, g.size(), inverted), p);
        return std::vector<bool>(cfg.open.begin(), cfg.open.end());
      },
      py::arg("graph"), py::arg("p"), py::arg("seed"), py::arg("inverted") = false);

#ifdef HYPSITE_WITH_CLI
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
#endif
}
