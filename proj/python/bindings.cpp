#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "polarimeter/community.hpp"
#include "polarimeter/datasets.hpp"
#include "polarimeter/errors.hpp"
#include "polarimeter/io.hpp"
#include "polarimeter/metric.hpp"
#include "polarimeter/stance.hpp"
#include "polarimeter/synthetic.hpp"

namespace py = pybind11;
using namespace polarimeter;

namespace {

using EdgeTuple = std::tuple<std::string, std::string, double>;

LabeledGraph graph_from_edges(const std::vector<EdgeTuple>& edges, const std::map<std::string, std::uint32_t>& labels,
                              std::uint32_t num_opinions) {
  GraphBuilder b;
  for (const auto& [u, v, w] : edges) b.add_edge(u, v, w);
  for (const auto& [n, o] : labels) b.set_opinion(n, Opinion{o});
  return b.build(num_opinions);
}

std::vector<EdgeTuple> edge_tuples(const LabeledGraph& g) {
  std::vector<EdgeTuple> out;
  out.reserve(g.edge_count());
  for (const Edge& e : g.edges()) out.emplace_back(g.name(e.u), g.name(e.v), e.weight);
  return out;
}

std::vector<std::uint32_t> opinion_values(const LabeledGraph& g) {
  std::vector<std::uint32_t> out;
  for (Opinion o : g.opinions()) out.push_back(o.value);
  return out;
}

Partition to_partition(const LabeledGraph& g, const std::vector<std::uint32_t>& assignment) {
  if (assignment.size() != g.node_count()) throw InputError("assignment length must equal node count");
  return Partition::from_assignment(assignment);
}

std::vector<std::uint32_t> to_list(const Partition& p) { return {p.assignment().begin(), p.assignment().end()}; }

py::dict run_dict(const RunScore& s) {
  py::dict d;
  d["seed"] = s.seed;
  d["p_within"] = s.p_within;
  d["p_between"] = s.p_between;
  d["polarization"] = s.polarization;
  d["within_mass"] = s.within_mass;
  d["between_mass"] = s.between_mass;
  d["communities"] = s.communities;
  d["modularity"] = s.modularity;
  return d;
}

py::dict summary_dict(const Summary& s) {
  py::dict d;
  d["mean"] = s.mean;
  d["std"] = s.std;
  d["min"] = s.min;
  d["max"] = s.max;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-opinion polarization scores for opinion-labeled networks";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

  py::class_<LabeledGraph>(m, "Graph")
      .def(py::init(&graph_from_edges), py::arg("edges"), py::arg("labels"), py::arg("num_opinions") = 0,
           "Build from (u, v, w) tuples and a node -> opinion index mapping")
      .def_property_readonly("node_count", &LabeledGraph::node_count)
      .def_property_readonly("edge_count", &LabeledGraph::edge_count)
      .def_property_readonly("num_opinions", &LabeledGraph::num_opinions)
      .def_property_readonly("total_weight", &LabeledGraph::total_weight)
      .def_property_readonly("names",
                             [](const LabeledGraph& g) {
                               return std::vector<std::string>(g.names().begin(), g.names().end());
                             })
      .def_property_readonly("opinions", &opinion_values)
      .def_property_readonly("edges", &edge_tuples)
      .def("__repr__", [](const LabeledGraph& g) {
        return "<Graph nodes=" + std::to_string(g.node_count()) + " edges=" + std::to_string(g.edge_count()) +
               " opinions=" + std::to_string(g.num_opinions()) + ">";
      });

  m.def(
      "load_graph",
      [](const std::string& edges, const std::string& labels, std::uint32_t num_opinions) {
        return load_graph(edges, labels, num_opinions).graph;
      },
      py::arg("edges"), py::arg("labels"), py::arg("num_opinions") = 0);
  m.def("karate_club", &karate_club);
  m.def("census", [](const LabeledGraph& g) { return census(g).counts; });

  m.def(
      "louvain",
      [](const LabeledGraph& g, std::uint64_t seed, double resolution, double min_gain) {
        py::gil_scoped_release release;
        return to_list(louvain(g, {seed, resolution, min_gain}));
      },
      py::arg("graph"), py::arg("seed") = 0, py::arg("resolution") = 1.0, py::arg("min_modularity_gain") = 1e-7,
      "Community id of every node, in Graph.names order");
  m.def(
      "modularity",
      [](const LabeledGraph& g, const std::vector<std::uint32_t>& a, double resolution) {
        return modularity(g, to_partition(g, a), resolution);
      },
      py::arg("graph"), py::arg("assignment"), py::arg("resolution") = 1.0);

  m.def(
      "score_partition",
      [](const LabeledGraph& g, const std::vector<std::uint32_t>& a) {
        return run_dict(score_partition(g, scale_weights(g, census(g)), to_partition(g, a)));
      },
      py::arg("graph"), py::arg("assignment"));
  m.def(
      "polarization_component",
      [](const std::vector<std::vector<double>>& rows) {
        OpinionMatrix f(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (rows[i].size() != rows.size()) throw InputError("matrix must be square");
          for (std::size_t j = 0; j < rows.size(); ++j) f(i, j) = rows[i][j];
        }
        return polarization_component(f);
      },
      py::arg("matrix"));
  m.def(
      "analyze",
      [](const LabeledGraph& g, std::size_t runs, std::uint64_t seed, std::size_t threads) {
        PolarizationReport r;
        {
          py::gil_scoped_release release;
          LouvainConfig cfg;
          cfg.seed = seed;
          r = analyze(g, cfg, runs, threads);
        }
        py::dict d;
        d["runs"] = r.runs.size();
        d["seed"] = r.seed;
        d["p_within"] = summary_dict(r.p_within());
        d["p_between"] = summary_dict(r.p_between());
        d["polarization"] = summary_dict(r.polarization());
        d["communities"] = summary_dict(r.communities());
        py::list per_run;
        for (const RunScore& s : r.runs) per_run.append(run_dict(s));
        d["per_run"] = per_run;
        return d;
      },
      py::arg("graph"), py::arg("runs") = 100, py::arg("seed") = 42, py::arg("threads") = 1);

  m.def(
      "relabel",
      [](const LabeledGraph& g, const std::vector<std::uint32_t>& a, double dom_ratio, std::uint32_t num_opinions,
         std::uint64_t seed) { return relabel(g, to_partition(g, a), {dom_ratio, num_opinions, seed}); },
      py::arg("graph"), py::arg("assignment"), py::arg("dom_ratio"), py::arg("num_opinions"), py::arg("seed") = 0);
  m.def(
      "generate_sbm",
      [](std::size_t blocks, std::size_t nodes_per_block, double p_in, double p_out, std::uint64_t seed) {
        PlantedGraph pg = generate_sbm({blocks, nodes_per_block, p_in, p_out, seed});
        return py::make_tuple(std::move(pg.graph), to_list(pg.blocks));
      },
      py::arg("blocks"), py::arg("nodes_per_block"), py::arg("p_in"), py::arg("p_out"), py::arg("seed") = 0,
      "(graph, planted block of every node)");

  m.def("classify_stance", [](double score) { return std::string(stance_name(classify(score))); });
  m.def(
      "build_retweet_network",
      [](const std::string& path) {
        const RetweetNetwork net = build_retweet_network(read_stance_records(std::filesystem::path(path)));
        py::dict users;
        for (const auto& [name, us] : net.scores.users) {
          users[py::str(name)] = py::make_tuple(us.score, std::string(stance_name(us.stance)));
        }
        return py::make_tuple(net.graph, users);
      },
      py::arg("records"), "(graph, {user: (score, stance)}) from a JSON-lines record file");

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
