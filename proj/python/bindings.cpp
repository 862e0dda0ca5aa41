#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "hyperprox/error.hpp"
#include "hyperprox/hyperspace.hpp"
#include "hyperprox/model_file.hpp"
#include "hyperprox/model_ops.hpp"
#include "hyperprox/search.hpp"
#include "hyperprox/strong.hpp"

namespace py = pybind11;
using namespace hyperprox;

namespace {

// Subsets cross the boundary as frozensets of point labels.
py::object labels_of(const Model& m, Subset s) {
    py::set out;
    for (int i = 0; i < m.space.size(); ++i) {
        if (s.contains(i)) out.add(py::str(m.space.points().label(i)));
    }
    return py::module_::import("builtins").attr("frozenset")(out);
}

py::list label_list(const Model& m, const std::vector<Subset>& sets) {
    py::list out;
    for (Subset s : sets) out.append(labels_of(m, s));
    return out;
}

py::dict axioms_dict(const Model& m) {
    const auto r = check_axioms(m.prox);
    py::dict out;
    for (const auto& v : r.verdicts) {
        py::dict d;
        d["passed"] = v.passed;
        d["witness"] = label_list(m, v.witness);
        out[to_string(v.axiom)] = d;
    }
    return out;
}

py::tuple witness_tuple(const Model& m, const WitnessResult& w) {
    return py::make_tuple(w.holds, label_list(m, w.witness));
}

std::string compare_specs(const Model& m, const std::string& left, const std::string& right) {
    auto hyper = Hyperspace::enumerate(m.space);
    const auto l = build_topology(hyper, resolve_topology_spec(m, left));
    const auto r = build_topology(hyper, resolve_topology_spec(m, right));
    return to_string(compare(l, r).verdict);
}

}  // namespace

PYBIND11_MODULE(_hyperprox, mod) {
    mod.doc() = "Finite proximity spaces and their hyperspace topologies";

    // CapExceeded and ParseError derive from Error and surface as it.
    py::register_exception<Error>(mod, "Error", PyExc_ValueError);

    py::class_<Model>(mod, "Model")
        .def_static("load", [](const std::string& path) { return build_model(load_model(path)); }, py::arg("path"))
        .def_static("parse", [](const std::string& text) { return build_model(parse_model(text)); }, py::arg("text"))
        .def_property_readonly("points", [](const Model& m) { return m.space.size(); })
        .def_property_readonly("labels", [](const Model& m) { return m.file.labels; })
        .def_property_readonly("kind", [](const Model& m) { return std::string(to_string(m.prox.kind())); })
        .def("subset", [](const Model& m, const std::string& ref) { return labels_of(m, m.resolve(ref)); },
             py::arg("ref"))
        .def("classification", [](const Model& m) { return std::string(to_string(check_axioms(m.prox).classification)); })
        .def("axioms", &axioms_dict)
        .def("is_compatible", [](const Model& m) { return is_compatible(m.prox).compatible; })
        .def("is_t1", [](const Model& m) { return m.space.is_t1(); })
        .def("near", [](const Model& m, const std::string& a, const std::string& b) {
            return m.prox.near(m.resolve(a), m.resolve(b));
        })
        .def("far", [](const Model& m, const std::string& a, const std::string& b) {
            return m.prox.far(m.resolve(a), m.resolve(b));
        })
        .def("strongly_far", [](const Model& m, const std::string& a, const std::string& b) {
            return witness_tuple(m, strongly_far(m.prox, m.resolve(a), m.resolve(b)));
        })
        .def("hat_strongly_far", [](const Model& m, const std::string& a, const std::string& b) {
            return witness_tuple(m, hat_strongly_far(m.space, m.resolve(a), m.resolve(b)));
        })
        .def("compare", &compare_specs, py::arg("left"), py::arg("right"))
        .def("serialize", [](const Model& m) { return serialize_model(m.file); });

    mod.def("compare", [](const std::string& path, const std::string& left, const std::string& right) {
        return compare_specs(build_model(load_model(path)), left, right);
    }, py::arg("path"), py::arg("left"), py::arg("right"));

    mod.def(
        "search",
        [](const std::string& target, int max_n, std::uint64_t budget, std::uint64_t seed) {
            const auto t = SearchTarget::defaults(parse_target_name(target), max_n);
            SearchOutcome r;
            {
                py::gil_scoped_release release;
                r = search(t, budget, seed);
            }
            py::dict out;
            out["status"] = to_string(r.status);
            out["candidates"] = r.candidates;
            out["evaluations"] = r.evaluations;
            out["randomized"] = r.randomized;
            out["summary"] = r.summary;
            if (r.witness) {
                out["witness"] = serialize_model(*r.witness);
                out["replay"] = replay(r);
            } else {
                out["witness"] = py::none();
            }
            return out;
        },
        py::arg("target"), py::arg("max_n") = 3, py::arg("budget") = 50'000'000, py::arg("seed") = 0);

    mod.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"));
}
