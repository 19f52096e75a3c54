#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "flexcycle/analysis.hpp"
#include "flexcycle/cycles.hpp"
#include "flexcycle/flex.hpp"
#include "flexcycle/flip.hpp"
#include "flexcycle/json_io.hpp"
#include "flexcycle/projective.hpp"
#include "flexcycle/skeleton.hpp"
#include "flexcycle/walks.hpp"

namespace py = pybind11;
namespace fx = flexcycle;

namespace {

using PyPoint = std::array<double, 3>;
using PyRealization = std::map<std::string, PyPoint>;
using PyEdge = std::pair<std::string, std::string>;

fx::Realization to_realization(const PyRealization& in) {
    fx::Realization rho;
    for (const auto& [v, p] : in) rho[v] = fx::Vec3(p[0], p[1], p[2]);
    return rho;
}

PyRealization from_realization(const fx::Realization& rho) {
    PyRealization out;
    for (const auto& [v, p] : rho) out[v] = {p.x(), p.y(), p.z()};
    return out;
}

fx::Edge to_edge(const PyEdge& e) { return fx::Edge(e.first, e.second); }

PyEdge from_edge(const fx::Edge& e) { return {e.a, e.b}; }

std::set<fx::Edge> to_edge_set(const std::vector<PyEdge>& edges) {
    std::set<fx::Edge> out;
    for (const PyEdge& e : edges) out.insert(to_edge(e));
    return out;
}

std::vector<PyEdge> from_edge_set(const std::set<fx::Edge>& edges) {
    std::vector<PyEdge> out;
    out.reserve(edges.size());
    for (const fx::Edge& e : edges) out.push_back(from_edge(e));
    return out;
}

fx::EdgeLengthMap to_lengths(const std::map<PyEdge, double>& in) {
    fx::EdgeLengthMap out;
    for (const auto& [e, l] : in) out[to_edge(e)] = l;
    return out;
}

py::dict certificate_dict(const fx::CycleCertificate& cert) {
    py::dict d;
    d["cycle"] = cert.cycle;
    d["signs"] = cert.signs;
    d["residual"] = cert.residual;
    d["avoided"] = from_edge_set(cert.avoided);
    return d;
}

fx::CycleCertificate certificate_from_dict(const py::dict& d) {
    fx::CycleCertificate cert;
    cert.cycle = d["cycle"].cast<std::vector<std::string>>();
    cert.signs = d["signs"].cast<std::vector<int>>();
    cert.residual = d.contains("residual") ? d["residual"].cast<double>() : 0.0;
    if (d.contains("avoided")) {
        cert.avoided = to_edge_set(d["avoided"].cast<std::vector<PyEdge>>());
    }
    return cert;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Zero-sum cycle analysis of flexible polyhedra";
    m.attr("__version__") = fx::kVersion;

    py::register_exception<fx::Error>(m, "FlexcycleError");

    py::class_<fx::Skeleton>(m, "Skeleton")
        .def(py::init<std::vector<std::string>, std::vector<std::vector<std::string>>>(),
             py::arg("vertices"), py::arg("faces"))
        .def_property_readonly("vertices", &fx::Skeleton::vertices)
        .def_property_readonly("faces", &fx::Skeleton::faces)
        .def_property_readonly("edges",
                               [](const fx::Skeleton& s) {
                                   return from_edge_set(s.edges());
                               })
        .def("is_triangular", &fx::Skeleton::is_triangular)
        .def("validate", [](const fx::Skeleton& s) {
            std::vector<std::string> out;
            for (const auto& v : fx::validate_skeleton(s).violations) {
                out.push_back(v.message);
            }
            return out;
        });

    py::class_<fx::SampledFlex>(m, "SampledFlex")
        .def(py::init([](std::vector<double> t, std::vector<PyRealization> samples) {
                 fx::SampledFlex flex;
                 flex.t = std::move(t);
                 for (const auto& s : samples) flex.samples.push_back(to_realization(s));
                 return flex;
             }),
             py::arg("t"), py::arg("samples"))
        .def_property_readonly("t", [](const fx::SampledFlex& f) { return f.t; })
        .def_property_readonly("samples",
                               [](const fx::SampledFlex& f) {
                                   std::vector<PyRealization> out;
                                   for (const auto& s : f.samples) {
                                       out.push_back(from_realization(s));
                                   }
                                   return out;
                               })
        .def("__len__", &fx::SampledFlex::size);

    m.def("triangulate_fan", [](const fx::Skeleton& h) {
        const fx::FanTriangulation fan = fx::triangulate_fan(h);
        return py::make_tuple(fan.skeleton.skeleton(), from_edge_set(fan.diagonals));
    });

    m.def(
        "flex_dimension",
        [](const fx::Skeleton& g, const PyRealization& rho,
           const std::array<std::string, 3>& pin, double rank_tol) {
            const fx::Realization r = to_realization(rho);
            return fx::flex_dimension(
                g, r, fx::PinnedFrame::from_realization(r, pin[0], pin[1], pin[2]),
                rank_tol);
        },
        py::arg("skeleton"), py::arg("realization"), py::arg("pin"),
        py::arg("rank_tol") = 1e-8);

    m.def(
        "trace_flex",
        [](const fx::Skeleton& g, const PyRealization& rho,
           const std::array<std::string, 3>& pin, double step,
           std::size_t max_samples, double corrector_tol) {
            const fx::Realization r = to_realization(rho);
            fx::TraceOptions opts;
            opts.step = step;
            opts.max_samples = max_samples;
            opts.corrector_tol = corrector_tol;
            return fx::trace_flex(
                g, r, fx::PinnedFrame::from_realization(r, pin[0], pin[1], pin[2]),
                opts);
        },
        py::arg("skeleton"), py::arg("realization"), py::arg("pin"),
        py::arg("step") = 1e-2, py::arg("max_samples") = 100,
        py::arg("corrector_tol") = 1e-9);

    m.def(
        "classify_edges",
        [](const fx::Skeleton& g, const fx::SampledFlex& flex, double tol) {
            const fx::EdgeClassification cls =
                g.is_triangular()
                    ? fx::classify_edges(fx::TriangularSkeleton(g), flex, tol)
                    : fx::classify_edges_profile(g, flex, tol);
            py::dict out;
            out["const"] = from_edge_set(cls.e_const);
            out["moving"] = from_edge_set(cls.e_moving);
            std::map<PyEdge, double> variation;
            for (const auto& [e, v] : cls.variation) variation[from_edge(e)] = v;
            out["variation"] = variation;
            return out;
        },
        py::arg("skeleton"), py::arg("flex"), py::arg("tol") = 1e-7);

    m.def(
        "constant_distance_pairs",
        [](const std::vector<std::string>& vertices, const fx::SampledFlex& flex,
           double tol) {
            return from_edge_set(fx::constant_distance_pairs(vertices, flex, tol));
        },
        py::arg("vertices"), py::arg("flex"), py::arg("tol") = 1e-7);

    m.def(
        "edge_length_map",
        [](const fx::Skeleton& g, const PyRealization& rho) {
            std::map<PyEdge, double> out;
            for (const auto& [e, l] : fx::edge_length_map(g, to_realization(rho))) {
                out[from_edge(e)] = l;
            }
            return out;
        },
        py::arg("skeleton"), py::arg("realization"));

    m.def("flip", [](const fx::Skeleton& t, const PyEdge& e) {
        return fx::flip(fx::TriangularSkeleton(t), to_edge(e)).skeleton();
    });

    m.def(
        "sign_assignment",
        [](const std::vector<double>& lengths, double tol)
            -> std::optional<std::vector<int>> {
            return fx::sign_assignment(lengths, tol);
        },
        py::arg("lengths"), py::arg("tol"));

    m.def(
        "find_zero_sum_cycle",
        [](const fx::Skeleton& g, const std::map<PyEdge, double>& lengths,
           const PyEdge& edge, const std::vector<PyEdge>& forbidden,
           std::size_t max_len, double tol, bool exact) -> py::object {
            fx::ZeroSumOptions opts;
            opts.max_len = max_len;
            opts.tol = tol;
            opts.exact = exact;
            auto cert = fx::find_zero_sum_cycle(g, to_lengths(lengths), to_edge(edge),
                                                to_edge_set(forbidden), opts);
            if (!cert) return py::none();
            return certificate_dict(*cert);
        },
        py::arg("skeleton"), py::arg("lengths"), py::arg("edge"),
        py::arg("forbidden") = std::vector<PyEdge>{}, py::arg("max_len") = 0,
        py::arg("tol") = -1.0, py::arg("exact") = false);

    m.def(
        "verify_certificate",
        [](const py::dict& cert, const std::map<PyEdge, double>& lengths,
           const std::vector<PyEdge>& forbidden, double tol) {
            return fx::verify_certificate(certificate_from_dict(cert),
                                          to_lengths(lengths), to_edge_set(forbidden),
                                          tol);
        },
        py::arg("certificate"), py::arg("lengths"),
        py::arg("forbidden") = std::vector<PyEdge>{}, py::arg("tol") = 1e-8);

    m.def(
        "analyze_json",
        [](const std::string& input_json, std::size_t max_samples, double step,
           std::size_t max_len, bool exact, bool induced) {
            const fx::SkeletonDocument doc =
                fx::skeleton_from_json(fx::parse_json_text(input_json, "<memory>"));
            fx::AnalyzeOptions opts;
            opts.max_samples = max_samples;
            opts.step = step;
            opts.max_len = max_len;
            opts.exact = exact;
            opts.induced = induced;
            return fx::canonical_dump(fx::analyze(doc, opts));
        },
        py::arg("input_json"), py::arg("max_samples") = 100, py::arg("step") = 1e-2,
        py::arg("max_len") = 0, py::arg("exact") = false, py::arg("induced") = false,
        "Run the full analysis pipeline on a skeleton document and return the "
        "report as canonical JSON text.");
}
