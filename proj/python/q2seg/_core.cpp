#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "q2seg/catalog.hpp"
#include "q2seg/certificates.hpp"
#include "q2seg/error.hpp"
#include "q2seg/examples.hpp"
#include "q2seg/fillers.hpp"
#include "q2seg/horns.hpp"
#include "q2seg/shapes.hpp"
#include "q2seg/sset_json.hpp"

namespace py = pybind11;
using namespace q2seg;

// Reports cross the boundary as JSON text; the Python side decodes them.
PYBIND11_MODULE(_core, m)
{
    // Error precedes its subclasses
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

    m.def("is_broken", py::overload_cast<const std::vector<int>&, int>(&is_broken), py::arg("subset"), py::arg("n"));
    m.def("triangulations", [](int n) {
        std::vector<std::vector<Triangle>> out;
        for (const auto& t : enumerate_triangulations(n)) out.push_back(t.triangles);
        return out;
    }, py::arg("n"));
    m.def("extreme_vertices", [](int n, const std::vector<Triangle>& tris) {
        return extreme_vertices(make_triangulation(n, tris));
    }, py::arg("n"), py::arg("triangles"));
    m.def("two_segal_horns", [](int n) {
        std::vector<std::vector<int>> out;
        for (const auto& h : enumerate_two_segal_horns(n)) out.push_back(h.missing());
        return out;
    }, py::arg("n"));
    m.def("shape_json", [](const std::string& spec) {
        const auto s = build_shape(ShapeSpec::from_json(nlohmann::json::parse(spec)));
        return nlohmann::json{{"sub", sset_to_json(*s.sub.sset)},
                              {"ambient", sset_to_json(*s.ambient.sset)},
                              {"inclusion", map_to_json(s.inclusion)}}
            .dump();
    }, py::arg("spec"));
    m.def("example_json", [](const std::string& name, int cap) {
        return sset_to_json(*named_example(name, cap).sset).dump();
    }, py::arg("name"), py::arg("cap"));
    m.def("check_json", [](const std::string& property, const std::string& example, int cap, std::uint64_t seed,
                           std::uint64_t samples) {
        CheckOptions opts;
        if (samples > 0) opts.mode = CheckMode::sample(seed, samples);
        const auto x = named_example(example, cap).sset;
        return check_filler_property(x, property_from_name(property), cap, opts).to_json().dump();
    }, py::arg("property"), py::arg("example"), py::arg("cap"), py::arg("seed") = 0, py::arg("samples") = 0);
    m.def("certify_json", [](const std::string& spec) {
        return certify_anodyne(ShapeSpec::from_json(nlohmann::json::parse(spec))).to_json().dump();
    }, py::arg("spec"));
    m.def("verify_json", [](const std::string& cert) {
        return verify_certificate(Certificate::from_json(nlohmann::json::parse(cert))).to_json().dump();
    }, py::arg("cert"));
    m.def("counterexample_json", [] { return appendix_counterexample().to_json().dump(); });
}
