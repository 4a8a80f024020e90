#include "crsym/errors.hpp"
#include "crsym/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace crsym;

namespace {

std::vector<std::string> strings(const std::vector<Rational> &v)
{
    std::vector<std::string> out;
    for (const auto &q : v)
        out.push_back(to_string(q));
    return out;
}

std::optional<Rational> rational_arg(const std::optional<std::string> &s)
{
    if (!s)
        return std::nullopt;
    return parse_weight_list(*s).at(0);
}

ModelSource source(const std::string &text)
{
    if (text.find('=') != std::string::npos)
        return parse_model_text(text);
    return ModelSource{text, std::nullopt};
}

std::map<std::string, int> dims(const std::map<Rational, std::vector<VectorField>> &m)
{
    std::map<std::string, int> out;
    for (const auto &[mu, b] : m)
        out[to_string(mu)] = static_cast<int>(b.size());
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact symmetry analysis of model hypersurfaces Im w = P(z, conj z)";

    static py::exception<Error> error(m, "CrsymError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error &e) {
            PyErr_SetObject(error.ptr(), py::make_tuple(e.what(), error_kind_name(e.kind())).ptr());
        }
    });

    py::class_<EmbeddingReport>(m, "Embedding")
        .def_readonly("source", &EmbeddingReport::source)
        .def_property_readonly("kind", [](const EmbeddingReport &e) { return embedding_kind_name(e.embedding.kind); })
        .def_property_readonly("K", [](const EmbeddingReport &e) { return e.embedding.Q.K; })
        .def_property_readonly("form", [](const EmbeddingReport &e) { return e.embedding.Q.form.to_string(); })
        .def_property_readonly("certified", [](const EmbeddingReport &e) { return e.certificate.ok(); })
        .def_property_readonly("hermitian_rank", [](const EmbeddingReport &e) { return e.certificate.hermitian_rank; });

    py::class_<AnalysisReport>(m, "Report")
        .def_property_readonly("status", [](const AnalysisReport &r) { return report_status_name(r.status); })
        .def_readonly("verdict", &AnalysisReport::verdict)
        .def_readonly("n", &AnalysisReport::n)
        .def_property_readonly("P", [](const AnalysisReport &r) { return r.P.to_string(); })
        .def_property_readonly("weights", [](const AnalysisReport &r) { return strings(r.weights); })
        .def_readonly("total_dimension", &AnalysisReport::total_dimension)
        .def_readonly("g1_dimension", &AnalysisReport::g1_dimension)
        .def_property_readonly("dimensions", [](const AnalysisReport &r) { return dims(r.components); })
        .def_property_readonly("gc_dimensions", [](const AnalysisReport &r) { return dims(r.gc); })
        .def_property_readonly("gnc_dimensions", [](const AnalysisReport &r) { return dims(r.gnc); })
        .def_property_readonly("balanced",
                               [](const AnalysisReport &r) -> std::optional<std::vector<std::string>> {
                                   if (!r.balanced)
                                       return std::nullopt;
                                   return strings(r.balanced->lambda_prime);
                               })
        .def_readonly("is_chain", &AnalysisReport::is_chain)
        .def_readonly("one_jet_determined", &AnalysisReport::one_jet_determined)
        .def_property_readonly("nc_case",
                               [](const AnalysisReport &r) -> std::optional<std::string> {
                                   if (!r.nc)
                                       return std::nullopt;
                                   return std::string(nc_case_name(r.nc->kind));
                               })
        .def_readonly("embeddings", &AnalysisReport::embeddings)
        .def("to_json", [](const AnalysisReport &r, int indent) { return to_json(r, indent); },
             py::arg("indent") = 2)
        .def("to_text", &to_text)
        .def("__eq__", [](const AnalysisReport &a, const AnalysisReport &b) { return a == b; })
        .def("__repr__", [](const AnalysisReport &r) {
            return "<Report " + std::string(report_status_name(r.status)) + ": " + r.verdict + ">";
        });

    m.def(
        "analyze",
        [](const std::string &text, std::optional<std::string> weights, bool strip_pluriharmonic,
           bool skip_embedding, std::optional<std::string> max_degeneracy_weight,
           std::optional<std::string> component) {
            AnalyzeOptions o;
            if (weights)
                o.weights = parse_weight_list(*weights);
            o.strip_pluriharmonic = strip_pluriharmonic;
            o.skip_embedding = skip_embedding;
            o.max_degeneracy_weight = rational_arg(max_degeneracy_weight);
            o.component = rational_arg(component);
            py::gil_scoped_release release;
            return analyze(source(text), o);
        },
        py::arg("model"), py::arg("weights") = py::none(), py::arg("strip_pluriharmonic") = false,
        py::arg("skip_embedding") = false, py::arg("max_degeneracy_weight") = py::none(),
        py::arg("component") = py::none(),
        "Analyze 'Im w = <expr>' or a bare expression. Weights are given as 'a/b, c/d'.");
    m.def("report_from_json", &report_from_json, py::arg("text"));
    m.def(
        "parse_polynomial", [](const std::string &expr) { return parse_polynomial(expr).to_string(); },
        py::arg("expr"), "Canonical form of an expression.");
    m.def(
        "infer_weights",
        [](const std::string &expr) {
            std::vector<std::vector<std::string>> out;
            for (const auto &w : infer_weights(parse_polynomial(expr)))
                out.push_back(strings(w.values()));
            return out;
        },
        py::arg("expr"));
    m.def(
        "lemtub_coefficients",
        [](int k) {
            std::vector<std::string> out;
            for (const auto &a : lemtub_coefficients(k).alpha)
                out.push_back(a.to_string());
            return out;
        },
        py::arg("m"));
    m.attr("SCHEMA_VERSION") = kReportSchemaVersion;
}
