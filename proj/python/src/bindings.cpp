// Thin pybind11 layer. Configs cross the boundary as JSON text; the Python
// package wraps that in dicts.

#include "diracsym/clifford.hpp"
#include "diracsym/config.hpp"
#include "diracsym/errors.hpp"
#include "diracsym/spectrum.hpp"
#include "diracsym/symmetry.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <map>

namespace py = pybind11;
using namespace diracsym;

namespace {

RunConfig config_from(const std::string& text) {
    RunConfig c = parse_config(text);
    validate(c);
    return c;
}

std::string spectrum_json(const std::string& text) {
    const RunConfig c = config_from(text);
    SpectrumTable t;
    if (c.dimension == "3d")
        t.rows = spectrum_3d(make_scenario(c), c.radial.kappas, c.radial.window, c.radial.grid, {}, c.threads);
    else if (c.dimension == "2d")
        t.rows = spectrum_2d(make_planar(c), c.planar.m_j, c.planar.chirality, c.planar.window, {}, c.threads);
    else
        t.rows = spectrum_1d(make_axial(c), c.axial.window);
    return nlohmann::json(t).dump();
}

std::tuple<int, std::vector<std::string>, std::string> run_json(const std::string& text) {
    const RunResult r = run(config_from(text));
    return {r.exit_code, r.files, r.summary.dump()};
}

std::map<std::string, double> commutation(const std::string& label, const std::string& branch,
                                          std::uint64_t seed, int count) {
    const auto cands = enumerate_strict_candidates(build_gamma_basis());
    const auto it = std::find_if(cands.begin(), cands.end(), [&](const auto& c) { return c.label == label; });
    if (it == cands.end()) throw InvalidCoupling("no strict candidate named " + label);
    double comm = 0.0, su2 = 0.0;
    for (const auto& ctx : random_contexts(seed, count, it->matrix, label, branch_from_string(branch))) {
        comm = std::max(comm, verify_commutation(ctx).residuals.commutator);
        su2 = std::max(su2, verify_su2(ctx).residuals.su2);
    }
    return {{"commutator", comm}, {"su2", su2}};
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Native core of diracsym";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<NonHermitianInput>(m, "NonHermitianInput", base);
    py::register_exception<InvalidCoupling>(m, "InvalidCoupling", base);
    py::register_exception<InvalidLambda>(m, "InvalidLambda", base);
    py::register_exception<ZeroMomentum>(m, "ZeroMomentum", base);
    py::register_exception<NoStateFound>(m, "NoStateFound", base);
    py::register_exception<TurningPointOutsideGrid>(m, "TurningPointOutsideGrid", base);
    py::register_exception<IterationDiverged>(m, "IterationDiverged", base);
    py::register_exception<SingularDenominator>(m, "SingularDenominator", base);
    py::register_exception<DoublingDetected>(m, "DoublingDetected", base);
    py::register_exception<ConfigError>(m, "ConfigError", base);

    m.def("candidates", [] {
        std::map<std::string, Eigen::Matrix4cd> out;
        for (const auto& c : enumerate_strict_candidates(build_gamma_basis())) out[c.label] = c.matrix;
        return out;
    }, "Strict candidates O as 4x4 complex arrays keyed by label.");
    m.def("commutation_residuals", &commutation, py::arg("label"), py::arg("branch"), py::arg("seed") = 42,
          py::arg("count") = 100, "Largest [H, S_i] and SU(2) residuals over seeded plane waves.");
    m.def("default_config", [] { return dump_config(RunConfig{}); });
    m.def("normalize_config", [](const std::string& text) { return dump_config(config_from(text)); });
    m.def("spectrum", &spectrum_json, py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("run", &run_json, py::arg("config"), py::call_guard<py::gil_scoped_release>());
}
