// bindings.cpp — pybind11 module exposing the main operations

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "declab/evolution.hpp"
#include "declab/io.hpp"
#include "declab/model.hpp"
#include "declab/pauli.hpp"
#include "declab/qecc.hpp"
#include "declab/scaling.hpp"

namespace py = pybind11;
using namespace declab;

namespace {

models::PresetParams params_from_kwargs(const std::string& preset, int n_qubits, long env_dim,
                                        double g, double g_prime, double omega, double delta,
                                        const std::string& env_kind) {
    models::PresetParams params;
    params.preset = models::preset_from_name(preset);
    params.n_qubits = n_qubits;
    params.env_dim = env_dim;
    params.g = g;
    params.g_prime = std::isnan(g_prime) ? g : g_prime;
    params.omega = omega;
    params.delta = delta;
    if (env_kind == "boson") {
        params.env_kind = models::EnvKind::boson;
    } else if (env_kind == "spin") {
        params.env_kind = models::EnvKind::spin;
    } else {
        throw ValidationError("env_kind must be 'boson' or 'spin'");
    }
    return params;
}

py::dict spectrum_to_dict(const pauli::WeightSpectrum& spectrum) {
    py::dict amplitudes, max_norms, counts;
    for (const auto& [m, a] : spectrum.amplitudes) amplitudes[py::int_(m)] = a;
    for (const auto& [m, v] : spectrum.max_norms) max_norms[py::int_(m)] = v;
    for (const auto& [m, c] : spectrum.counts) counts[py::int_(m)] = c;
    py::dict out;
    out["time"] = spectrum.time;
    out["amplitudes"] = amplitudes;
    out["max_norms"] = max_norms;
    out["counts"] = counts;
    return out;
}

py::dict fit_to_dict(const scaling::ScalingFit& fit) {
    py::dict out;
    out["exponent"] = fit.exponent;
    out["prefactor"] = fit.prefactor;
    out["r_squared"] = fit.r_squared;
    out["n_points_used"] = fit.n_points_used;
    out["window"] = py::make_tuple(fit.window_min, fit.window_max);
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "declab core: decoherence models, propagators, Pauli spectra, fits";

    // translators run newest-first: register the base before the derived types
    py::register_exception<Error>(m, "DeclabError", PyExc_RuntimeError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
    py::register_exception<InsufficientDataError>(m, "InsufficientDataError", PyExc_ValueError);

    py::class_<models::HamiltonianSpec>(m, "Model")
        .def_property_readonly("name", [](const models::HamiltonianSpec& s) { return s.name; })
        .def_property_readonly("n_qubits",
                               [](const models::HamiltonianSpec& s) { return s.space.n_qubits; })
        .def_property_readonly("total_dim",
                               [](const models::HamiltonianSpec& s) { return s.space.total_dim; })
        .def_property_readonly("env_dim",
                               [](const models::HamiltonianSpec& s) { return s.space.env_dim(); })
        .def_property_readonly("n_terms",
                               [](const models::HamiltonianSpec& s) { return s.terms.size(); })
        .def("assemble", [](const models::HamiltonianSpec& s) { return models::assemble(s); })
        .def("assemble_part",
             [](const models::HamiltonianSpec& s, const std::string& part) {
                 if (part == "free") return models::assemble_part(s, models::HamiltonianPart::free);
                 if (part == "interaction") {
                     return models::assemble_part(s, models::HamiltonianPart::interaction);
                 }
                 throw ValidationError("part must be 'free' or 'interaction'");
             },
             py::arg("part"))
        .def("verify_no_qubit_interaction",
             [](const models::HamiltonianSpec& s) {
                 const auto report = models::verify_no_qubit_interaction(s);
                 return py::make_tuple(report.holds, report.violating_terms);
             })
        .def("environment_ground_state",
             [](const models::HamiltonianSpec& s) { return models::environment_ground_state(s); });

    m.def(
        "preset_model",
        [](const std::string& preset, int n_qubits, long env_dim, double g, double g_prime,
           double omega, double delta, const std::string& env_kind) {
            return models::preset_model(params_from_kwargs(preset, n_qubits, env_dim, g, g_prime,
                                                           omega, delta, env_kind));
        },
        py::arg("preset"), py::arg("n_qubits") = 3, py::arg("env_dim") = 3, py::arg("g") = 0.1,
        py::arg("g_prime") = std::nan(""), py::arg("omega") = 1.0, py::arg("delta") = 0.0,
        py::arg("env_kind") = "boson");

    m.def("model_from_json", [](const std::string& text) {
        return models::preset_model(io::model_params_from_json(io::json::parse(text)));
    });

    m.def(
        "exact_propagator",
        [](const Eigen::MatrixXcd& h, double t) { return evolution::exact_propagator(h, t).matrix; },
        py::arg("h"), py::arg("t"));
    m.def(
        "interaction_propagator",
        [](const Eigen::MatrixXcd& h0, const Eigen::MatrixXcd& ht, double t) {
            return evolution::interaction_propagator(h0, ht, t).matrix;
        },
        py::arg("h0"), py::arg("ht"), py::arg("t"));
    m.def("dyson_truncated", &evolution::dyson_truncated, py::arg("h0"), py::arg("hi"),
          py::arg("t"), py::arg("order") = 2, py::arg("quadrature_steps") = 64);
    m.def(
        "factorization_residual",
        [](const models::HamiltonianSpec& model, double t, int steps, bool allow_violation) {
            return evolution::factorization_residual(model, t, steps, {}, allow_violation);
        },
        py::arg("model"), py::arg("t"), py::arg("steps") = 256,
        py::arg("allow_violation") = false);

    m.def(
        "weight_spectrum",
        [](const models::HamiltonianSpec& model, double t) {
            const auto h0 = models::assemble_part(model, models::HamiltonianPart::free);
            const auto ht = models::assemble(model);
            const auto u_i = evolution::interaction_propagator(h0, ht, t, model.name);
            const auto env0 = models::environment_ground_state(model);
            const auto components = pauli::pauli_components(u_i, model.space, env0);
            return spectrum_to_dict(pauli::weight_spectrum(components, t));
        },
        py::arg("model"), py::arg("t"),
        "Interaction-picture per-weight amplitudes A(m) at one time");

    m.def(
        "pauli_component_norms",
        [](const Eigen::MatrixXcd& u, int n_qubits, const std::vector<long>& env_dims,
           const Eigen::VectorXcd& env_init) {
            const auto space = models::build_space(n_qubits, env_dims);
            const auto components = pauli::pauli_components(u, space, env_init);
            py::list out;
            for (const auto& comp : components) {
                py::dict entry;
                entry["k"] = comp.string.base4();
                entry["weight"] = comp.string.weight();
                entry["norm"] = comp.norm;
                out.append(entry);
            }
            return out;
        },
        py::arg("u"), py::arg("n_qubits"), py::arg("env_dims"), py::arg("env_init"),
        "Component norms of an explicit joint unitary");

    m.def(
        "component_norms",
        [](const models::HamiltonianSpec& model, double t) {
            const auto h0 = models::assemble_part(model, models::HamiltonianPart::free);
            const auto ht = models::assemble(model);
            const auto u_i = evolution::interaction_propagator(h0, ht, t, model.name);
            const auto env0 = models::environment_ground_state(model);
            const auto components = pauli::pauli_components(u_i, model.space, env0);
            py::list out;
            for (const auto& comp : components) {
                py::dict entry;
                entry["k"] = comp.string.base4();
                entry["weight"] = comp.string.weight();
                entry["norm"] = comp.norm;
                out.append(entry);
            }
            return out;
        },
        py::arg("model"), py::arg("t"));

    m.def(
        "fit_exponent",
        [](const std::vector<double>& times, const std::vector<double>& values) {
            if (times.size() != values.size()) {
                throw ValidationError("times and values must have equal length");
            }
            scaling::SweepTable table;
            table.observable_label = "custom";
            for (size_t i = 0; i < times.size(); ++i) {
                table.points.push_back({times[i], values[i]});
            }
            return fit_to_dict(scaling::fit_exponent(table));
        },
        py::arg("times"), py::arg("values"));

    m.def("log_spaced_times", &scaling::log_spaced_times, py::arg("t_min"), py::arg("t_max"),
          py::arg("n_points"));

    m.def(
        "qecc_experiment",
        [](const std::string& code_name, const models::HamiltonianSpec& model, double t) {
            const auto code = qecc::CodeSpec::make(code_name);
            Eigen::VectorXcd logical(2);
            logical << 1.0, 0.0;
            const auto report = qecc::logical_fidelity_experiment(code, model, logical, t);
            py::dict out;
            out["time"] = report.time;
            out["protected_infidelity"] = report.protected_infidelity;
            out["unprotected_infidelity"] = report.unprotected_infidelity;
            py::dict syndromes;
            for (const auto& [s, p] : report.syndrome_distribution) {
                syndromes[py::str(s)] = p;
            }
            out["syndromes"] = syndromes;
            return out;
        },
        py::arg("code"), py::arg("model"), py::arg("t"));
}
