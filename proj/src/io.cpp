// io.cpp — Config parsing, CSV emission/parsing, JSON report assembly

#include "declab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace declab::io {

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

namespace {

void require_keys(const json& doc, const std::set<std::string>& allowed,
                  const std::string& where) {
    if (!doc.is_object()) {
        throw ValidationError(where + ": expected a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
        if (!allowed.contains(key)) {
            throw ValidationError(where + ": unknown key '" + key + "'");
        }
    }
}

double number_at(const json& doc, const std::string& key, double fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc.at(key).is_number()) {
        throw ValidationError("key '" + key + "' must be a number");
    }
    return doc.at(key).get<double>();
}

long integer_at(const json& doc, const std::string& key, long fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc.at(key).is_number_integer()) {
        throw ValidationError("key '" + key + "' must be an integer");
    }
    return doc.at(key).get<long>();
}

} // namespace

models::PresetParams model_params_from_json(const json& doc) {
    require_keys(doc,
                 {"preset", "n_qubits", "env_dim", "g", "g_prime", "omega", "delta", "env_kind"},
                 "model");
    if (!doc.contains("preset") || !doc.at("preset").is_string()) {
        throw ValidationError("model: 'preset' (string) is required");
    }
    models::PresetParams params;
    params.preset = models::preset_from_name(doc.at("preset").get<std::string>());
    params.n_qubits = static_cast<int>(integer_at(doc, "n_qubits", 3));

    std::string env_kind = "boson";
    if (doc.contains("env_kind")) {
        if (!doc.at("env_kind").is_string()) {
            throw ValidationError("model: 'env_kind' must be \"boson\" or \"spin\"");
        }
        env_kind = doc.at("env_kind").get<std::string>();
    }
    if (env_kind == "boson") {
        params.env_kind = models::EnvKind::boson;
        params.env_dim = integer_at(doc, "env_dim", 3);
    } else if (env_kind == "spin") {
        params.env_kind = models::EnvKind::spin;
        params.env_dim = integer_at(doc, "env_dim", 2);
    } else {
        throw ValidationError("model: env_kind '" + env_kind + "' is not \"boson\" or \"spin\"");
    }

    params.g = number_at(doc, "g", 0.1);
    params.g_prime = number_at(doc, "g_prime", params.g);
    params.omega = number_at(doc, "omega", 1.0);
    params.delta = number_at(doc, "delta", 0.0);
    return params;
}

json model_params_to_json(const models::PresetParams& params) {
    json doc;
    doc["preset"] = models::preset_name(params.preset);
    doc["n_qubits"] = params.n_qubits;
    doc["env_dim"] = params.env_dim;
    doc["g"] = params.g;
    doc["g_prime"] = params.g_prime;
    doc["omega"] = params.omega;
    doc["delta"] = params.delta;
    doc["env_kind"] = params.env_kind == models::EnvKind::boson ? "boson" : "spin";
    return doc;
}

std::vector<double> SweepConfig::times() const {
    return spacing == Spacing::log ? scaling::log_spaced_times(t_min, t_max, n_points)
                                   : scaling::linear_spaced_times(t_min, t_max, n_points);
}

RunConfig run_config_from_json(const json& doc) {
    require_keys(doc, {"model", "sweep", "observables", "output_dir", "seed", "code"}, "config");
    if (!doc.contains("model")) {
        throw ValidationError("config: 'model' is required");
    }
    RunConfig config;
    config.model = model_params_from_json(doc.at("model"));

    if (doc.contains("sweep")) {
        const json& sweep = doc.at("sweep");
        require_keys(sweep, {"t_min", "t_max", "n_points", "spacing"}, "sweep");
        config.sweep.t_min = number_at(sweep, "t_min", config.sweep.t_min);
        config.sweep.t_max = number_at(sweep, "t_max", config.sweep.t_max);
        config.sweep.n_points = static_cast<int>(integer_at(sweep, "n_points", 8));
        if (sweep.contains("spacing")) {
            const std::string spacing = sweep.at("spacing").get<std::string>();
            if (spacing == "log") {
                config.sweep.spacing = Spacing::log;
            } else if (spacing == "linear") {
                config.sweep.spacing = Spacing::linear;
            } else {
                throw ValidationError("sweep: spacing '" + spacing + "' is not log|linear");
            }
        }
        if (!(config.sweep.t_min > 0.0)) throw ValidationError("sweep: t_min must be > 0");
        if (!(config.sweep.t_max > config.sweep.t_min)) {
            throw ValidationError("sweep: t_max must exceed t_min");
        }
        if (config.sweep.n_points < 4) throw ValidationError("sweep: n_points must be >= 4");
    }
    if (doc.contains("observables")) {
        if (!doc.at("observables").is_array()) {
            throw ValidationError("config: 'observables' must be an array of strings");
        }
        for (const auto& entry : doc.at("observables")) {
            if (!entry.is_string()) {
                throw ValidationError("config: 'observables' must be an array of strings");
            }
            config.observables.push_back(entry.get<std::string>());
        }
    }
    if (doc.contains("output_dir")) {
        config.output_dir = doc.at("output_dir").get<std::string>();
    }
    config.seed = integer_at(doc, "seed", 0);
    if (doc.contains("code")) config.code = doc.at("code").get<std::string>();
    return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& err) {
        throw ValidationError("config parse error in '" + path.string() + "': " + err.what());
    }
    return run_config_from_json(doc);
}

void write_sweep_csv(const std::filesystem::path& path, const scaling::SweepTable& table) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
    out << "t,observable,value\n";
    for (const auto& point : table.points) {
        out << format_double(point.t) << ',' << table.observable_label << ','
            << format_double(point.value) << '\n';
    }
}

scaling::SweepTable read_sweep_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open sweep CSV '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line) || line != "t,observable,value") {
        throw ValidationError("'" + path.string() + "': missing 't,observable,value' header");
    }
    scaling::SweepTable table;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string t_text, label, value_text;
        if (!std::getline(row, t_text, ',') || !std::getline(row, label, ',') ||
            !std::getline(row, value_text)) {
            throw ValidationError("'" + path.string() + "' line " + std::to_string(line_no) +
                                  ": expected 3 columns");
        }
        try {
            table.points.push_back({std::stod(t_text), std::stod(value_text)});
        } catch (const std::exception&) {
            throw ValidationError("'" + path.string() + "' line " + std::to_string(line_no) +
                                  ": unparsable number");
        }
        if (table.observable_label.empty()) {
            table.observable_label = label;
        } else if (table.observable_label != label) {
            throw ValidationError("'" + path.string() + "': mixed observables in one file");
        }
    }
    if (table.points.empty()) {
        throw InsufficientDataError("'" + path.string() + "' contains no data rows");
    }
    return table;
}

void write_components_csv(
    const std::filesystem::path& path,
    const std::vector<std::pair<double, std::vector<pauli::ErrorComponent>>>& per_time) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
    out << "t,k_string,weight,norm,max_env_amp\n";
    for (const auto& [t, components] : per_time) {
        for (const auto& comp : components) {
            const double max_amp =
                comp.env_vector.size() == 0 ? 0.0 : comp.env_vector.cwiseAbs().maxCoeff();
            out << format_double(t) << ',' << comp.string.base4() << ',' << comp.string.weight()
                << ',' << format_double(comp.norm) << ',' << format_double(max_amp) << '\n';
        }
    }
}

json fit_to_json(const std::string& observable, const scaling::ScalingFit& fit) {
    json doc;
    doc["observable"] = observable;
    doc["exponent"] = fit.exponent;
    doc["prefactor"] = fit.prefactor;
    doc["r2"] = fit.r_squared;
    doc["n_points_used"] = fit.n_points_used;
    doc["window"] = {fit.window_min, fit.window_max};
    return doc;
}

json verdict_to_json(const scaling::Verdict& verdict) {
    json doc;
    doc["claim"] = scaling::claim_name(verdict.claim);
    doc["observable"] = verdict.label;
    doc["pass"] = verdict.pass;
    doc["exponent"] = verdict.measured.exponent;
    doc["r2"] = verdict.measured.r_squared;
    doc["threshold"] = verdict.threshold;
    doc["direction"] = scaling::direction_name(verdict.direction);
    if (verdict.direction == scaling::Direction::approx) doc["band"] = verdict.band;
    return doc;
}

json check_report_to_json(const models::HamiltonianSpec& model,
                          const models::NoQubitInteractionReport& report) {
    json doc;
    doc["model"] = model.name;
    if (model.preset) doc["params"] = model_params_to_json(*model.preset);
    doc["no_qubit_interaction"] = report.holds;
    doc["violating_terms"] = report.violating_terms;
    return doc;
}

json qecc_report_to_json(const qecc::CodeSpec& code, const models::PresetParams& params,
                         const std::vector<qecc::FidelityReport>& points,
                         const scaling::ScalingFit& protected_fit,
                         const scaling::ScalingFit& unprotected_fit,
                         const qecc::QeccVerdict& verdict) {
    json doc;
    doc["code"] = code.name;
    doc["model"] = models::preset_name(params.preset);
    doc["g"] = params.g;
    doc["env_dim"] = params.env_dim;
    doc["params"] = model_params_to_json(params);
    doc["baseline"] = "single qubit, same preset family, same g/env_kind/env_dim";
    doc["points"] = json::array();
    for (const auto& point : points) {
        json entry;
        entry["t"] = point.time;
        entry["protected"] = point.protected_infidelity;
        entry["unprotected"] = point.unprotected_infidelity;
        entry["syndromes"] = point.syndrome_distribution;
        doc["points"].push_back(std::move(entry));
    }
    doc["fits"]["protected"] = fit_to_json("qecc_infidelity:" + code.name, protected_fit);
    doc["fits"]["unprotected"] = fit_to_json("unprotected_infidelity", unprotected_fit);
    doc["verdict"]["pass"] = verdict.pass;
    doc["verdict"]["checks"] = json::array();
    for (const auto& check : verdict.checks) {
        doc["verdict"]["checks"].push_back(verdict_to_json(check));
    }
    return doc;
}

void write_json(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
    out << doc.dump(2) << '\n';
}

} // namespace declab::io
