// io.hpp — Run configuration parsing and the CSV/JSON output formats

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "declab/model.hpp"
#include "declab/pauli.hpp"
#include "declab/qecc.hpp"
#include "declab/scaling.hpp"

namespace declab::io {

using nlohmann::json;

// Shortest-width formatting with 17 significant digits; round-trips doubles.
std::string format_double(double value);

// ------------------------------ Model JSON ----------------------------------

// {"preset": ..., "n_qubits": ..., "env_dim": ..., "g": ..., "g_prime": ...,
//  "omega": ..., "delta": ..., "env_kind": "boson"|"spin"}; unknown keys rejected.
models::PresetParams model_params_from_json(const json& doc);
json model_params_to_json(const models::PresetParams& params);

// ------------------------------ Run config ----------------------------------

enum class Spacing { log, linear };

struct SweepConfig {
    double t_min = 0.01;
    double t_max = 0.1;
    int n_points = 8;
    Spacing spacing = Spacing::log;

    std::vector<double> times() const;
};

struct RunConfig {
    models::PresetParams model;
    SweepConfig sweep;
    std::vector<std::string> observables;
    std::filesystem::path output_dir = "out";
    long seed = 0;
    std::string code = "phaseflip3";
};

// Strict parse (unknown keys rejected at every level). `model` is required.
RunConfig run_config_from_json(const json& doc);
RunConfig load_run_config(const std::filesystem::path& path);

// ------------------------------- CSV ----------------------------------------

// Header "t,observable,value", one row per sweep point.
void write_sweep_csv(const std::filesystem::path& path, const scaling::SweepTable& table);
scaling::SweepTable read_sweep_csv(const std::filesystem::path& path);

// Header "t,k_string,weight,norm,max_env_amp", one row per component per time.
void write_components_csv(
    const std::filesystem::path& path,
    const std::vector<std::pair<double, std::vector<pauli::ErrorComponent>>>& per_time);

// ------------------------------- JSON reports -------------------------------

json fit_to_json(const std::string& observable, const scaling::ScalingFit& fit);
json verdict_to_json(const scaling::Verdict& verdict);
json check_report_to_json(const models::HamiltonianSpec& model,
                          const models::NoQubitInteractionReport& report);
json qecc_report_to_json(const qecc::CodeSpec& code, const models::PresetParams& params,
                         const std::vector<qecc::FidelityReport>& points,
                         const scaling::ScalingFit& protected_fit,
                         const scaling::ScalingFit& unprotected_fit,
                         const qecc::QeccVerdict& verdict);

void write_json(const std::filesystem::path& path, const json& doc);

} // namespace declab::io
